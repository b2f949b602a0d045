#include "quadstrata/surface_io.hpp"

#include "quadstrata/layout.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace quadstrata {

Json to_json(const FlatSurface& surface) {
  Json pieces = Json::array();
  for (const auto& piece : surface.pieces) {
    Json p;
    p["kind"] = piece_kind_name(piece.kind);
    Json vs = Json::array();
    for (const auto& v : piece.vectors) vs.push_back(to_json(v));
    p["vectors"] = vs;
    if (!piece.lower_vectors.empty()) {
      Json ws = Json::array();
      for (const auto& w : piece.lower_vectors) ws.push_back(to_json(w));
      p["lower_vectors"] = ws;
    }
    pieces.push_back(p);
  }
  Json gluings = Json::array();
  for (const auto& g : surface.gluings)
    gluings.push_back(Json{{"a", Json{{"piece", g.a.piece}, {"edge", g.a.boundary_index}}},
                           {"b", Json{{"piece", g.b.piece}, {"edge", g.b.boundary_index}}},
                           {"twist", twist_name(g.twist)}});
  Json marks = Json::array();
  for (const auto& mark : surface.pole_marks) {
    Json m{{"order", mark.order}, {"pieces", mark.pieces}};
    if (!mark.name.empty()) m["name"] = mark.name;
    marks.push_back(m);
  }
  return Json{{"pieces", pieces}, {"gluings", gluings}, {"pole_marks", marks}};
}

FlatSurface surface_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::BadInput, "surface must be an object");
  FlatSurface surface;
  for (const auto& p : j.value("pieces", Json::array())) {
    Piece piece;
    piece.kind = piece_kind_from_name(p.value("kind", ""));
    for (const auto& v : p.value("vectors", Json::array()))
      piece.vectors.push_back(gaussian_from_json(v));
    for (const auto& w : p.value("lower_vectors", Json::array()))
      piece.lower_vectors.push_back(gaussian_from_json(w));
    layout_piece(piece);  // validate eagerly
    surface.pieces.push_back(piece);
  }
  for (const auto& g : j.value("gluings", Json::array())) {
    Gluing gluing;
    gluing.a = {g.at("a").at("piece").get<int>(), g.at("a").at("edge").get<int>()};
    gluing.b = {g.at("b").at("piece").get<int>(), g.at("b").at("edge").get<int>()};
    std::string twist = g.value("twist", "translation");
    if (twist == "translation")
      gluing.twist = Twist::translation;
    else if (twist == "half_turn")
      gluing.twist = Twist::half_turn;
    else
      throw Error(ErrorCode::BadInput, "unknown twist \"" + twist + "\"");
    surface.gluings.push_back(gluing);
  }
  for (const auto& m : j.value("pole_marks", Json::array())) {
    PoleMark mark;
    mark.order = m.at("order").get<int>();
    for (const auto& p : m.at("pieces")) mark.pieces.push_back(p.get<int>());
    mark.name = m.value("name", "");
    surface.pole_marks.push_back(mark);
  }
  return surface;
}

Json to_json(const LocalInvariants& inv) {
  Json residues = Json::object();
  for (const auto& [mark, value] : inv.residues) residues[std::to_string(mark)] = to_json(value);
  return Json{{"genus", inv.genus},        {"zeros", inv.zero_orders},
              {"pole_orders", inv.pole_orders}, {"residues", residues},
              {"connected", inv.connected},     {"primitive", inv.primitive}};
}

// ---------------------------------------------------------------------------
// SVG (presentation only)

namespace {

double approx(const Rational& q) {
  return numerator(q).convert_to<double>() / denominator(q).convert_to<double>();
}

struct Pt {
  double x, y;
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string surface_to_svg(const FlatSurface& surface, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.08, 0.08);

  // Pair labels: each gluing gets one color and one label.
  auto edge_label = [&](int piece, int index) -> int {
    for (int g = 0; g < (int)surface.gluings.size(); ++g) {
      const auto& gl = surface.gluings[g];
      if ((gl.a.piece == piece && gl.a.boundary_index == index) ||
          (gl.b.piece == piece && gl.b.boundary_index == index))
        return g;
    }
    return -1;
  };

  std::ostringstream body;
  double ray_len = 2.2;
  double offset_x = 0.0;
  double min_y = 0.0, max_y = 0.0;
  for (int p = 0; p < (int)surface.pieces.size(); ++p) {
    PieceLayout layout = layout_piece(surface.pieces[p]);
    double width = 0.5;
    double cell_offset_y = 0.0;
    for (int c = 0; c < (int)layout.cells.size(); ++c) {
      const Cell& cell = layout.cells[c];
      std::vector<Pt> pts;
      for (int e = 0; e < (int)cell.edges.size(); ++e) {
        const CellEdge& edge = cell.edges[e];
        Pt a, b;
        if (edge.is_ray) {
          double dx = approx(edge.v.re), dy = approx(edge.v.im);
          double nrm = std::max(1e-9, std::hypot(dx, dy));
          dx = dx / nrm * ray_len;
          dy = dy / nrm * ray_len;
          double fx = approx(edge.finite_point.re), fy = approx(edge.finite_point.im);
          if (edge.ray_in) {
            a = {fx - dx, fy - dy};
            b = {fx, fy};
          } else {
            a = {fx, fy};
            b = {fx + dx, fy + dy};
          }
        } else {
          a = {approx(edge.finite_point.re), approx(edge.finite_point.im)};
          b = {approx(edge.segment_end().re), approx(edge.segment_end().im)};
        }
        a.x += offset_x;
        b.x += offset_x;
        a.y += cell_offset_y;
        b.y += cell_offset_y;
        pts.push_back(a);
        pts.push_back(b);
        int label = -1;
        int idx = -1;
        for (int k = 0; k < layout.exposed_count; ++k)
          if (layout.indexed_edges[k] == EdgeId{c, e}) idx = k;
        if (idx >= 0) label = edge_label(p, idx);
        const char* color = label >= 0 ? kPalette[label % 10] : "#999999";
        const char* dash = edge.is_ray ? " stroke-dasharray=\"4 3\"" : "";
        body << "  <line x1=\"" << a.x << "\" y1=\"" << -a.y << "\" x2=\"" << b.x << "\" y2=\""
             << -b.y << "\" stroke=\"" << color << "\" stroke-width=\"0.06\"" << dash << "/>\n";
        if (label >= 0) {
          double mx = (a.x + b.x) / 2 + jitter(rng), my = (a.y + b.y) / 2 + jitter(rng);
          body << "  <text x=\"" << mx << "\" y=\"" << -my
               << "\" font-size=\"0.3\" fill=\"" << color << "\">" << label << "</text>\n";
        }
        min_y = std::min({min_y, a.y, b.y});
        max_y = std::max({max_y, a.y, b.y});
        width = std::max({width, std::abs(a.x - offset_x), std::abs(b.x - offset_x)});
      }
      cell_offset_y -= 6.0;
      min_y = std::min(min_y, cell_offset_y);
    }
    body << "  <text x=\"" << offset_x << "\" y=\"" << -(max_y + 0.8) << "\" font-size=\"0.35\">P"
         << p << " (" << piece_kind_name(surface.pieces[p].kind) << ")</text>\n";
    offset_x += 2 * width + 3 * ray_len;
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -ray_len - 1 << " "
      << -(max_y + 2) << " " << offset_x + 2 * ray_len << " " << (max_y - min_y + 4)
      << "\">\n";
  svg << body.str();
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace quadstrata
