// Command-line front end: realizability verdicts, witness construction,
// verification, and the exhaustive normal-form search, all over exact
// rational JSON I/O.

#include "quadstrata/constructors.hpp"
#include "quadstrata/json_io.hpp"
#include "quadstrata/oracle.hpp"
#include "quadstrata/search.hpp"
#include "quadstrata/surface_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace quadstrata;

namespace {

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::BadInput, std::string(what) + ": " + e.what());
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

unsigned svg_seed() {
  const char* env = std::getenv("QUADSTRATA_SEED");
  if (!env) return 0;
  return (unsigned)std::strtoul(env, nullptr, 10);
}

void write_svg(const FlatSurface& surface, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
  out << surface_to_svg(surface, svg_seed());
}

Json verdict_to_json(const Verdict& verdict) {
  Json out;
  switch (verdict.status) {
    case VerdictStatus::Realizable: out["status"] = "Realizable"; break;
    case VerdictStatus::NotRealizable: out["status"] = "NotRealizable"; break;
    case VerdictStatus::RealizableNoWitness: out["status"] = "RealizableNoWitness"; break;
  }
  if (verdict.obstruction) {
    Json o;
    o["kind"] = obstruction_kind_name(verdict.obstruction->kind);
    if (!verdict.obstruction->family.empty()) o["family"] = verdict.obstruction->family;
    out["obstruction"] = o;
  }
  out["citation"] = verdict.citation;
  return out;
}

struct Inputs {
  std::string sig_text;
  std::string roots_text = "[]";
  int component = 0;
  bool has_component = false;

  StratumSignature signature() const { return signature_from_json(parse_json(sig_text, "--sig")); }
  RootedResidueConfig config(const StratumSignature& sig) const {
    return config_from_json(parse_json(roots_text, "--roots"), sig);
  }
  ComponentSelector selector() const {
    return has_component ? ComponentSelector::rotation(component) : ComponentSelector::whole();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadstrata: residues of primitive quadratic differentials"};
  app.require_subcommand(1);

  Inputs in;
  std::string surface_path, svg_path;
  int budget = 7;
  bool run_verify = false;

  auto add_sig = [&](CLI::App* cmd, bool with_roots) {
    cmd->add_option("--sig", in.sig_text,
                    "signature JSON {\"genus\":g,\"zeros\":[...],\"even_poles\":[...],"
                    "\"odd_poles\":[...],\"double_poles\":s}")
        ->required();
    if (with_roots)
      cmd->add_option("--roots", in.roots_text,
                      "residue roots: flat array (even poles first) or "
                      "{\"even_pole_roots\":[...],\"double_pole_roots\":[...]}");
  };
  auto add_component = [&](CLI::App* cmd) {
    cmd->add_option_function<int>(
        "--component",
        [&](int rho) {
          in.component = rho;
          in.has_component = true;
        },
        "rotation number of a genus-1 component");
  };

  auto* cmd_decide = app.add_subcommand("decide", "classify a rooted configuration");
  add_sig(cmd_decide, true);
  add_component(cmd_decide);

  auto* cmd_construct = app.add_subcommand("construct", "build a flat-surface witness");
  add_sig(cmd_construct, true);
  add_component(cmd_construct);
  cmd_construct->add_option("--svg", svg_path, "also render the witness");
  cmd_construct->add_flag("--verify", run_verify, "re-run the verifier inline");

  auto* cmd_verify = app.add_subcommand("verify", "recompute local invariants of a surface file");
  cmd_verify->add_option("--surface", surface_path, "surface JSON file, or - for stdin")->required();

  auto* cmd_search = app.add_subcommand("search", "enumerate horizontal normal forms");
  add_sig(cmd_search, true);
  cmd_search->add_option("--budget", budget, "maximal double pole count (default 7)");
  cmd_search->add_option("--svg", svg_path, "render the first witness");

  auto* cmd_nonempty = app.add_subcommand("nonempty", "emptiness of a holomorphic stratum");
  add_sig(cmd_nonempty, false);

  auto* cmd_cylinders = app.add_subcommand("cylinders", "maximal disjoint cylinder count");
  add_sig(cmd_cylinders, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_decide->parsed()) {
      StratumSignature sig = in.signature();
      Verdict verdict = decide(sig, in.config(sig), in.selector());
      std::cout << verdict_to_json(verdict).dump(2) << "\n";
      return verdict.status == VerdictStatus::NotRealizable ? 2 : 0;
    }
    if (cmd_construct->parsed()) {
      StratumSignature sig = in.signature();
      Witness witness = construct(sig, in.config(sig), in.selector());
      Json out;
      out["surface"] = to_json(witness.surface);
      out["recipe"] = witness.recipe;
      out["claimed"] = to_json(witness.claimed);
      if (witness.rotation_number > 0) {
        out["rotation_number"] = witness.rotation_number;
        out["loop_indices"] = Json::array({witness.alpha_index, witness.beta_index});
      }
      if (run_verify) out["verified"] = to_json(verify(witness.surface));
      if (!svg_path.empty()) write_svg(witness.surface, svg_path);
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (cmd_verify->parsed()) {
      FlatSurface surface = surface_from_json(parse_json(read_input(surface_path), "surface"));
      std::cout << to_json(verify(surface)).dump(2) << "\n";
      return 0;
    }
    if (cmd_search->parsed()) {
      StratumSignature sig = in.signature();
      RootedResidueConfig config = in.config(sig);
      std::vector<long> roots;
      for (const auto& r : config.double_pole_roots) {
        if (r.im != 0 || r.re < 0 || denominator(r.re) != 1)
          throw Error(ErrorCode::BadInput, "search roots must be positive integers");
        roots.push_back(numerator(r.re).convert_to<long>());
      }
      auto witnesses = enumerate_normal_forms(sig, roots, budget);
      Json report;
      report["witness_count"] = witnesses.size();
      long g = 0;
      for (long r : roots) g = std::gcd(g, r);
      bool checked = g == 1;
      if (checked)
        for (const auto& w : witnesses) check_half_integer_lengths(w, roots);
      report["property_checks"] =
          Json{{"half_integer_lengths", checked ? (witnesses.empty() ? "vacuous" : "pass")
                                                : "skipped (roots not coprime)"}};
      if (!witnesses.empty()) {
        report["first_witness"] = to_json(witnesses[0].surface);
        Json lengths = Json::array();
        for (const auto& L : witnesses[0].lengths) lengths.push_back(rational_to_string(L));
        report["first_witness_lengths"] = lengths;
        if (!svg_path.empty()) write_svg(witnesses[0].surface, svg_path);
      }
      std::cout << report.dump(2) << "\n";
      return 0;
    }
    if (cmd_nonempty->parsed()) {
      std::cout << Json{{"nonempty", stratum_nonempty_holomorphic(in.signature())}}.dump(2) << "\n";
      return 0;
    }
    if (cmd_cylinders->parsed()) {
      std::cout << Json{{"max", max_disjoint_cylinders(in.signature())}}.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    Json err{{"error", Json{{"code", error_code_name(e.code())}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err{{"error", Json{{"code", "Internal"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 1;
}
