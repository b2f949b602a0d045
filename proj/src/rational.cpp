#include "quadstrata/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace quadstrata {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::IllegalOrder: return "IllegalOrder";
    case ErrorCode::EmptyStratum: return "EmptyStratum";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::BadType: return "BadType";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::VectorMismatch: return "VectorMismatch";
    case ErrorCode::AlreadyGlued: return "AlreadyGlued";
    case ErrorCode::FreeEdge: return "FreeEdge";
    case ErrorCode::BadGluing: return "BadGluing";
    case ErrorCode::BadPoleMark: return "BadPoleMark";
    case ErrorCode::NonIntegerAngle: return "NonIntegerAngle";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NonPrimitiveStratum: return "NonPrimitiveStratum";
    case ErrorCode::ComponentUnknownForGenusGe2: return "ComponentUnknownForGenusGe2";
    case ErrorCode::IllegalComponent: return "IllegalComponent";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::ClosureFailure: return "ClosureFailure";
    case ErrorCode::ObstructedConfiguration: return "ObstructedConfiguration";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::InfeasibleLengths: return "InfeasibleLengths";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PropertyViolated: return "PropertyViolated";
    case ErrorCode::BadSignature: return "BadSignature";
  }
  return "Unknown";
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::BadInput, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Int(s));
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::BadInput, "zero denominator in \"" + s + "\"");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadInput, "malformed rational \"" + s + "\"");
  }
}

std::string rational_to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(const GaussianRational& z) {
  return rational_to_string(z.re) + (z.im.sign() >= 0 ? "+" : "") + rational_to_string(z.im) + "i";
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rational(0);
  Int n = numerator(q), d = denominator(q);
  Int rn = boost::multiprecision::sqrt(n);
  Int rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

std::optional<GaussianRational> complex_sqrt(const GaussianRational& z) {
  // w = x + iy with x^2 - y^2 = re, 2xy = im; |w|^2 = sqrt(|z|^2).
  auto mod = rational_sqrt(z.norm_sq());
  if (!mod) return std::nullopt;
  auto x2 = (*mod + z.re) / 2;
  auto y2 = (*mod - z.re) / 2;
  auto x = rational_sqrt(x2);
  auto y = rational_sqrt(y2);
  if (!x || !y) return std::nullopt;
  GaussianRational w{*x, z.im.sign() >= 0 ? *y : -*y};
  if (w.re < 0 || (w.re == 0 && w.im < 0)) w = -w;
  if (w.square() != z) return std::nullopt;
  return w;
}

GaussianRational primitive_direction(const GaussianRational& v) {
  if (v.is_zero()) throw Error(ErrorCode::BadInput, "zero vector has no direction");
  Int a = numerator(v.re) * denominator(v.im);
  Int b = numerator(v.im) * denominator(v.re);
  Int g = boost::multiprecision::gcd(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
  if (g == 0) g = 1;
  return {Rational(a / g), Rational(b / g)};
}

int arg_sign(const GaussianRational& z) {
  if (z.im > 0) return 1;
  if (z.im < 0) return -1;
  // On the real axis: arg is 0 on the positive side, pi on the negative side.
  if (z.re > 0) return 0;
  if (z.re < 0) return 1;
  throw Error(ErrorCode::BadInput, "arg of zero");
}

void TurningAccumulator::add(const GaussianRational& a) {
  if (a.is_zero()) throw Error(ErrorCode::BadInput, "turning by zero vector");
  GaussianRational ad = primitive_direction(a);
  int sp = arg_sign(z_);
  int sa = arg_sign(ad);
  GaussianRational r = z_ * ad;
  int sr = arg_sign(r);
  // arg(z) + arg(a) = arg(r) + 2*pi*k with k in {-1, 0, 1}.
  if (sp > 0 && sa > 0 && sr <= 0) {
    wraps_ += 1;
  } else if (sp < 0 && sa < 0 && sr > 0) {
    wraps_ -= 1;
  }
  z_ = primitive_direction(r);
}

long TurningAccumulator::total_half_turns() const {
  if (z_.im != 0) throw Error(ErrorCode::NonIntegerAngle, "angle is not an integer multiple of pi");
  long base = (z_.re < 0) ? 1 : 0;
  return base + 2 * wraps_ + half_turns_;
}

}  // namespace quadstrata
