#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace quadstrata {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  BadInput,
  DegreeMismatch,
  IllegalOrder,
  EmptyStratum,
  SelfIntersection,
  BadType,
  BadOrder,
  VectorMismatch,
  AlreadyGlued,
  FreeEdge,
  BadGluing,
  BadPoleMark,
  NonIntegerAngle,
  NotClosed,
  NonPrimitiveStratum,
  ComponentUnknownForGenusGe2,
  IllegalComponent,
  DegeneratePolygon,
  ClosureFailure,
  ObstructedConfiguration,
  UnsupportedCase,
  InfeasibleLengths,
  BudgetExceeded,
  PropertyViolated,
  BadSignature,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

// Parses "p/q" or "p"; the only accepted serialization of a rational.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& q);

inline int sign(const Rational& q) { return q.sign(); }

// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  explicit GaussianRational(int r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRational operator*(const Rational& s) const { return {re * s, im * s}; }
  GaussianRational operator/(const Rational& s) const { return {re / s, im / s}; }
  GaussianRational operator/(const GaussianRational& o) const {
    Rational n = o.norm_sq();
    if (n == 0) throw Error(ErrorCode::BadInput, "division by zero");
    GaussianRational p = *this * o.conj();
    return {p.re / n, p.im / n};
  }
  GaussianRational conj() const { return {re, -im}; }
  GaussianRational square() const { return *this * *this; }
  Rational norm_sq() const { return re * re + im * im; }

  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }
  // Lexicographic; used only for canonical sorting, no geometric meaning.
  bool operator<(const GaussianRational& o) const {
    if (re != o.re) return re < o.re;
    return im < o.im;
  }
};

inline GaussianRational gr(int re, int im = 0) { return {Rational(re), Rational(im)}; }
inline GaussianRational gr(const Rational& re, const Rational& im) { return {re, im}; }

inline Rational cross(const GaussianRational& a, const GaussianRational& b) {
  return a.re * b.im - a.im * b.re;
}
inline Rational dot(const GaussianRational& a, const GaussianRational& b) {
  return a.re * b.re + a.im * b.im;
}

std::string to_string(const GaussianRational& z);

// If q is the square of a rational, returns the nonnegative root.
std::optional<Rational> rational_sqrt(const Rational& q);

// Exact square roots of a Gaussian rational, when they exist in Q(i).
// Returns the root with re > 0, or re == 0 and im >= 0.
std::optional<GaussianRational> complex_sqrt(const GaussianRational& z);

// Direction of a nonzero vector reduced to a primitive Gaussian-integer pair.
// Two vectors are parallel with the same orientation iff their primitive
// directions are equal.
GaussianRational primitive_direction(const GaussianRational& v);

// Sign classification of arg(z) for z != 0 with arg in (-pi, pi]:
//  +1 if arg > 0 (upper half plane, or the negative real axis),
//   0 if arg == 0 (positive real axis),
//  -1 if arg < 0.
int arg_sign(const GaussianRational& z);

// Exact accumulator for sums of angles between rational directions.
// Tracks S = sum of arg(a_i) with each arg taken in (-pi, pi], as
// S = arg(z) + 2*pi*wraps with z the running product (kept primitive).
// When the total is known to be a multiple of pi, `total_half_turns`
// extracts S / pi exactly.
class TurningAccumulator {
 public:
  TurningAccumulator() : z_(gr(1)), wraps_(0) {}

  // Adds arg(a) for a != 0, branch (-pi, pi].
  void add(const GaussianRational& a);
  // Adds an exact multiple of pi.
  void add_half_turns(long n) { half_turns_ += n; }

  // S must be an integer multiple of pi; throws NonIntegerAngle otherwise.
  long total_half_turns() const;
  bool is_multiple_of_pi() const { return z_.im == 0; }

 private:
  GaussianRational z_;  // primitive running product
  long wraps_;
  long half_turns_ = 0;
};

}  // namespace quadstrata
