#pragma once

// Forward-mode first derivatives over a fixed four-dimensional chart.
//
// Every field in the catalog is a closed-form function of the chart point
// built from constants, coordinates, + - * /, exp, sin and cos. `Expr` is an
// immutable expression tree over that function class; it evaluates either to
// a plain double or to a `Jet1` carrying the exact gradient.

#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace g4 {

inline constexpr int kDim = 4;

using Vec4 = std::array<double, kDim>;
using Mat4 = std::array<Vec4, kDim>;

/// A point of the coordinate chart (u1, u2, u3, u4).
using ChartPoint = Vec4;

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value plus exact gradient d/du^i at a chart point.
struct Jet1 {
  double value = 0.0;
  Vec4 grad{};

  constexpr Jet1() = default;
  constexpr Jet1(double v) : value(v) {}  // NOLINT: constants promote implicitly
  constexpr Jet1(double v, const Vec4& g) : value(v), grad(g) {}

  /// The coordinate function u^index seeded with unit gradient.
  static constexpr Jet1 variable(double v, int index) {
    Jet1 j(v);
    j.grad[static_cast<std::size_t>(index)] = 1.0;
    return j;
  }

  Jet1& operator+=(const Jet1& o) {
    value += o.value;
    for (int i = 0; i < kDim; ++i) grad[i] += o.grad[i];
    return *this;
  }
  Jet1& operator-=(const Jet1& o) {
    value -= o.value;
    for (int i = 0; i < kDim; ++i) grad[i] -= o.grad[i];
    return *this;
  }
  Jet1& operator*=(const Jet1& o) {
    for (int i = 0; i < kDim; ++i) grad[i] = grad[i] * o.value + value * o.grad[i];
    value *= o.value;
    return *this;
  }
  Jet1& operator*=(double s) {
    value *= s;
    for (auto& g : grad) g *= s;
    return *this;
  }
};

inline Jet1 operator-(Jet1 a) {
  a *= -1.0;
  return a;
}
inline Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
inline Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
inline Jet1 operator*(Jet1 a, const Jet1& b) { return a *= b; }
inline Jet1 operator*(Jet1 a, double s) { return a *= s; }
inline Jet1 operator*(double s, Jet1 a) { return a *= s; }

inline Jet1 operator/(const Jet1& a, const Jet1& b) {
  const double inv = 1.0 / b.value;
  Jet1 r(a.value * inv);
  for (int i = 0; i < kDim; ++i) r.grad[i] = (a.grad[i] - r.value * b.grad[i]) * inv;
  return r;
}

inline Jet1 exp(const Jet1& a) {
  const double e = std::exp(a.value);
  Jet1 r(e);
  for (int i = 0; i < kDim; ++i) r.grad[i] = e * a.grad[i];
  return r;
}

inline Jet1 sin(const Jet1& a) {
  const double c = std::cos(a.value);
  Jet1 r(std::sin(a.value));
  for (int i = 0; i < kDim; ++i) r.grad[i] = c * a.grad[i];
  return r;
}

inline Jet1 cos(const Jet1& a) {
  const double s = -std::sin(a.value);
  Jet1 r(std::cos(a.value));
  for (int i = 0; i < kDim; ++i) r.grad[i] = s * a.grad[i];
  return r;
}

/// Denominators with magnitude at or below this are treated as singular.
inline constexpr double kSingularDenominator = 1e-12;

/// Closed-form scalar field on the chart.
///
/// Cheap to copy (shared immutable nodes) and safe to evaluate concurrently.
/// Construction folds constants and drops additive/multiplicative identities,
/// so structurally-zero entries of sparse matrices stay recognisable.
class Expr {
 public:
  enum class Op { kConst, kCoord, kAdd, kSub, kMul, kDiv, kNeg, kExp, kSin, kCos };
  struct Node;  // opaque outside adiff.cpp

  Expr() : Expr(0.0) {}
  Expr(double constant);  // NOLINT: numeric literals act as constant fields
  Expr(int constant) : Expr(static_cast<double>(constant)) {}  // NOLINT

  /// The coordinate u^(index+1); index is zero-based.
  static Expr coord(int index);

  double value(const ChartPoint& u) const;
  Jet1 jet(const ChartPoint& u) const;

  bool is_constant() const;
  /// Meaningful only when is_constant().
  double constant_value() const;
  bool is_zero() const { return is_constant() && constant_value() == 0.0; }

  /// Infix rendering, for diagnostics and catalog dumps.
  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, const Expr& a, const Expr& b);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr exp(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);

using FieldExpr = Expr;
using ExprVec = std::array<Expr, kDim>;
using ExprMat = std::array<ExprVec, kDim>;

/// Value and exact gradient of f at u. Throws DomainError on a singular
/// denominator.
Jet1 eval_jet(const Expr& f, const ChartPoint& u);

/// Central-difference gradient (f(u + h e_i) - f(u - h e_i)) / 2h.
/// Independent of the Jet1 path: only plain evaluation is used.
Vec4 finite_diff_gradient(const Expr& f, const ChartPoint& u, double h);

/// Mixed absolute/relative agreement |a - b| <= atol + rtol * |b|.
bool gradients_agree(const Vec4& ad, const Vec4& fd, double atol, double rtol);

}  // namespace g4
