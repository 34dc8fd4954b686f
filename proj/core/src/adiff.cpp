#include "g4/adiff.hpp"

#include <cstdio>

namespace g4 {

struct Expr::Node {
  Op op = Op::kConst;
  double constant = 0.0;
  int index = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

bool is_const(const std::shared_ptr<const Expr::Node>& n, double* v = nullptr);

double checked_denominator(double d) {
  if (!std::isfinite(d) || std::abs(d) <= kSingularDenominator) {
    throw DomainError("singular denominator in field evaluation");
  }
  return d;
}

}  // namespace

template <typename T>
T evaluate(const Expr::Node& n, const ChartPoint& u) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::kConst:
      return T(n.constant);
    case Op::kCoord:
      if constexpr (std::is_same_v<T, Jet1>) {
        return Jet1::variable(u[static_cast<std::size_t>(n.index)], n.index);
      } else {
        return u[static_cast<std::size_t>(n.index)];
      }
    case Op::kAdd:
      return evaluate<T>(*n.lhs, u) + evaluate<T>(*n.rhs, u);
    case Op::kSub:
      return evaluate<T>(*n.lhs, u) - evaluate<T>(*n.rhs, u);
    case Op::kMul:
      return evaluate<T>(*n.lhs, u) * evaluate<T>(*n.rhs, u);
    case Op::kDiv: {
      T den = evaluate<T>(*n.rhs, u);
      if constexpr (std::is_same_v<T, Jet1>) {
        checked_denominator(den.value);
      } else {
        checked_denominator(den);
      }
      return evaluate<T>(*n.lhs, u) / den;
    }
    case Op::kNeg:
      return -evaluate<T>(*n.lhs, u);
    case Op::kExp: {
      using std::exp;
      return exp(evaluate<T>(*n.lhs, u));
    }
    case Op::kSin: {
      using std::sin;
      return sin(evaluate<T>(*n.lhs, u));
    }
    case Op::kCos: {
      using std::cos;
      return cos(evaluate<T>(*n.lhs, u));
    }
  }
  return T(0.0);
}

namespace {

bool is_const(const std::shared_ptr<const Expr::Node>& n, double* v) {
  if (n->op != Expr::Op::kConst) return false;
  if (v) *v = n->constant;
  return true;
}

}  // namespace

Expr::Expr(double constant) {
  auto n = std::make_shared<Node>();
  n->op = Op::kConst;
  n->constant = constant;
  node_ = std::move(n);
}

Expr Expr::coord(int index) {
  if (index < 0 || index >= kDim) throw std::out_of_range("coordinate index");
  auto n = std::make_shared<Node>();
  n->op = Op::kCoord;
  n->index = index;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make(Op op, const Expr& a, const Expr& b) {
  double x = 0.0;
  double y = 0.0;
  const bool ca = is_const(a.node_, &x);
  const bool cb = b.node_ && is_const(b.node_, &y);
  switch (op) {
    case Op::kAdd:
      if (ca && cb) return Expr(x + y);
      if (ca && x == 0.0) return b;
      if (cb && y == 0.0) return a;
      break;
    case Op::kSub:
      if (ca && cb) return Expr(x - y);
      if (cb && y == 0.0) return a;
      if (ca && x == 0.0) return make(Op::kNeg, b, Expr());
      break;
    case Op::kMul:
      if (ca && cb) return Expr(x * y);
      if ((ca && x == 0.0) || (cb && y == 0.0)) return Expr(0.0);
      if (ca && x == 1.0) return b;
      if (cb && y == 1.0) return a;
      break;
    case Op::kDiv:
      if (cb && y == 0.0) throw DomainError("division by the zero constant");
      if (ca && cb) return Expr(x / y);
      if (ca && x == 0.0) return Expr(0.0);
      if (cb && y == 1.0) return a;
      break;
    case Op::kNeg:
      if (ca) return Expr(-x);
      break;
    case Op::kExp:
      if (ca) return Expr(std::exp(x));
      break;
    case Op::kSin:
      if (ca) return Expr(std::sin(x));
      break;
    case Op::kCos:
      if (ca) return Expr(std::cos(x));
      break;
    case Op::kConst:
    case Op::kCoord:
      break;
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = a.node_;
  if (op == Op::kAdd || op == Op::kSub || op == Op::kMul || op == Op::kDiv) n->rhs = b.node_;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

double Expr::value(const ChartPoint& u) const { return evaluate<double>(*node_, u); }
Jet1 Expr::jet(const ChartPoint& u) const { return evaluate<Jet1>(*node_, u); }

bool Expr::is_constant() const { return node_->op == Op::kConst; }
double Expr::constant_value() const { return node_->constant; }

namespace {

std::string render(const Expr::Node& n) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::kConst: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.constant);
      return buf;
    }
    case Op::kCoord:
      return "u" + std::to_string(n.index + 1);
    case Op::kAdd:
      return "(" + render(*n.lhs) + " + " + render(*n.rhs) + ")";
    case Op::kSub:
      return "(" + render(*n.lhs) + " - " + render(*n.rhs) + ")";
    case Op::kMul:
      return render(*n.lhs) + "*" + render(*n.rhs);
    case Op::kDiv:
      return render(*n.lhs) + "/" + render(*n.rhs);
    case Op::kNeg:
      return "-" + render(*n.lhs);
    case Op::kExp:
      return "exp(" + render(*n.lhs) + ")";
    case Op::kSin:
      return "sin(" + render(*n.lhs) + ")";
    case Op::kCos:
      return "cos(" + render(*n.lhs) + ")";
  }
  return "?";
}

}  // namespace

std::string Expr::to_string() const { return render(*node_); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::kAdd, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::kSub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::kMul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::kDiv, a, b); }
Expr operator-(const Expr& a) { return Expr::make(Expr::Op::kNeg, a, Expr()); }
Expr exp(const Expr& a) { return Expr::make(Expr::Op::kExp, a, Expr()); }
Expr sin(const Expr& a) { return Expr::make(Expr::Op::kSin, a, Expr()); }
Expr cos(const Expr& a) { return Expr::make(Expr::Op::kCos, a, Expr()); }

Jet1 eval_jet(const Expr& f, const ChartPoint& u) { return f.jet(u); }

Vec4 finite_diff_gradient(const Expr& f, const ChartPoint& u, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite difference step must be positive");
  Vec4 g{};
  for (int i = 0; i < kDim; ++i) {
    ChartPoint plus = u;
    ChartPoint minus = u;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (f.value(plus) - f.value(minus)) / (2.0 * h);
  }
  return g;
}

bool gradients_agree(const Vec4& ad, const Vec4& fd, double atol, double rtol) {
  for (int i = 0; i < kDim; ++i) {
    if (!(std::abs(ad[i] - fd[i]) <= atol + rtol * std::abs(fd[i]))) return false;
  }
  return true;
}

}  // namespace g4
