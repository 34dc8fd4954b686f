#include "g4/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace g4 {

namespace {

struct GroupName {
  GroupId id;
  std::string_view key;
  std::string_view label;
};

constexpr std::array<GroupName, 15> kNames = {{
    {GroupId::kI_cne1, "g4-i-cne1", "G4(I) c!=1"},
    {GroupId::kI_ceq1, "g4-i-ceq1", "G4(I) c=1"},
    {GroupId::kII, "g4-ii", "G4(II)"},
    {GroupId::kIII, "g4-iii", "G4(III)"},
    {GroupId::kIV, "g4-iv", "G4(IV)"},
    {GroupId::kV, "g4-v", "G4(V)"},
    {GroupId::kVI_1, "g4-vi-1", "G4(VI1)"},
    {GroupId::kVI_2, "g4-vi-2", "G4(VI2)"},
    {GroupId::kVI_3, "g4-vi-3", "G4(VI3)"},
    {GroupId::kVI_4_1, "g4-vi-4-1", "G4(VI4)1"},
    {GroupId::kVI_4_2, "g4-vi-4-2", "G4(VI4)2"},
    {GroupId::kVII_a, "g4-vii-a", "G4(VII) X4=p4"},
    {GroupId::kVII_b, "g4-vii-b", "G4(VII) X4=p1+p4"},
    {GroupId::kVIII_a, "g4-viii-a", "G4(VIII) X4=p4"},
    {GroupId::kVIII_b, "g4-viii-b", "G4(VIII) X4=p3+p4"},
}};

const GroupName& name_of(GroupId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n;
  }
  throw std::out_of_range("unknown group id");
}

const Expr u1 = Expr::coord(0);
const Expr u2 = Expr::coord(1);
const Expr u3 = Expr::coord(2);
const Expr u4 = Expr::coord(3);

using Coeffs = std::array<Expr, kDim>;

ExprMat transpose(const ExprMat& m) {
  ExprMat t;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) t[i][j] = m[j][i];
  return t;
}

ExprMat scaled(const Expr& s, const ExprMat& m) {
  ExprMat r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r[i][j] = s * m[i][j];
  return r;
}

template <typename F>
LinearPotential linear(F&& f) {
  LinearPotential p;
  for (int b = 0; b < kDim; ++b) {
    Coeffs a{Expr(0.0), Expr(0.0), Expr(0.0), Expr(0.0)};
    a[b] = Expr(1.0);
    p.basis[b] = f(a);
  }
  return p;
}

SampleDomain default_box() {
  SampleDomain d;
  d.box.fill({-1.5, 1.5});
  return d;
}

double scaled_diff(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a) + std::abs(b)); }

// ---------------------------------------------------------------------------
// G4(I), G4(II)

void build_I_cne1(GroupModel& m) {
  const double c = m.params.c;
  const double eps = c - 1.0;
  m.C.set(0, 0, 3, c);
  m.C.set(0, 1, 2, 1.0);
  m.C.set(1, 1, 3, 1.0);
  m.C.set(2, 2, 3, eps);

  m.frame.xi = {{{0, 1, 0, 0}, {0, 0, 1, 0}, {-1, u3, 0, 0}, {eps * u1, c * u2, u3, 1}}};
  m.frame.dual = transpose(
      {{{u3, 0, -1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {-(eps * u1 * u3 + c * u2), -u3, eps * u1, 1}}});

  const Expr ee = exp(-eps * u4), ec = exp(-c * u4), e1 = exp(-u4);
  m.tetrad.cov = {{{ee, 0, 0, 0}, {0, ec, 0, 0}, {0, u1 * ec, e1, 0}, {0, 0, 0, 1}}};
  m.tetrad.con = {{{exp(eps * u4), 0, 0, 0},
                   {0, exp(c * u4), 0, 0},
                   {0, -u1 * exp(u4), exp(u4), 0},
                   {0, 0, 0, 1}}};

  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    return {a[0] * ee, a[1] * ec, a[1] * u1 * ec + a[2] * e1, a[3]};
  });
  m.potential.frame_printed = linear([&](const Coeffs& a) -> ExprVec {
    return {a[1] * ec, a[1] * u1 * ec + a[2] * e1, a[1] * u3 * ec + a[0] * ee,
            a[1] * (c * u2 + u1 * u3) * ec - c * a[0] * u1 * ee + a[2] * u3 * e1 + a[3]};
  });
}

void build_I_ceq1(GroupModel& m) {
  m.C.set(0, 0, 3, 1.0);
  m.C.set(0, 1, 2, 1.0);
  m.C.set(1, 1, 3, 1.0);

  m.frame.xi = {{{0, 1, 0, 0}, {0, 0, 1, 0}, {-1, u3, 0, 0}, {0, u2, u3, 1}}};
  m.frame.dual = transpose({{{u3, 0, -1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {-u2, -u3, 0, 1}}});

  const Expr e1 = exp(-u4), p1 = exp(u4);
  m.tetrad.cov = {{{1, 0, 0, 0}, {0, e1, 0, 0}, {0, u1 * e1, e1, 0}, {0, 0, 0, 1}}};
  m.tetrad.con = {{{1, 0, 0, 0}, {0, p1, 0, 0}, {0, -u1 * p1, p1, 0}, {0, 0, 0, 1}}};

  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    return {a[0], a[1] * e1, (a[1] * u1 + a[2]) * e1, a[3]};
  });
  m.potential.frame_printed = linear([&](const Coeffs& a) -> ExprVec {
    return {a[1] * e1, (a[1] * u1 + a[2]) * e1, -a[0] + a[1] * u3 * e1,
            (a[1] * (u1 * u3 + u2) + a[2] * u3) * e1 + a[3]};
  });
}

void build_II(GroupModel& m) {
  m.C.set(0, 0, 3, 2.0);
  m.C.set(0, 1, 2, 1.0);
  m.C.set(1, 1, 3, 1.0);
  m.C.set(1, 2, 3, 1.0);
  m.C.set(2, 2, 3, 1.0);

  const Expr half(0.5);
  m.frame.xi = {{{0, 1, 0, 0},
                 {0, 0, 1, 0},
                 {-1, u3, 0, 0},
                 {u1, half * (4.0 * u2 + u1 * u1), u3 - u1, 1}}};
  m.frame.dual = transpose({{{u3, 0, -1, 0},
                             {1, 0, 0, 0},
                             {0, 1, 0, 0},
                             {-(u1 * u3 + 2.0 * u2 + half * u1 * u1), u1 - u3, u1, 1}}});

  const Expr e1 = exp(-u4), e2 = exp(-2.0 * u4), p1 = exp(u4);
  m.tetrad.cov = {{{0, u4 * e1, -e1, 0}, {e2, 0, 0, 0}, {u1 * e2, e1, 0, 0}, {0, 0, 0, 1}}};
  m.tetrad.con = {{{0, exp(2.0 * u4), 0, 0},
                   {0, -u1 * p1, p1, 0},
                   {-p1, -u1 * u4 * p1, u4 * p1, 0},
                   {0, 0, 0, 1}}};

  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    return {(a[1] * u4 - a[2]) * e1, a[0] * e2, a[0] * u1 * e2 + a[1] * e1, a[3]};
  });
  m.potential.frame_printed = linear([&](const Coeffs& a) -> ExprVec {
    return {a[0] * e2, u1 * a[0] * e2 + a[1] * e1, u3 * a[0] * e2 - a[1] * u4 * e1 + a[2] * e1,
            (u1 * u3 + 2.0 * u2 - half * u1 * u1) * a[0] * e2 +
                a[1] * (u3 + u1 * u4 - u1) * e1 - a[2] * u1 * e1 + a[3]};
  });
}

// ---------------------------------------------------------------------------
// G4(III), G4(IV), G4(V)

void build_III(GroupModel& m) {
  const double alpha = m.params.alpha_angle;
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  m.C.set(0, 0, 3, 2.0 * ca);
  m.C.set(0, 1, 2, 1.0);
  m.C.set(2, 1, 3, 1.0);
  m.C.set(1, 2, 3, -1.0);
  m.C.set(2, 2, 3, 2.0 * ca);

  const Expr half(0.5);
  m.frame.xi = {{{0, 1, 0, 0},
                 {0, 0, 1, 0},
                 {-1, u3, 0, 0},
                 {2.0 * ca * u1 - u3, 2.0 * ca * u2 + half * (u3 * u3 - u1 * u1), u1, 1}}};
  m.frame.dual = transpose({{{u3, 0, -1, 0},
                             {1, 0, 0, 0},
                             {0, 1, 0, 0},
                             {half * (u1 * u1 + u3 * u3) - 2.0 * ca * (u1 * u3 + u2), -u1,
                              2.0 * ca * u1 - u3, 1}}});

  const Expr x = sa * u4;
  const Expr xa = x - alpha;
  const Expr em = exp(-ca * u4), ep = exp(ca * u4), em2 = exp(-2.0 * ca * u4);
  m.tetrad.cov = scaled(em, {{{0, -sin(xa), -cos(xa), 0},
                              {em, 0, 0, 0},
                              {u1 * em, sin(x), cos(x), 0},
                              {0, 0, 0, ep}}});
  m.tetrad.con = scaled(ep, {{{0, ep, 0, 0},
                              {cos(x) / sa, -u1 * cos(xa) / sa, cos(xa) / sa, 0},
                              {-sin(x) / sa, u1 * sin(xa) / sa, -sin(xa) / sa, 0},
                              {0, 0, 0, em}}});

  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    return {-em * (a[1] * sin(xa) + a[2] * cos(xa)), a[0] * em2,
            a[0] * u1 * em2 + em * (a[1] * sin(x) + a[2] * cos(x)), a[3]};
  });
  m.potential.holo_printed = linear([&](const Coeffs& a) -> ExprVec {
    return {em * (a[0] * sin(xa) + a[1] * cos(xa)), a[2] * em2,
            u1 * a[2] * em2 + em * (a[0] * sin(x) + a[1] * cos(x)), 0};
  });
  m.potential.frame_printed = linear([&](const Coeffs& a) -> ExprVec {
    const Expr f1 = a[0] * em2;
    const Expr fa = em * (a[1] * sin(x) + a[2] * cos(x));
    const Expr fb = em * (a[1] * sin(xa) + a[2] * cos(xa));
    return {f1, u1 * f1 + fa, u3 * f1 + fb,
            f1 * (2.0 * ca * u2 + half * (u1 * u1 + u3 * u3)) + u1 * fa + (2.0 * ca * u1 - u3) * fb};
  });

  m.notes.push_back("structure: printed dual frame entry xi^4_1 has the wrong sign on (u1^2+u3^2)/2; "
                    "catalog uses the inverse of the Killing frame");
  m.notes.push_back("tetrad: first row of the printed covector matrix is not left-invariant; "
                    "catalog negates it (and the matching column of the inverse)");
  m.notes.push_back("potential: printed holonomic A_1 has the wrong overall sign and A_4 = 0 drops alpha4; "
                    "asserted table is alpha_b e^b_i relabelled to tetrad order, literal table checked in report mode");
  m.notes.push_back("potential: the frame table defines A and B twice with different constant labels; "
                    "the first definitions are transcribed and checked in report mode");
}

void build_IV(GroupModel& m) {
  m.C.set(0, 0, 3, 1.0);
  m.C.set(1, 1, 2, 1.0);

  m.frame.xi = {{{0, 0, 1, 0}, {0, 1, 0, 0}, {-1, u2, 0, 0}, {0, 0, u3, 1}}};
  m.frame.dual = transpose({{{0, u2, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {-u3, 0, 0, 1}}});

  const Expr ep1 = exp(u1), em4 = exp(-u4);
  m.tetrad.cov = {{{1, 0, 0, 0}, {0, ep1, 0, 0}, {0, 0, em4, 0}, {0, 0, 0, 1}}};
  m.tetrad.con = {{{1, 0, 0, 0}, {0, exp(-u1), 0, 0}, {0, 0, exp(u4), 0}, {0, 0, 0, 1}}};

  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    return {a[0], a[1] * ep1, a[2] * em4, a[3]};
  });
  m.potential.holo_printed = linear([&](const Coeffs& a) -> ExprVec {
    return {a[0], a[1] * ep1, a[2] * em4, 0};
  });
  m.potential.frame_printed = linear([&](const Coeffs& a) -> ExprVec {
    return {a[2] * em4, a[1] * ep1, a[1] * u2 * ep1 - a[2], u3 * a[2] * em4 + a[3]};
  });

  m.notes.push_back("structure: printed C^2_14 = 1 contradicts the Killing frame, which gives "
                    "[xi_1, xi_4] = xi_1; catalog uses C^1_14 = 1");
  m.notes.push_back("potential: holonomic table uses undeclared constants beta, alpha; mapped to alpha2 "
                    "(exp(u1) term) and alpha3 (exp(-u4) term)");
  m.notes.push_back("potential: printed holonomic A_4 = 0 while the frame table carries alpha4; asserted "
                    "table uses A_4 = alpha4, literal table checked in report mode");
}

void build_V(GroupModel& m) {
  m.C.set(0, 0, 2, 1.0);
  m.C.set(1, 0, 3, 1.0);
  m.C.set(1, 1, 2, 1.0);
  m.C.set(0, 1, 3, -1.0);

  m.frame.xi = {{{0, 1, 0, 0}, {0, 0, 1, 0}, {-1, u2, u3, 0}, {0, -u3, u2, 1}}};
  m.frame.dual = transpose({{{u2, u3, -1, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {u3, -u2, 0, 1}}});

  const Expr c4 = cos(u4), s4 = sin(u4), ep = exp(u1), em = exp(-u1);
  m.tetrad.cov = {{{1, 0, 0, 0}, {0, c4 * ep, s4 * ep, 0}, {0, s4 * ep, -c4 * ep, 0}, {0, 0, 0, 1}}};
  m.tetrad.con = {{{1, 0, 0, 0}, {0, c4 * em, s4 * em, 0}, {0, s4 * em, -c4 * em, 0}, {0, 0, 0, 1}}};

  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    return {a[0], (a[1] * c4 + a[2] * s4) * ep, (a[1] * s4 - a[2] * c4) * ep, a[3]};
  });
  m.potential.frame_printed = linear([&](const Coeffs& a) -> ExprVec {
    const Expr f1 = (a[1] * c4 + a[2] * s4) * ep;
    const Expr f2 = (a[1] * s4 - a[2] * c4) * ep;
    return {f1, f2, -a[0] + u2 * f1 + u3 * f2, u2 * f2 - u3 * f1 + a[3]};
  });

  m.notes.push_back("potential: relabelling assigns alpha1 twice; read as alpha2 = a1 cos a, "
                    "alpha3 = -a1 sin a, and the frame constant a3 as alpha1");
}

// ---------------------------------------------------------------------------
// G4(VI): translations u1..u3 plus xi_4 = C_p^q u^p d_q + d_4

using Mat3E = std::array<std::array<Expr, 3>, 3>;

// exp(-C t) in closed form, C = C_p^q with row p.
Mat3E abelian_exp(GroupId id, const GroupParams& p, const Expr& t) {
  const double k = p.k, l = p.l, e = static_cast<double>(p.eps01);
  const Expr ek = exp(-k * t);
  switch (id) {
    case GroupId::kVI_1:
      return {{{exp(-l * t), 0, 0}, {0, exp(-e * t), 0}, {0, 0, ek}}};
    case GroupId::kVI_2:
      return {{{exp(-l * t), 0, 0}, {0, ek * cos(t), -ek * sin(t)}, {0, ek * sin(t), ek * cos(t)}}};
    case GroupId::kVI_3:
      return {{{exp(-e * t), 0, 0}, {0, ek, -t * ek}, {0, 0, ek}}};
    case GroupId::kVI_4_1: {
      const Expr ee = exp(-e * t);
      const double d = e - k;
      return {{{ee, 0, 0},
               {(d * t * ek - ek + ee) / (d * d), ek, -t * ek},
               {(ek - ee) / (k - e), 0, ek}}};
    }
    case GroupId::kVI_4_2:
      return {{{ek, 0, 0}, {0.5 * t * t * ek, ek, -t * ek}, {-t * ek, 0, ek}}};
    default:
      throw std::invalid_argument("not an abelian-family group");
  }
}

std::array<std::array<double, 3>, 3> abelian_matrix(GroupId id, const GroupParams& p) {
  const double k = p.k, l = p.l, e = static_cast<double>(p.eps01);
  switch (id) {
    case GroupId::kVI_1:
      return {{{l, 0, 0}, {0, e, 0}, {0, 0, k}}};
    case GroupId::kVI_2:
      return {{{l, 0, 0}, {0, k, 1}, {0, -1, k}}};
    case GroupId::kVI_3:
      return {{{e, 0, 0}, {0, k, 1}, {0, 0, k}}};
    case GroupId::kVI_4_1:
      return {{{e, 0, 0}, {0, k, 1}, {1, 0, k}}};
    case GroupId::kVI_4_2:
      return {{{k, 0, 0}, {0, k, 1}, {1, 0, k}}};
    default:
      throw std::invalid_argument("not an abelian-family group");
  }
}

void build_VI(GroupModel& m) {
  const auto Cm = abelian_matrix(m.id, m.params);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      if (Cm[p][q] != 0.0) m.C.set(q, p, 3, Cm[p][q]);

  const std::array<Expr, 3> u{u1, u2, u3};
  std::array<Expr, 3> v;
  for (int q = 0; q < 3; ++q) {
    Expr s(0.0);
    for (int p = 0; p < 3; ++p) s = s + Cm[p][q] * u[p];
    v[q] = s;
  }
  m.frame.xi = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {v[0], v[1], v[2], 1}}};
  m.frame.dual = transpose({{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {-v[0], -v[1], -v[2], 1}}});

  const Mat3E M = abelian_exp(m.id, m.params, u4);
  const Mat3E Minv = abelian_exp(m.id, m.params, -u4);
  ExprMat cov, con;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      cov[a][b] = M[a][b];
      con[a][b] = Minv[a][b];
    }
  cov[3][3] = 1;
  con[3][3] = 1;
  m.tetrad.cov = cov;
  m.tetrad.con = con;
  m.tetrad.printed = false;

  // Reduced potential: A_a = (M alpha)_a, A_4 = -C_p^q u^p A_q (alpha4 drops out).
  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    ExprVec r;
    for (int i = 0; i < 3; ++i) r[i] = M[i][0] * a[0] + M[i][1] * a[1] + M[i][2] * a[2];
    Expr a4(0.0);
    for (int q = 0; q < 3; ++q) a4 = a4 - v[q] * r[q];
    r[3] = a4;
    return r;
  });
  m.potential.holo_asserted = false;
  m.potential.frame_printed = linear([&](const Coeffs& a) -> ExprVec {
    ExprVec r;
    for (int i = 0; i < 3; ++i) r[i] = M[i][0] * a[0] + M[i][1] * a[1] + M[i][2] * a[2];
    r[3] = a[3];
    return r;
  });

  m.notes.push_back("tetrad: none printed; constructed left-invariant coframe e^b_a = exp(-C u4)_ab, e^4 = du4");
  m.notes.push_back("potential: the reduced holonomic potential is pure gauge (F = 0) but does not satisfy "
                    "the admissibility equations with omega = 0; alpha_b e^b_i does, with F != 0");
}

// ---------------------------------------------------------------------------
// G4(VII), G4(VIII)

void build_VII(GroupModel& m, bool shifted) {
  m.C.set(0, 0, 1, 1.0);
  m.C.set(2, 1, 2, 1.0);
  m.C.set(1, 0, 2, 2.0);

  const Expr ep3 = exp(u3), em3 = exp(-u3);
  m.frame.xi = {{{0, 1, 0, 0}, {0, u2, 1, 0}, {ep3, u2 * u2, 2.0 * u2, 0}, {0, 0, 0, 1}}};
  ExprMat dual_rows_i = {
      {{u2 * u2 * em3, -2.0 * u2 * em3, em3, 0}, {1, 0, 0, 0}, {-u2, 1, 0, 0}, {0, 0, 0, 1}}};
  m.notes.push_back("frame: the matrices printed as xi^a_alpha and xi_a^alpha are swapped; "
                    "the catalog uses the one that closes on the stated constants as the Killing frame");

  if (!shifted) {
    m.frame.dual = transpose(dual_rows_i);
    m.tetrad.cov = {{{1, 0, 0, 0}, {u1 * u1 * em3, -2.0 * u1 * em3, em3, 0}, {-u1, 1, 0, 0}, {0, 0, 0, 1}}};
    m.tetrad.con = {{{1, 0, 0, 0}, {u1, 0, 1, 0}, {u1 * u1, ep3, 2.0 * u1, 0}, {0, 0, 0, 1}}};
    m.metric_form = MetricForm::kBlockG3;
    m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
      const Expr q = a[0] * u1 * u1 - 2.0 * a[1] * u1 + a[2];
      return {a[0], q * em3, -a[0] * u1 + a[1], a[3]};
    });
    m.potential.frame_printed = linear([&](const Coeffs& a) -> ExprVec {
      const Expr q = a[0] * u1 * u1 - 2.0 * a[1] * u1 + a[2];
      const Expr w = a[0] * u1 + a[1];
      return {q * em3, u2 * q * em3 - w, u2 * u2 * q * em3 - u2 * w + a[0] * ep3, a[3]};
    });
    return;
  }

  m.frame.xi[3] = {1, 0, 0, 1};
  dual_rows_i[3] = {-(u2 * u2 * em3), 2.0 * u2 * em3, -em3, 1};
  m.frame.dual = transpose(dual_rows_i);

  const Expr t = u1 - u4;
  m.tetrad.cov = {{{1, 0, 0, 0}, {t * t * em3, -2.0 * t * em3, em3, 0}, {-t, 1, 0, 0}, {-1, 0, 0, 1}}};
  m.tetrad.con = {{{1, 0, 0, 0}, {t, 0, 1, 0}, {t * t, ep3, 2.0 * t, 0}, {1, 0, 0, 1}}};
  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    const Expr q = a[0] * t * t - 2.0 * a[1] * t + a[2];
    return {a[0], q * em3, -a[0] * t + a[1], -a[0] + a[3]};
  });
  m.potential.holo_printed = linear([&](const Coeffs& a) -> ExprVec {
    const Expr q = a[0] * t * t - 2.0 * a[1] * t + a[2];
    return {a[0], q, a[0] * t - u2 * q - a[1], a[3]};
  });
  m.notes.push_back("potential: printed holonomic table is not invariant (A_2 lacks exp(-u3), A_3 garbled); "
                    "asserted table is alpha_b e^b_i from the shifted tetrad, literal table checked in report mode");
}

void build_VIII(GroupModel& m, bool shifted) {
  m.C.set(2, 0, 1, 1.0);
  m.C.set(0, 1, 2, 1.0);
  m.C.set(1, 2, 0, 1.0);

  const Expr s1 = sin(u1), c1 = cos(u1), s2 = sin(u2), c2 = cos(u2);
  m.frame.xi = {{{0, 1, 0, 0},
                 {c2, -s2 * c1 / s1, s2 / s1, 0},
                 {-s2, -c2 * c1 / s1, c2 / s1, 0},
                 {0, 0, 0, 1}}};
  ExprMat dual_rows_i = {{{0, c2, -s2, 0}, {1, 0, 0, 0}, {c1, s2 * s1, c2 * s1, 0}, {0, 0, 0, 1}}};

  const Expr t = shifted ? u3 - u4 : u3;
  const Expr st = sin(t), ct = cos(t);
  m.tetrad.cov = {{{ct, -st, 0, 0}, {s1 * st, s1 * ct, c1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  m.tetrad.con = {{{ct, st / s1, -st * c1 / s1, 0},
                   {-st, ct / s1, -ct * c1 / s1, 0},
                   {0, 0, 1, 0},
                   {0, 0, 0, 1}}};
  m.domain.box[0] = {0.2, std::numbers::pi - 0.2};
  m.domain.excluded = "sin(u1) = 0";
  m.notes.push_back("potential: amplitude/phase constants a1 cos(u3 + a2) linearised as "
                    "alpha1 = a1 cos a2, alpha2 = a1 sin a2");
  m.notes.push_back("potential: printed frame table is garbled and not transcribed");

  if (!shifted) {
    m.frame.dual = transpose(dual_rows_i);
    m.metric_form = MetricForm::kBlockG3;
    m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
      return {a[0] * ct - a[1] * st, s1 * (a[0] * st + a[1] * ct) + a[2] * c1, a[2], a[3]};
    });
    return;
  }

  m.frame.xi[3] = {0, 0, 1, 1};
  dual_rows_i[3] = {-c1, -(s2 * s1), -(c2 * s1), 1};
  m.frame.dual = transpose(dual_rows_i);
  m.tetrad.cov[3] = {0, 0, -1, 1};
  m.tetrad.con[3] = {0, 0, 1, 1};
  m.potential.holo = linear([&](const Coeffs& a) -> ExprVec {
    return {a[0] * ct - a[1] * st, s1 * (a[0] * st + a[1] * ct) + a[2] * c1, a[2], -a[2] + a[3]};
  });
  m.potential.holo_printed = linear([&](const Coeffs& a) -> ExprVec {
    return {a[0] * ct, a[2] * c1 + a[0] * s1 * st, a[2], a[3]};
  });
  m.notes.push_back("potential: printed holonomic table omits the alpha2 terms and the -alpha3 in A_4; "
                    "asserted table is the full alpha_b e^b_i, literal table checked in report mode");
}

double det3(const Mat4& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double det4(const Mat4& m) {
  double d = 0.0;
  for (int c = 0; c < kDim; ++c) {
    Mat4 minor{};
    for (int r = 1; r < kDim; ++r) {
      int cc = 0;
      for (int k = 0; k < kDim; ++k) {
        if (k == c) continue;
        minor[r - 1][cc++] = m[r][k];
      }
    }
    d += ((c % 2 == 0) ? 1.0 : -1.0) * m[0][c] * det3(minor);
  }
  return d;
}

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::string_view group_key(GroupId id) { return name_of(id).key; }
std::string_view group_label(GroupId id) { return name_of(id).label; }

std::optional<GroupId> parse_group(std::string_view key) {
  for (const auto& n : kNames) {
    if (n.key == key) return n.id;
  }
  return std::nullopt;
}

bool is_abelian_family(GroupId id) {
  switch (id) {
    case GroupId::kVI_1:
    case GroupId::kVI_2:
    case GroupId::kVI_3:
    case GroupId::kVI_4_1:
    case GroupId::kVI_4_2:
      return true;
    default:
      return false;
  }
}

Mat4 diagonal(const Vec4& d) {
  Mat4 m{};
  for (int i = 0; i < kDim; ++i) m[i][i] = d[i];
  return m;
}
Mat4 lorentzian_eta() { return diagonal({1.0, -1.0, -1.0, -1.0}); }
Mat4 euclidean_eta() { return diagonal({1.0, 1.0, 1.0, 1.0}); }

void validate_params(GroupId id, const GroupParams& p) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.c) || !finite(p.alpha_angle) || !finite(p.k) || !finite(p.l)) {
    throw InvalidParams("group parameters must be finite");
  }
  for (double a : p.em_alphas) {
    if (!finite(a)) throw InvalidParams("em_alphas must be finite");
  }
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      if (!finite(p.eta[i][j])) throw InvalidParams("eta must be finite");
      if (p.eta[i][j] != p.eta[j][i]) throw InvalidParams("eta must be symmetric");
    }
  if (std::abs(det4(p.eta)) < 1e-12) throw InvalidParams("eta must be nondegenerate");

  switch (id) {
    case GroupId::kI_cne1:
      if (std::abs(p.c - 1.0) < 1e-12) throw InvalidParams("g4-i-cne1 requires c != 1");
      break;
    case GroupId::kIII:
      if (std::abs(std::sin(p.alpha_angle)) < 1e-12) {
        throw InvalidParams("g4-iii requires sin(alpha_angle) != 0");
      }
      break;
    case GroupId::kVI_1:
    case GroupId::kVI_2:
    case GroupId::kVI_3:
    case GroupId::kVI_4_1:
    case GroupId::kVI_4_2:
      if (p.eps01 != 0 && p.eps01 != 1) throw InvalidParams("eps01 must be 0 or 1");
      if (id == GroupId::kVI_4_1 && std::abs(p.k - p.eps01) < 1e-12) {
        throw InvalidParams("g4-vi-4-1 requires k != eps01");
      }
      break;
    default:
      break;
  }
  if (id == GroupId::kVII_a || id == GroupId::kVIII_a) {
    if (std::abs(det3(p.eta)) < 1e-12) throw InvalidParams("upper 3x3 block of eta must be nondegenerate");
  }
}

std::vector<std::string> param_constraints(GroupId id) {
  std::vector<std::string> out{"eta symmetric, det(eta) != 0"};
  switch (id) {
    case GroupId::kI_cne1:
      out.emplace_back("c != 1");
      break;
    case GroupId::kIII:
      out.emplace_back("sin(alpha_angle) != 0");
      break;
    case GroupId::kVI_4_1:
      out.emplace_back("k != eps01");
      [[fallthrough]];
    case GroupId::kVI_1:
    case GroupId::kVI_2:
    case GroupId::kVI_3:
    case GroupId::kVI_4_2:
      out.emplace_back("eps01 in {0, 1}");
      break;
    case GroupId::kVII_a:
    case GroupId::kVIII_a:
      out.emplace_back("upper 3x3 block of eta nondegenerate");
      break;
    default:
      break;
  }
  return out;
}

bool StructureConstants::is_zero() const {
  for (const auto& g : c_)
    for (const auto& a : g)
      for (double v : a)
        if (v != 0.0) return false;
  return true;
}

std::vector<StructureConstants::Entry> StructureConstants::nonzero() const {
  std::vector<Entry> out;
  for (int g = 0; g < kDim; ++g)
    for (int a = 0; a < kDim; ++a)
      for (int b = a + 1; b < kDim; ++b)
        if (c_[g][a][b] != 0.0) out.push_back({g, a, b, c_[g][a][b]});
  return out;
}

std::string_view orientation_name(Orientation o) {
  return o == Orientation::kCovRowsCoordinate ? "cov-rows-coordinate" : "cov-rows-frame";
}

Vec4 LinearPotential::value(const Vec4& alphas, const ChartPoint& u) const {
  Vec4 out{};
  for (int b = 0; b < kDim; ++b) {
    if (alphas[b] == 0.0) continue;
    for (int i = 0; i < kDim; ++i) out[i] += alphas[b] * basis[b][i].value(u);
  }
  return out;
}

std::array<Jet1, kDim> LinearPotential::jet(const Vec4& alphas, const ChartPoint& u) const {
  std::array<Jet1, kDim> out{};
  for (int b = 0; b < kDim; ++b) {
    if (alphas[b] == 0.0) continue;
    for (int i = 0; i < kDim; ++i) out[i] += alphas[b] * basis[b][i].jet(u);
  }
  return out;
}

bool SampleDomain::contains(const ChartPoint& u) const {
  for (int i = 0; i < kDim; ++i) {
    if (!(u[i] >= box[i].first && u[i] <= box[i].second)) return false;
  }
  return true;
}

std::string OrientationDecision::summary() const {
  std::string s;
  switch (status) {
    case Status::kResolved:
      s = "resolved";
      break;
    case Status::kAmbiguous:
      s = "ambiguous";
      break;
    case Status::kFailed:
      s = "failed";
      break;
  }
  s += ": ";
  s += orientation_name(chosen);
  s += " (duality " + format_g(duality_residual[0]) + "/" + format_g(duality_residual[1]) + ", potential " +
       format_g(potential_residual[0]) + "/" + format_g(potential_residual[1]) + ")";
  return s;
}

GroupModel GroupModel::with_alphas(const Vec4& alphas) const {
  GroupModel m = *this;
  m.params.em_alphas = alphas;
  return m;
}

GroupModel GroupModel::with_eta(const Mat4& eta) const {
  GroupParams p = params;
  p.eta = eta;
  validate_params(id, p);
  GroupModel m = *this;
  m.params.eta = eta;
  return m;
}

GroupModel get_group(GroupId id, const GroupParams& params) {
  validate_params(id, params);
  GroupModel m;
  m.id = id;
  m.params = params;
  m.domain = default_box();
  switch (id) {
    case GroupId::kI_cne1:
      build_I_cne1(m);
      break;
    case GroupId::kI_ceq1:
      build_I_ceq1(m);
      break;
    case GroupId::kII:
      build_II(m);
      break;
    case GroupId::kIII:
      build_III(m);
      break;
    case GroupId::kIV:
      build_IV(m);
      break;
    case GroupId::kV:
      build_V(m);
      break;
    case GroupId::kVI_1:
    case GroupId::kVI_2:
    case GroupId::kVI_3:
    case GroupId::kVI_4_1:
    case GroupId::kVI_4_2:
      build_VI(m);
      break;
    case GroupId::kVII_a:
      build_VII(m, false);
      break;
    case GroupId::kVII_b:
      build_VII(m, true);
      break;
    case GroupId::kVIII_a:
      build_VIII(m, false);
      break;
    case GroupId::kVIII_b:
      build_VIII(m, true);
      break;
  }

  m.orientation = orient_tetrad(m);
  m.tetrad.orientation = m.orientation.chosen;
  using Status = OrientationDecision::Status;
  if (m.orientation.status == Status::kAmbiguous) {
    m.notes.push_back("orientation: both orientations pass; kept " +
                      std::string(orientation_name(m.orientation.chosen)));
  } else if (m.orientation.status == Status::kFailed) {
    m.notes.push_back("orientation: neither orientation is consistent with the holonomic table; " +
                      m.orientation.summary());
  }
  return m;
}

std::vector<ChartPoint> sample_points(const SampleDomain& dom, std::size_t n, std::uint64_t seed) {
  std::vector<ChartPoint> out;
  out.reserve(n);
  std::mt19937_64 rng(seed);
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  for (std::size_t k = 0; k < n; ++k) {
    ChartPoint u{};
    for (int i = 0; i < kDim; ++i) {
      const double r = static_cast<double>(rng() >> 11) * kScale;
      const auto [lo, hi] = dom.box[i];
      u[i] = lo + (hi - lo) * r;
    }
    out.push_back(u);
  }
  return out;
}

Vec4 potential(const GroupModel& group, const ChartPoint& u) {
  return group.potential.holo.value(group.params.em_alphas, u);
}

LinearPotential tetrad_potential(const Tetrad& tetrad) {
  LinearPotential p;
  for (int b = 0; b < kDim; ++b)
    for (int i = 0; i < kDim; ++i) p.basis[b][i] = tetrad.cov_at(b, i);
  return p;
}

Vec4 potential_from_tetrad(const GroupModel& group, const ChartPoint& u) {
  return tetrad_potential(group.tetrad).value(group.params.em_alphas, u);
}

std::string_view potential_source_name(PotentialSource s) {
  switch (s) {
    case PotentialSource::kHolonomic:
      return "holonomic";
    case PotentialSource::kTetrad:
      return "tetrad";
    case PotentialSource::kPrintedHolonomic:
      return "printed-holonomic";
  }
  return "?";
}

const LinearPotential* select_potential(const GroupModel& group, PotentialSource source,
                                        LinearPotential& scratch) {
  switch (source) {
    case PotentialSource::kHolonomic:
      return &group.potential.holo;
    case PotentialSource::kTetrad:
      scratch = tetrad_potential(group.tetrad);
      return &scratch;
    case PotentialSource::kPrintedHolonomic:
      return group.potential.holo_printed ? &*group.potential.holo_printed : nullptr;
  }
  return nullptr;
}

OrientationDecision orient_tetrad(const Tetrad& tetrad, const LinearPotential* reference,
                                  std::span<const ChartPoint> points) {
  constexpr double kDualityTol = 1e-12;
  constexpr double kPotentialTol = 1e-10;
  OrientationDecision d;
  std::array<bool, 2> ok{};
  const std::array<Orientation, 2> options = {Orientation::kCovRowsCoordinate, Orientation::kCovRowsFrame};
  for (int o = 0; o < 2; ++o) {
    Tetrad t = tetrad;
    t.orientation = options[o];
    double dual_res = 0.0;
    double pot_res = 0.0;
    for (const auto& u : points) {
      Mat4 cov{}, con{};
      for (int a = 0; a < kDim; ++a)
        for (int i = 0; i < kDim; ++i) {
          cov[a][i] = t.cov_at(a, i).value(u);
          con[a][i] = t.con_at(a, i).value(u);
        }
      for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) {
          double s = 0.0, mag = 0.0;
          for (int i = 0; i < kDim; ++i) {
            s += cov[a][i] * con[b][i];
            mag += std::abs(cov[a][i] * con[b][i]);
          }
          dual_res = std::max(dual_res, std::abs(s - (a == b ? 1.0 : 0.0)) / (1.0 + mag));
        }
      if (reference) {
        for (int b = 0; b < kDim; ++b)
          for (int i = 0; i < kDim; ++i) {
            pot_res = std::max(pot_res, scaled_diff(cov[b][i], reference->basis[b][i].value(u)));
          }
      }
    }
    d.duality_residual[o] = dual_res;
    d.potential_residual[o] = pot_res;
    ok[o] = dual_res <= kDualityTol && (reference == nullptr || pot_res <= kPotentialTol);
  }

  using Status = OrientationDecision::Status;
  if (ok[0] && ok[1]) {
    d.status = Status::kAmbiguous;
    d.chosen = options[0];
  } else if (ok[0] || ok[1]) {
    d.status = Status::kResolved;
    d.chosen = ok[0] ? options[0] : options[1];
  } else {
    d.status = Status::kFailed;
    auto score = [&](int o) { return std::max(d.duality_residual[o], d.potential_residual[o]); };
    d.chosen = score(1) < score(0) ? options[1] : options[0];
  }
  return d;
}

OrientationDecision orient_tetrad(const GroupModel& group) {
  const auto points = sample_points(group.domain, 32, 0x6f7269656e74ULL);
  const LinearPotential* ref = group.potential.holo_asserted ? &group.potential.holo : nullptr;
  return orient_tetrad(group.tetrad, ref, points);
}

}  // namespace g4
