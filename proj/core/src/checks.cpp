#include "g4/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "g4/geometry.hpp"

namespace g4 {

namespace {

using JetVec = std::array<Jet1, kDim>;

std::string fmt_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult make_result(std::string name, GroupId id, std::size_t n, double tol) {
  CheckResult r;
  r.check_name = std::move(name);
  r.group_id = id;
  r.n_points = n;
  r.tolerance = tol;
  return r;
}

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

Vec4 unit(int b) {
  Vec4 a{};
  a[b] = 1.0;
  return a;
}

bool is_zero_potential(const LinearPotential& p, int b) {
  for (const auto& e : p.basis[b])
    if (!e.is_zero()) return false;
  return true;
}

JetMat4 frame_jet(const ExprMat& m, const ChartPoint& u) { return evaluate_jet(m, u); }

}  // namespace

void ToleranceConfig::validate() const {
  if (!(tol_exact > 0.0) || !(tol_deriv > 0.0) || !(fd_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
}

void CheckResult::finalize() { passed = max_residual <= tolerance; }

void ResidualMax::add(double sum, double magnitude) {
  const double r = std::abs(sum) / (1.0 + std::abs(magnitude));
  if (!std::isfinite(r)) {
    max_ = std::numeric_limits<double>::infinity();
    return;
  }
  max_ = std::max(max_, r);
}

Mat3 expm3(const Mat3& m) {
  double norm = 0.0;
  for (const auto& row : m) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    norm = std::max(norm, s);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  Mat3 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m[i][j] * scale;

  auto mul = [](const Mat3& x, const Mat3& y) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) r[i][j] += x[i][k] * y[k][j];
    return r;
  };

  Mat3 result{};
  Mat3 term{};
  for (int i = 0; i < 3; ++i) result[i][i] = term[i][i] = 1.0;
  for (int n = 1; n <= 24; ++n) {
    term = mul(term, a);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        term[i][j] /= n;
        result[i][j] += term[i][j];
      }
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

// ---------------------------------------------------------------------------

CheckResult check_duality(const FrameField& frame, std::span<const ChartPoint> points, double tol) {
  CheckResult r = make_result("duality", GroupId::kI_cne1, points.size(), tol);
  ResidualMax res;
  for (const auto& u : points) {
    const Mat4 xi = evaluate(frame.xi, u);
    const Mat4 dual = evaluate(frame.dual, u);
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b) {
        double s = -delta(a, b), mag = 0.0;
        for (int i = 0; i < kDim; ++i) {
          s += xi[a][i] * dual[b][i];
          mag += std::abs(xi[a][i] * dual[b][i]);
        }
        res.add(s, mag);
      }
  }
  r.max_residual = res.value();
  r.finalize();
  return r;
}

CheckResult check_duality(const GroupModel& group, std::span<const ChartPoint> points, double tol) {
  CheckResult r = check_duality(group.frame, points, tol);
  r.group_id = group.id;
  return r;
}

CheckResult check_tetrad_duality(const GroupModel& group, std::span<const ChartPoint> points, double tol) {
  CheckResult r = make_result("tetrad_duality", group.id, points.size(), tol);
  ResidualMax res;
  const Tetrad& t = group.tetrad;
  for (const auto& u : points) {
    Mat4 cov{}, con{};
    for (int a = 0; a < kDim; ++a)
      for (int i = 0; i < kDim; ++i) {
        cov[a][i] = t.cov_at(a, i).value(u);
        con[a][i] = t.con_at(a, i).value(u);
      }
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b) {
        double s = -delta(a, b), mag = 0.0;
        for (int i = 0; i < kDim; ++i) {
          s += cov[a][i] * con[b][i];
          mag += std::abs(cov[a][i] * con[b][i]);
        }
        res.add(s, mag);
      }
  }
  r.max_residual = res.value();
  r.notes.push_back("orientation " + group.orientation.summary());
  r.finalize();
  return r;
}

CheckResult check_lie_closure(const FrameField& frame, const StructureConstants& C,
                              std::span<const ChartPoint> points, double tol) {
  CheckResult r = make_result("lie_closure", GroupId::kI_cne1, points.size(), tol);
  std::array<ResidualMax, 2> res;  // s = +1, s = -1
  for (const auto& u : points) {
    const JetMat4 X = frame_jet(frame.xi, u);
    for (int a = 0; a < kDim; ++a)
      for (int b = a + 1; b < kDim; ++b)
        for (int i = 0; i < kDim; ++i) {
          double br = 0.0, mag = 0.0;
          for (int j = 0; j < kDim; ++j) {
            const double t1 = X[a][j].value * X[b][i].grad[j];
            const double t2 = X[b][j].value * X[a][i].grad[j];
            br += t1 - t2;
            mag += std::abs(t1) + std::abs(t2);
          }
          double rhs = 0.0, rmag = 0.0;
          for (int g = 0; g < kDim; ++g) {
            const double t = C.at(g, a, b) * X[g][i].value;
            rhs += t;
            rmag += std::abs(t);
          }
          res[0].add(br - rhs, mag + rmag);
          res[1].add(br + rhs, mag + rmag);
        }
  }
  const int best = res[1].value() < res[0].value() ? 1 : 0;
  r.max_residual = res[best].value();
  r.finalize();
  if (r.passed) {
    r.sign = best == 0 ? 1 : -1;
    r.notes.push_back(std::string("bracket sign s = ") + (r.sign > 0 ? "+1" : "-1"));
  } else {
    r.sign = 0;
    r.notes.push_back("closure failed for both signs (s=+1: " + fmt_residual(res[0].value()) +
                      ", s=-1: " + fmt_residual(res[1].value()) + ")");
  }
  return r;
}

CheckResult check_lie_closure(const GroupModel& group, std::span<const ChartPoint> points, double tol) {
  CheckResult r = check_lie_closure(group.frame, group.C, points, tol);
  r.group_id = group.id;
  return r;
}

CheckResult check_jacobi(const StructureConstants& C, double tol) {
  CheckResult r = make_result("jacobi", GroupId::kI_cne1, 0, tol);
  ResidualMax res;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c)
        for (int n = 0; n < kDim; ++n) {
          double s = 0.0, mag = 0.0;
          for (int m = 0; m < kDim; ++m) {
            const double t1 = C.at(m, a, b) * C.at(n, m, c);
            const double t2 = C.at(m, b, c) * C.at(n, m, a);
            const double t3 = C.at(m, c, a) * C.at(n, m, b);
            s += t1 + t2 + t3;
            mag += std::abs(t1) + std::abs(t2) + std::abs(t3);
          }
          res.add(s, mag);
        }
  r.max_residual = res.value();
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------

CheckResult check_killing(const GroupModel& group, std::span<const ChartPoint> points, double tol) {
  CheckResult r = make_result("killing", group.id, points.size(), tol);
  ResidualMax res;
  for (const auto& u : points) {
    const JetMat4 g = metric_con_jet(group, u);
    const JetMat4 X = frame_jet(group.frame.xi, u);
    for (int a = 0; a < kDim; ++a)
      for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) {
          double s = 0.0, mag = 0.0;
          for (int l = 0; l < kDim; ++l) {
            const double t1 = g[i][l].value * X[a][j].grad[l];
            const double t2 = g[j][l].value * X[a][i].grad[l];
            const double t3 = g[i][j].grad[l] * X[a][l].value;
            s += t1 + t2 - t3;
            mag += std::abs(t1) + std::abs(t2) + std::abs(t3);
          }
          res.add(s, mag);
        }
  }
  r.max_residual = res.value();
  r.finalize();
  return r;
}

CheckResult check_frame_killing(const GroupModel& group, int sign, std::span<const ChartPoint> points,
                                double tol) {
  CheckResult r = make_result("frame_killing", group.id, points.size(), tol);
  r.sign = sign;
  ResidualMax res;
  for (const auto& u : points) {
    const JetMat4 g = metric_con_jet(group, u);
    const JetMat4 D = frame_jet(group.frame.dual, u);
    const JetMat4 X = frame_jet(group.frame.xi, u);
    JetMat4 G{};
    for (int a = 0; a < kDim; ++a)
      for (int b = a; b < kDim; ++b) {
        Jet1 s;
        for (int i = 0; i < kDim; ++i) {
          Jet1 row;
          for (int j = 0; j < kDim; ++j) row += D[b][j] * g[i][j];
          s += D[a][i] * row;
        }
        G[a][b] = s;
        G[b][a] = s;
      }
    for (int a = 0; a < kDim; ++a)
      for (int b = a; b < kDim; ++b)
        for (int c = 0; c < kDim; ++c) {
          double s = 0.0, mag = 0.0;
          for (int i = 0; i < kDim; ++i) {
            const double t = X[c][i].value * G[a][b].grad[i];
            s += t;
            mag += std::abs(t);
          }
          for (int t = 0; t < kDim; ++t) {
            const double t1 = sign * G[a][t].value * group.C.at(b, t, c);
            const double t2 = sign * G[b][t].value * group.C.at(a, t, c);
            s -= t1 + t2;
            mag += std::abs(t1) + std::abs(t2);
          }
          res.add(s, mag);
        }
  }
  r.max_residual = res.value();
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------

CheckResult check_admissibility(const GroupModel& group, const LinearPotential& potential,
                                std::span<const ChartPoint> points, double tol) {
  CheckResult r = make_result("admissibility", group.id, points.size(), tol);
  std::array<ResidualMax, kDim> per_basis;
  for (const auto& u : points) {
    const JetMat4 X = frame_jet(group.frame.xi, u);
    for (int b = 0; b < kDim; ++b) {
      if (is_zero_potential(potential, b)) continue;
      const JetVec A = potential.jet(unit(b), u);
      for (int a = 0; a < kDim; ++a)
        for (int i = 0; i < kDim; ++i) {
          double s = 0.0, mag = 0.0;
          for (int j = 0; j < kDim; ++j) {
            // (xi^j A_j),i
            const double l1 = X[a][j].grad[i] * A[j].value;
            const double l2 = X[a][j].value * A[j].grad[i];
            // xi^j F_ij
            const double f1 = X[a][j].value * A[j].grad[i];
            const double f2 = X[a][j].value * A[i].grad[j];
            s += (l1 + l2) - (f1 - f2);
            mag += std::abs(l1) + std::abs(l2) + std::abs(f1) + std::abs(f2);
          }
          per_basis[b].add(s, mag);
        }
    }
  }
  for (int b = 0; b < kDim; ++b) {
    r.max_residual = std::max(r.max_residual, per_basis[b].value());
    if (per_basis[b].value() > tol) {
      r.notes.push_back("alpha" + std::to_string(b + 1) + ": residual " + fmt_residual(per_basis[b].value()));
    }
  }
  r.finalize();
  return r;
}

CheckResult check_admissibility(const GroupModel& group, PotentialSource source,
                                std::span<const ChartPoint> points, double tol) {
  LinearPotential scratch;
  const LinearPotential* p = select_potential(group, source, scratch);
  if (!p) throw std::invalid_argument("potential source not available for this group");
  CheckResult r = check_admissibility(group, *p, points, tol);
  r.variant = "source=" + std::string(potential_source_name(source));
  return r;
}

std::string_view frame_source_name(FrameSource s) {
  return s == FrameSource::kDerived ? "derived" : "printed";
}

LinearPotential admissible_potential(const GroupModel& group) {
  return group.potential.holo_asserted ? group.potential.holo : tetrad_potential(group.tetrad);
}

LinearPotential frame_components(const FrameField& frame, const LinearPotential& holo) {
  LinearPotential out;
  for (int b = 0; b < kDim; ++b)
    for (int a = 0; a < kDim; ++a) {
      Expr s(0.0);
      for (int i = 0; i < kDim; ++i) s = s + frame.xi[a][i] * holo.basis[b][i];
      out.basis[b][a] = s;
    }
  return out;
}

CheckResult check_frame_defining(const FrameField& frame, const StructureConstants& C,
                                 const LinearPotential& frame_potential, int sign,
                                 std::span<const ChartPoint> points, double tol) {
  CheckResult r = make_result("frame_defining", GroupId::kI_cne1, points.size(), tol);
  r.sign = sign;
  // [b][a]: basis constant alpha_b, frame component A_a.
  std::array<std::array<ResidualMax, kDim>, kDim> per;
  for (const auto& u : points) {
    const JetMat4 X = frame_jet(frame.xi, u);
    for (int b = 0; b < kDim; ++b) {
      if (is_zero_potential(frame_potential, b)) continue;
      const JetVec A = frame_potential.jet(unit(b), u);
      for (int a = 0; a < kDim; ++a)
        for (int c = 0; c < kDim; ++c) {
          double s = 0.0, mag = 0.0;
          for (int i = 0; i < kDim; ++i) {
            const double t = X[c][i].value * A[a].grad[i];
            s += t;
            mag += std::abs(t);
          }
          for (int g = 0; g < kDim; ++g) {
            const double t = sign * C.at(g, c, a) * A[g].value;
            s -= t;
            mag += std::abs(t);
          }
          per[b][a].add(s, mag);
        }
    }
  }
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      const double v = per[b][a].value();
      r.max_residual = std::max(r.max_residual, v);
      if (v > tol) {
        r.notes.push_back("A_" + std::to_string(a + 1) + " (alpha" + std::to_string(b + 1) +
                          "): residual " + fmt_residual(v));
      }
    }
  r.finalize();
  return r;
}

CheckResult check_frame_defining(const GroupModel& group, FrameSource source, int sign,
                                 std::span<const ChartPoint> points, double tol) {
  LinearPotential fp;
  if (source == FrameSource::kDerived) {
    fp = frame_components(group.frame, admissible_potential(group));
  } else {
    if (!group.potential.frame_printed) throw std::invalid_argument("no printed frame table for this group");
    fp = *group.potential.frame_printed;
  }
  CheckResult r = check_frame_defining(group.frame, group.C, fp, sign, points, tol);
  r.group_id = group.id;
  r.variant = "frame=" + std::string(frame_source_name(source));
  return r;
}

CheckResult check_frame_table_consistency(const GroupModel& group, std::span<const ChartPoint> points,
                                          double tol) {
  if (!group.potential.frame_printed) throw std::invalid_argument("no printed frame table for this group");
  CheckResult r = make_result("frame_table_consistency", group.id, points.size(), tol);
  const LinearPotential derived = frame_components(group.frame, group.potential.holo);
  const LinearPotential& printed = *group.potential.frame_printed;
  std::array<std::array<ResidualMax, kDim>, kDim> per;
  for (const auto& u : points)
    for (int b = 0; b < kDim; ++b)
      for (int a = 0; a < kDim; ++a) {
        const double x = printed.basis[b][a].value(u);
        const double y = derived.basis[b][a].value(u);
        per[b][a].add(x - y, std::abs(x) + std::abs(y));
      }
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      const double v = per[b][a].value();
      r.max_residual = std::max(r.max_residual, v);
      if (v > tol) {
        r.notes.push_back("A_" + std::to_string(a + 1) + " (alpha" + std::to_string(b + 1) +
                          "): printed differs from xi_a^i A_i by " + fmt_residual(v));
      }
    }
  r.finalize();
  return r;
}

CheckResult check_zero_field(const LinearPotential& potential, const Vec4& alphas,
                             std::span<const ChartPoint> points, double tol) {
  CheckResult r = make_result("zero_field", GroupId::kI_cne1, points.size(), tol);
  ResidualMax res;
  for (const auto& u : points) {
    const JetVec A = potential.jet(alphas, u);
    for (int i = 0; i < kDim; ++i)
      for (int j = i + 1; j < kDim; ++j) {
        res.add(A[j].grad[i] - A[i].grad[j], std::abs(A[j].grad[i]) + std::abs(A[i].grad[j]));
      }
  }
  r.max_residual = res.value();
  r.finalize();
  return r;
}

namespace {

// A from the numeric exponential: returns values and gradients.
JetVec reduced_abelian_potential(const Mat3& C, const Vec4& alphas, const ChartPoint& u) {
  Mat3 m{};
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) m[p][q] = -C[p][q] * u[3];
  const Mat3 M = expm3(m);
  std::array<double, 3> A{}, dA{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) A[a] += M[a][b] * alphas[b];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) dA[a] -= C[a][b] * A[b];

  JetVec out{};
  for (int a = 0; a < 3; ++a) out[a] = Jet1(A[a], {0.0, 0.0, 0.0, dA[a]});
  double a4 = 0.0, d4 = 0.0;
  Vec4 g{};
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      a4 -= u[p] * C[p][q] * A[q];
      d4 -= u[p] * C[p][q] * dA[q];
      g[p] -= C[p][q] * A[q];
    }
  g[3] = d4;
  out[3] = Jet1(a4, g);
  return out;
}

}  // namespace

CheckResult check_abelian_zero_field(const Mat3& C, const Vec4& alphas, std::span<const ChartPoint> points,
                                     double tol) {
  CheckResult r = make_result("abelian_zero_field", GroupId::kVI_1, points.size(), tol);
  ResidualMax res;
  for (const auto& u : points) {
    const JetVec A = reduced_abelian_potential(C, alphas, u);
    for (int i = 0; i < kDim; ++i)
      for (int j = i + 1; j < kDim; ++j) {
        res.add(A[j].grad[i] - A[i].grad[j], std::abs(A[j].grad[i]) + std::abs(A[i].grad[j]));
      }
  }
  r.max_residual = res.value();
  r.finalize();
  return r;
}

Mat3 abelian_block(const StructureConstants& C) {
  Mat3 m{};
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) m[p][q] = C.at(q, p, 3);
  return m;
}

CheckResult check_abelian_zero_field(const GroupModel& group, std::span<const ChartPoint> points, double tol) {
  if (!is_abelian_family(group.id)) throw std::invalid_argument("abelian_zero_field applies to G4(VI) only");
  const Mat3 C = abelian_block(group.C);
  const Vec4& alphas = group.params.em_alphas;
  CheckResult r = check_abelian_zero_field(C, alphas, points, tol);
  r.group_id = group.id;

  const CheckResult closed = check_zero_field(group.potential.holo, alphas, points, tol);
  ResidualMax agree;
  for (const auto& u : points) {
    const JetVec num = reduced_abelian_potential(C, alphas, u);
    const Vec4 cf = group.potential.holo.value(alphas, u);
    for (int i = 0; i < kDim; ++i) agree.add(cf[i] - num[i].value, std::abs(cf[i]) + std::abs(num[i].value));
  }
  r.notes.push_back("numeric exponential F residual " + fmt_residual(r.max_residual));
  r.notes.push_back("closed-form F residual " + fmt_residual(closed.max_residual));
  r.notes.push_back("closed form vs numeric exponential " + fmt_residual(agree.value()));
  r.max_residual = std::max({r.max_residual, closed.max_residual, agree.value()});
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------

CheckResult check_gradient_oracle(const GroupModel& group, std::span<const ChartPoint> points, double tol,
                                  double h) {
  CheckResult r = make_result("gradient_oracle", group.id, points.size(), tol);
  std::vector<const Expr*> fields;
  auto add_mat = [&](const ExprMat& m) {
    for (const auto& row : m)
      for (const auto& e : row)
        if (!e.is_constant()) fields.push_back(&e);
  };
  auto add_pot = [&](const LinearPotential& p) {
    for (const auto& v : p.basis)
      for (const auto& e : v)
        if (!e.is_constant()) fields.push_back(&e);
  };
  add_mat(group.frame.xi);
  add_mat(group.frame.dual);
  add_mat(group.tetrad.cov);
  add_mat(group.tetrad.con);
  add_pot(group.potential.holo);
  if (group.potential.holo_printed) add_pot(*group.potential.holo_printed);
  if (group.potential.frame_printed) add_pot(*group.potential.frame_printed);

  // max over components of |ad - fd| / (1 + |fd|), i.e. the mixed test with atol = rtol
  double worst = 0.0;
  auto compare = [&](const Vec4& ad, const Vec4& fd) {
    for (int k = 0; k < kDim; ++k) {
      const double v = std::abs(ad[k] - fd[k]) / (1.0 + std::abs(fd[k]));
      worst = std::isfinite(v) ? std::max(worst, v) : std::numeric_limits<double>::infinity();
    }
  };
  for (const auto& u : points) {
    for (const Expr* f : fields) compare(f->jet(u).grad, finite_diff_gradient(*f, u, h));

    const JetMat4 g = metric_con_jet(group, u);
    std::array<Mat4, kDim> plus{}, minus{};
    for (int k = 0; k < kDim; ++k) {
      ChartPoint up = u, um = u;
      up[k] += h;
      um[k] -= h;
      plus[k] = metric_at(group, up).g_con;
      minus[k] = metric_at(group, um).g_con;
    }
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        Vec4 fd{};
        for (int k = 0; k < kDim; ++k) fd[k] = (plus[k][i][j] - minus[k][i][j]) / (2.0 * h);
        compare(g[i][j].grad, fd);
      }
  }
  r.max_residual = worst;
  r.notes.push_back(std::to_string(fields.size()) + " closed-form fields plus g^{ij}");
  r.finalize();
  return r;
}

}  // namespace g4
