#include "g4/mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "g4/geometry.hpp"

namespace g4 {

namespace {

std::string fmt_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool all_finite(const PhasePoint& s) {
  for (int i = 0; i < kDim; ++i)
    if (!std::isfinite(s.u[i]) || !std::isfinite(s.p[i])) return false;
  return true;
}

}  // namespace

double poisson_bracket(const PhaseJet& f, const PhaseJet& g) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i) s += f.dp[i] * g.du[i] - f.du[i] * g.dp[i];
  return s;
}

double poisson_bracket_magnitude(const PhaseJet& f, const PhaseJet& g) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i) s += std::abs(f.dp[i] * g.du[i]) + std::abs(f.du[i] * g.dp[i]);
  return s;
}

PhaseJet coordinate_observable(int i, const PhasePoint& s) {
  PhaseJet j;
  j.value = s.u[i];
  j.du[i] = 1.0;
  return j;
}

PhaseJet momentum_observable(int i, const PhasePoint& s) {
  PhaseJet j;
  j.value = s.p[i];
  j.dp[i] = 1.0;
  return j;
}

PhaseJet hamiltonian_jet(const GroupModel& group, const LinearPotential& potential, const Vec4& alphas,
                         const PhasePoint& s) {
  const JetMat4 g = metric_con_jet(group, s.u);
  std::array<Jet1, kDim> P = potential.jet(alphas, s.u);
  for (int i = 0; i < kDim; ++i) P[i] += Jet1(s.p[i]);

  Jet1 H;
  PhaseJet out;
  for (int i = 0; i < kDim; ++i) {
    Jet1 gp;
    for (int j = 0; j < kDim; ++j) gp += g[i][j] * P[j];
    H += P[i] * gp;
    double dp = 0.0;
    for (int j = 0; j < kDim; ++j) dp += g[i][j].value * P[j].value;
    out.dp[i] = 2.0 * dp;
  }
  out.value = H.value;
  out.du = H.grad;
  return out;
}

PhaseJet hamiltonian_jet(const GroupModel& group, const PhasePoint& s) {
  return hamiltonian_jet(group, group.potential.holo, group.params.em_alphas, s);
}

double hamiltonian(const GroupModel& group, const PhasePoint& s) { return hamiltonian_jet(group, s).value; }

PhaseJet motion_integral_jet(const GroupModel& group, int alpha, const PhasePoint& s) {
  if (alpha < 0 || alpha >= kDim) throw std::out_of_range("motion integral index");
  PhaseJet out;
  for (int i = 0; i < kDim; ++i) {
    const Jet1 x = group.frame.xi[alpha][i].jet(s.u);
    out.value += x.value * s.p[i];
    out.dp[i] = x.value;
    for (int l = 0; l < kDim; ++l) out.du[l] += x.grad[l] * s.p[i];
  }
  return out;
}

double motion_integral(const GroupModel& group, int alpha, const PhasePoint& s) {
  double v = 0.0;
  for (int i = 0; i < kDim; ++i) v += group.frame.xi[alpha][i].value(s.u) * s.p[i];
  return v;
}

std::vector<PhasePoint> sample_phase_points(const GroupModel& group, std::size_t n, std::uint64_t seed) {
  const auto us = sample_points(group.domain, n, seed);
  SampleDomain momenta;
  momenta.box.fill({-1.0, 1.0});
  const auto ps = sample_points(momenta, n, seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<PhasePoint> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = {us[k], ps[k]};
  return out;
}

CheckResult check_integral_algebra(const GroupModel& group, const StructureConstants& C, int sign,
                                   std::span<const PhasePoint> points, double tol) {
  CheckResult r;
  r.check_name = "integral_algebra";
  r.group_id = group.id;
  r.n_points = points.size();
  r.tolerance = tol;
  r.sign = sign;
  ResidualMax res;
  for (const auto& s : points) {
    std::array<PhaseJet, kDim> Y;
    for (int a = 0; a < kDim; ++a) Y[a] = motion_integral_jet(group, a, s);
    for (int a = 0; a < kDim; ++a)
      for (int b = a + 1; b < kDim; ++b) {
        double v = poisson_bracket(Y[a], Y[b]);
        double mag = poisson_bracket_magnitude(Y[a], Y[b]);
        for (int g = 0; g < kDim; ++g) {
          const double t = sign * C.at(g, a, b) * Y[g].value;
          v -= t;
          mag += std::abs(t);
        }
        res.add(v, mag);
      }
  }
  r.max_residual = res.value();
  r.finalize();
  return r;
}

CheckResult check_integral_algebra(const GroupModel& group, int sign, std::span<const PhasePoint> points,
                                   double tol) {
  return check_integral_algebra(group, group.C, sign, points, tol);
}

CheckResult check_hamiltonian_integrals(const GroupModel& group, const LinearPotential& potential,
                                        std::span<const PhasePoint> points, double tol) {
  CheckResult r;
  r.check_name = "hamiltonian_integrals";
  r.group_id = group.id;
  r.n_points = points.size();
  r.tolerance = tol;

  std::vector<std::pair<std::string, Vec4>> configs;
  for (int b = 0; b < kDim; ++b) {
    Vec4 a{};
    a[b] = 1.0;
    configs.emplace_back("alpha" + std::to_string(b + 1), a);
  }
  configs.emplace_back("em_alphas", group.params.em_alphas);

  for (const auto& [name, alphas] : configs) {
    ResidualMax res;
    for (const auto& s : points) {
      const PhaseJet H = hamiltonian_jet(group, potential, alphas, s);
      for (int a = 0; a < kDim; ++a) {
        const PhaseJet Y = motion_integral_jet(group, a, s);
        res.add(poisson_bracket(H, Y), poisson_bracket_magnitude(H, Y));
      }
    }
    r.max_residual = std::max(r.max_residual, res.value());
    if (res.value() > tol) r.notes.push_back(name + ": residual " + fmt_residual(res.value()));
  }
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Derivative {
  Vec4 du{};
  Vec4 dp{};
};

Derivative hamilton_rhs(const GroupModel& group, const PhasePoint& s) {
  const PhaseJet H = hamiltonian_jet(group, s);
  Derivative d;
  for (int i = 0; i < kDim; ++i) {
    d.du[i] = H.dp[i];
    d.dp[i] = -H.du[i];
  }
  return d;
}

PhasePoint advance(const PhasePoint& s, const Derivative& d, double h) {
  PhasePoint r = s;
  for (int i = 0; i < kDim; ++i) {
    r.u[i] += h * d.du[i];
    r.p[i] += h * d.dp[i];
  }
  return r;
}

PhasePoint rk4_step(const GroupModel& group, const PhasePoint& s, double h) {
  const Derivative k1 = hamilton_rhs(group, s);
  const Derivative k2 = hamilton_rhs(group, advance(s, k1, 0.5 * h));
  const Derivative k3 = hamilton_rhs(group, advance(s, k2, 0.5 * h));
  const Derivative k4 = hamilton_rhs(group, advance(s, k3, h));
  PhasePoint r = s;
  for (int i = 0; i < kDim; ++i) {
    r.u[i] += h / 6.0 * (k1.du[i] + 2.0 * k2.du[i] + 2.0 * k3.du[i] + k4.du[i]);
    r.p[i] += h / 6.0 * (k1.dp[i] + 2.0 * k2.dp[i] + 2.0 * k3.dp[i] + k4.dp[i]);
  }
  return r;
}

void record(const GroupModel& group, Trajectory& traj, double t, const PhasePoint& s) {
  Vec4 Y{};
  for (int a = 0; a < kDim; ++a) Y[a] = motion_integral(group, a, s);
  const double H = hamiltonian(group, s);
  traj.t.push_back(t);
  traj.states.push_back(s);
  traj.H.push_back(H);
  traj.Y.push_back(Y);
}

}  // namespace

Trajectory integrate_trajectory(const GroupModel& group, const PhasePoint& state0, double T, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step h must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("horizon T must be positive");
  if (!group.domain.contains(state0.u)) throw std::invalid_argument("initial point outside the domain");

  Trajectory traj;
  record(group, traj, 0.0, state0);

  auto steps = static_cast<std::size_t>(std::floor(T / h));
  if (static_cast<double>(steps) * h < T * (1.0 - 1e-12)) ++steps;

  PhasePoint s = state0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * h;
    const double t_next = k == steps ? T : static_cast<double>(k) * h;
    PhasePoint next;
    try {
      next = rk4_step(group, s, t_next - t_prev);
    } catch (const DomainError& e) {
      traj.domain_exit = true;
      traj.exit_time = t_next;
      traj.message = e.what();
      break;
    }
    if (!all_finite(next) || !group.domain.contains(next.u)) {
      traj.domain_exit = true;
      traj.exit_time = t_next;
      traj.message = "trajectory left the sampling domain";
      break;
    }
    s = next;
    record(group, traj, t_next, s);
  }
  return traj;
}

DriftStats drift_report(const Trajectory& traj, double t_max) {
  if (traj.t.empty()) throw std::invalid_argument("empty trajectory");
  DriftStats d;
  auto values = [&](std::size_t k) {
    return std::array<double, 5>{traj.H[k], traj.Y[k][0], traj.Y[k][1], traj.Y[k][2], traj.Y[k][3]};
  };
  d.initial = values(0);
  for (std::size_t k = 0; k < traj.t.size() && traj.t[k] <= t_max; ++k) {
    const auto v = values(k);
    for (std::size_t q = 0; q < v.size(); ++q) d.max_abs[q] = std::max(d.max_abs[q], std::abs(v[q] - d.initial[q]));
    ++d.steps;
  }
  for (std::size_t q = 0; q < d.initial.size(); ++q) {
    d.max_rel[q] = d.max_abs[q] / std::max(std::abs(d.initial[q]), 1e-300);
  }
  return d;
}

DriftStats drift_report(const Trajectory& traj) {
  if (traj.t.empty()) throw std::invalid_argument("empty trajectory");
  return drift_report(traj, traj.t.back());
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,u1,u2,u3,u4,p1,p2,p3,p4,H,Y1,Y2,Y3,Y4\n";
  char buf[32];
  auto put = [&](double v, bool last) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << (last ? '\n' : ',');
  };
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    put(traj.t[k], false);
    for (double v : traj.states[k].u) put(v, false);
    for (double v : traj.states[k].p) put(v, false);
    put(traj.H[k], false);
    for (int a = 0; a < kDim; ++a) put(traj.Y[k][a], a == kDim - 1);
  }
}

}  // namespace g4
