#pragma once

// Charged-particle Hamiltonian H = g^{ij} (p_i + A_i)(p_j + A_j), the linear
// integrals Y_a = xi_a^i p_i, their Poisson algebra, and RK4 trajectories.

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "g4/adiff.hpp"
#include "g4/catalog.hpp"
#include "g4/checks.hpp"

namespace g4 {

struct PhasePoint {
  ChartPoint u{};
  Vec4 p{};
};

/// An observable's value and its gradients in u and p at one phase point.
struct PhaseJet {
  double value = 0.0;
  Vec4 du{};
  Vec4 dp{};
};

/// {f, g} = df/dp_i dg/du^i - df/du^i dg/dp_i.
/// With this ordering {Y_a, Y_b} = [xi_a, xi_b]^i p_i and {p_i, u^j} = delta.
double poisson_bracket(const PhaseJet& f, const PhaseJet& g);
/// The bracket with the scaled-residual magnitude sum of |products|.
double poisson_bracket_magnitude(const PhaseJet& f, const PhaseJet& g);

PhaseJet coordinate_observable(int i, const PhasePoint& s);
PhaseJet momentum_observable(int i, const PhasePoint& s);

PhaseJet hamiltonian_jet(const GroupModel& group, const LinearPotential& potential, const Vec4& alphas,
                         const PhasePoint& s);
/// Uses the model's holonomic potential and em_alphas.
PhaseJet hamiltonian_jet(const GroupModel& group, const PhasePoint& s);
double hamiltonian(const GroupModel& group, const PhasePoint& s);

/// alpha is zero-based.
PhaseJet motion_integral_jet(const GroupModel& group, int alpha, const PhasePoint& s);
double motion_integral(const GroupModel& group, int alpha, const PhasePoint& s);

/// u sampled in the model's domain, p uniform in [-1, 1]^4.
std::vector<PhasePoint> sample_phase_points(const GroupModel& group, std::size_t n, std::uint64_t seed);

/// {Y_a, Y_b} - s C^g_ab Y_g over all pairs and points.
CheckResult check_integral_algebra(const GroupModel& group, const StructureConstants& C, int sign,
                                   std::span<const PhasePoint> points, double tol);
CheckResult check_integral_algebra(const GroupModel& group, int sign, std::span<const PhasePoint> points,
                                   double tol);

/// {H, Y_a} = 0 for each basis potential alpha_b = 1 and for the model's
/// em_alphas; per-configuration residuals in the notes.
CheckResult check_hamiltonian_integrals(const GroupModel& group, const LinearPotential& potential,
                                        std::span<const PhasePoint> points, double tol);

struct Trajectory {
  std::vector<double> t;
  std::vector<PhasePoint> states;
  std::vector<double> H;
  std::vector<Vec4> Y;
  bool domain_exit = false;
  double exit_time = 0.0;  // time of the first step that left the domain
  std::string message;
};

/// Fixed-step RK4 on du/dt = dH/dp, dp/dt = -dH/du from t = 0 to T. The last
/// step is shortened if T is not a multiple of h. Stops at the first step
/// that leaves the model's domain (or fails to evaluate) and flags it.
/// Throws std::invalid_argument unless h > 0 and T > 0.
Trajectory integrate_trajectory(const GroupModel& group, const PhasePoint& state0, double T, double h);

struct DriftStats {
  static constexpr std::array<const char*, 5> kNames = {"H", "Y1", "Y2", "Y3", "Y4"};
  std::array<double, 5> initial{};
  std::array<double, 5> max_abs{};  // max_t |v(t) - v(0)|
  std::array<double, 5> max_rel{};  // max_abs / max(|v(0)|, 1e-300)
  std::size_t steps = 0;
};

/// Throws std::invalid_argument on an empty trajectory.
DriftStats drift_report(const Trajectory& traj);
/// Same, restricted to samples with t <= t_max.
DriftStats drift_report(const Trajectory& traj, double t_max);

/// Header t,u1..u4,p1..p4,H,Y1..Y4; 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace g4
