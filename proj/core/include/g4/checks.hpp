#pragma once

// Residual checks for every identity asserted about the catalog. Each check
// returns the max over indices and points of |sum of terms| / (1 + sum of
// |terms|), compared against a tolerance.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "g4/adiff.hpp"
#include "g4/catalog.hpp"

namespace g4 {

struct ToleranceConfig {
  double tol_exact = 1e-12;  // algebraic identities
  double tol_deriv = 1e-9;   // identities involving derivatives
  double fd_tol = 1e-6;      // AD vs finite differences

  /// Throws std::invalid_argument unless all tolerances are positive.
  void validate() const;
};

/// Asserted checks decide pass/fail of a run; report-mode checks only surface.
enum class CheckMode { kAsserted, kReport };

struct CheckResult {
  std::string check_name;
  GroupId group_id = GroupId::kI_cne1;
  std::string variant;  // e.g. "eta=euclidean", "source=tetrad"
  std::size_t n_points = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  CheckMode mode = CheckMode::kAsserted;
  int sign = 0;  // bracket sign s, where relevant
  std::vector<std::string> notes;

  /// Sets passed from max_residual and tolerance.
  void finalize();
};

/// Running max of scaled residuals. NaN or inf counts as an infinite residual.
class ResidualMax {
 public:
  void add(double sum, double magnitude);
  double value() const { return max_; }

 private:
  double max_ = 0.0;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

/// exp(m) by scaling and squaring with a Taylor kernel.
Mat3 expm3(const Mat3& m);

// Frame algebra -------------------------------------------------------------

CheckResult check_duality(const FrameField& frame, std::span<const ChartPoint> points, double tol);
CheckResult check_duality(const GroupModel& group, std::span<const ChartPoint> points, double tol);
/// e^a_i e_b^i = delta under the tetrad's orientation.
CheckResult check_tetrad_duality(const GroupModel& group, std::span<const ChartPoint> points, double tol);

/// Finds s in {+1, -1} with [xi_a, xi_b] = s C^g_ab xi_g for all pairs. On
/// success `sign` holds s; when neither sign closes the result fails with
/// sign = 0 and a note.
CheckResult check_lie_closure(const FrameField& frame, const StructureConstants& C,
                              std::span<const ChartPoint> points, double tol);
CheckResult check_lie_closure(const GroupModel& group, std::span<const ChartPoint> points, double tol);

CheckResult check_jacobi(const StructureConstants& C, double tol);

// Killing equations -----------------------------------------------------------

/// g^{il} d_l xi^j + g^{jl} d_l xi^i - d_l g^{ij} xi^l = 0 for each xi_a.
CheckResult check_killing(const GroupModel& group, std::span<const ChartPoint> points, double tol);

/// G^{ab}|c = s (G^{at} C^b_tc + G^{bt} C^a_tc), with |c = xi_c^i d_i.
CheckResult check_frame_killing(const GroupModel& group, int sign, std::span<const ChartPoint> points,
                                double tol);

// Potentials -------------------------------------------------------------------

/// (xi_a^j A_j),i = xi_a^j F_ij for each basis potential alpha_b = 1.
/// Per-basis residuals are recorded in the notes.
CheckResult check_admissibility(const GroupModel& group, const LinearPotential& potential,
                                std::span<const ChartPoint> points, double tol);
CheckResult check_admissibility(const GroupModel& group, PotentialSource source,
                                std::span<const ChartPoint> points, double tol);

enum class FrameSource {
  kDerived,  // xi_a^i A_i from the admissible holonomic potential
  kPrinted,  // transcribed frame table
};
std::string_view frame_source_name(FrameSource s);

/// The admissible holonomic potential: the holonomic table when asserted,
/// otherwise alpha_b e^b_i.
LinearPotential admissible_potential(const GroupModel& group);
/// A_a = xi_a^i A_i as a linear family.
LinearPotential frame_components(const FrameField& frame, const LinearPotential& holo);

/// A_a|b = s C^g_ba A_g, basis-wise; per-component residuals in the notes.
CheckResult check_frame_defining(const FrameField& frame, const StructureConstants& C,
                                 const LinearPotential& frame_potential, int sign,
                                 std::span<const ChartPoint> points, double tol);
CheckResult check_frame_defining(const GroupModel& group, FrameSource source, int sign,
                                 std::span<const ChartPoint> points, double tol);

/// Printed frame table vs xi_a^i A_i of the holonomic table, per component.
CheckResult check_frame_table_consistency(const GroupModel& group, std::span<const ChartPoint> points,
                                          double tol);

/// F_ij of the given potential with the given constants vanishes.
CheckResult check_zero_field(const LinearPotential& potential, const Vec4& alphas,
                             std::span<const ChartPoint> points, double tol);

/// Builds A_a = [exp(-C u4) alpha]_a, A_4 = -C_p^q u^p A_q from the numeric
/// matrix exponential (derivatives from the defining ODE) and checks F = 0.
CheckResult check_abelian_zero_field(const Mat3& C, const Vec4& alphas, std::span<const ChartPoint> points,
                                     double tol);
/// The above for a G4(VI) model, plus F = 0 of the catalog's closed form and
/// agreement of the closed form with the numeric exponential.
CheckResult check_abelian_zero_field(const GroupModel& group, std::span<const ChartPoint> points, double tol);

/// C_p^q of a G4(VI) model, read from C^q_{p4}.
Mat3 abelian_block(const StructureConstants& C);

// Oracle -----------------------------------------------------------------------

/// Every field of the model (frames, tetrad, potentials, metric g^{ij})
/// differentiated by AD and by central differences with step h.
CheckResult check_gradient_oracle(const GroupModel& group, std::span<const ChartPoint> points, double tol,
                                  double h = 1e-5);

}  // namespace g4
