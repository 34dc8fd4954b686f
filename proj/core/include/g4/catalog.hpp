#pragma once

// Spacetimes with simply transitive four-parameter motion groups G4, the
// Killing frames of those groups, left-invariant tetrads, and the admissible
// electromagnetic potentials, as closed-form fields on a coordinate chart.

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g4/adiff.hpp"

namespace g4 {

enum class GroupId {
  kI_cne1,
  kI_ceq1,
  kII,
  kIII,
  kIV,
  kV,
  kVI_1,
  kVI_2,
  kVI_3,
  kVI_4_1,
  kVI_4_2,
  kVII_a,
  kVII_b,
  kVIII_a,
  kVIII_b,
};

inline constexpr std::array<GroupId, 15> kAllGroups = {
    GroupId::kI_cne1, GroupId::kI_ceq1, GroupId::kII,    GroupId::kIII,    GroupId::kIV,
    GroupId::kV,      GroupId::kVI_1,   GroupId::kVI_2,  GroupId::kVI_3,   GroupId::kVI_4_1,
    GroupId::kVI_4_2, GroupId::kVII_a,  GroupId::kVII_b, GroupId::kVIII_a, GroupId::kVIII_b,
};

/// Command-line key, e.g. "g4-viii-a".
std::string_view group_key(GroupId id);
/// Human label, e.g. "G4(VIII) X4=p4".
std::string_view group_label(GroupId id);
std::optional<GroupId> parse_group(std::string_view key);
/// The five groups with a three-parameter Abelian subgroup.
bool is_abelian_family(GroupId id);

class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Mat4 diagonal(const Vec4& d);
Mat4 lorentzian_eta();  // diag(1,-1,-1,-1)
Mat4 euclidean_eta();   // diag(1,1,1,1)

struct GroupParams {
  double c = 2.0;                                  // G4(I) c != 1
  double alpha_angle = std::numbers::pi / 3.0;     // G4(III), sin != 0
  double k = 2.0;                                  // G4(VI)
  double l = 3.0;                                  // G4(VI)
  int eps01 = 1;                                   // G4(VI), 0 or 1
  Vec4 em_alphas{1.0, 1.0, 1.0, 1.0};              // potential constants
  Mat4 eta = lorentzian_eta();                     // constant frame metric eta_{ab}
};

/// Throws InvalidParams when the per-group constraints are violated.
void validate_params(GroupId id, const GroupParams& params);
/// Human-readable constraint list for catalog dumps.
std::vector<std::string> param_constraints(GroupId id);

/// C^g_{ab}, zero-based: at(g, a, b). Antisymmetric in (a, b) by construction.
class StructureConstants {
 public:
  double at(int g, int a, int b) const { return c_[g][a][b]; }
  /// Sets C^g_{ab} = v and C^g_{ba} = -v.
  void set(int g, int a, int b, double v) {
    c_[g][a][b] = v;
    c_[g][b][a] = -v;
  }
  bool is_zero() const;

  struct Entry {
    int g, a, b;  // zero-based, a < b
    double value;
  };
  /// Nonzero entries with a < b, in lexicographic (g, a, b) order.
  std::vector<Entry> nonzero() const;

 private:
  std::array<std::array<std::array<double, kDim>, kDim>, kDim> c_{};
};

/// Killing frame. xi[a][i] = xi_a^i (row a is the a-th Killing vector);
/// dual[a][i] = xi^a_i with xi_a^i xi^b_i = delta_a^b.
struct FrameField {
  ExprMat xi;
  ExprMat dual;
};

/// Which index the rows of the covector matrix run over. The vector matrix
/// always uses the other convention so the two stay mutually inverse.
enum class Orientation {
  kCovRowsCoordinate,  // e^a_i = cov[i][a], e_a^i = con[a][i]
  kCovRowsFrame,       // e^a_i = cov[a][i], e_a^i = con[i][a]
};

std::string_view orientation_name(Orientation o);

struct Tetrad {
  ExprMat cov;  // as transcribed
  ExprMat con;  // as transcribed
  Orientation orientation = Orientation::kCovRowsCoordinate;
  bool printed = true;  // false when constructed rather than transcribed

  /// e^a_i under the current orientation.
  const Expr& cov_at(int a, int i) const {
    return orientation == Orientation::kCovRowsCoordinate ? cov[i][a] : cov[a][i];
  }
  /// e_a^i under the current orientation.
  const Expr& con_at(int a, int i) const {
    return orientation == Orientation::kCovRowsCoordinate ? con[a][i] : con[i][a];
  }
};

/// kBlockG3: g^{ij} = delta_4^i delta_4^j + sum_{a,b<=3} e_a^i e_b^j eta^{ab}.
enum class MetricForm { kTetrad, kBlockG3 };

/// A potential linear in the four constants alpha_1..alpha_4:
/// A_i(u; alpha) = sum_b alpha_b basis[b][i](u).
struct LinearPotential {
  std::array<ExprVec, kDim> basis;

  Vec4 value(const Vec4& alphas, const ChartPoint& u) const;
  std::array<Jet1, kDim> jet(const Vec4& alphas, const ChartPoint& u) const;
};

struct PotentialSpec {
  /// Holonomic table A_i; potential() evaluates this.
  LinearPotential holo;
  /// Whether holo is expected to satisfy the admissibility equations.
  bool holo_asserted = true;
  /// Literal transcription of a printed holonomic table that had to be
  /// corrected to obtain `holo`; checked in report mode only.
  std::optional<LinearPotential> holo_printed;
  /// Printed frame components A_a; checked in report mode only.
  std::optional<LinearPotential> frame_printed;
};

struct SampleDomain {
  std::array<std::pair<double, double>, kDim> box{};
  std::string excluded;  // description of the excluded locus, if any

  bool contains(const ChartPoint& u) const;
};

struct OrientationDecision {
  enum class Status { kResolved, kAmbiguous, kFailed };
  Status status = Status::kFailed;
  Orientation chosen = Orientation::kCovRowsCoordinate;
  // Index 0: kCovRowsCoordinate, 1: kCovRowsFrame.
  std::array<double, 2> duality_residual{};
  std::array<double, 2> potential_residual{};

  std::string summary() const;
};

struct GroupModel {
  GroupId id = GroupId::kI_cne1;
  GroupParams params;
  StructureConstants C;
  FrameField frame;
  Tetrad tetrad;
  MetricForm metric_form = MetricForm::kTetrad;
  PotentialSpec potential;
  SampleDomain domain;
  OrientationDecision orientation;
  /// Corrections applied while transcribing, and known inconsistencies.
  std::vector<std::string> notes;

  GroupModel with_alphas(const Vec4& alphas) const;
  GroupModel with_eta(const Mat4& eta) const;
};

/// Builds a fully populated, orientation-resolved model. Throws InvalidParams.
GroupModel get_group(GroupId id, const GroupParams& params = {});

/// Deterministic uniform samples inside the box. n == 0 gives an empty list.
std::vector<ChartPoint> sample_points(const SampleDomain& dom, std::size_t n, std::uint64_t seed);

/// Holonomic potential A_i at u for the model's em_alphas.
Vec4 potential(const GroupModel& group, const ChartPoint& u);
/// alpha_b e^b_i at u under the model's tetrad orientation.
Vec4 potential_from_tetrad(const GroupModel& group, const ChartPoint& u);

enum class PotentialSource { kHolonomic, kTetrad, kPrintedHolonomic };
std::string_view potential_source_name(PotentialSource s);

/// The potential alpha_b e^b_i as a linear family.
LinearPotential tetrad_potential(const Tetrad& tetrad);
/// nullptr when the source does not exist for this group.
const LinearPotential* select_potential(const GroupModel& group, PotentialSource source,
                                        LinearPotential& scratch);

/// Picks the tetrad orientation by requiring duality e^a_i e_b^i = delta and
/// alpha_b e^b_i == reference at the given points. Does not modify `tetrad`.
OrientationDecision orient_tetrad(const Tetrad& tetrad, const LinearPotential* reference,
                                  std::span<const ChartPoint> points);
/// Same, for a model, using its holonomic table and 32 points of its domain.
OrientationDecision orient_tetrad(const GroupModel& group);

}  // namespace g4
