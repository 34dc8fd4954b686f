#pragma once

// Metrics assembled from tetrads, Killing-frame components of the metric,
// and the field strength of a potential.

#include <array>

#include "g4/adiff.hpp"
#include "g4/catalog.hpp"

namespace g4 {

class SingularMetric : public DomainError {
 public:
  using DomainError::DomainError;
};

inline constexpr double kSingularDeterminant = 1e-12;

using JetMat4 = std::array<std::array<Jet1, kDim>, kDim>;

double determinant(const Mat4& m);
/// Cofactor inverse; throws SingularMetric when |det| < kSingularDeterminant.
Mat4 inverse(const Mat4& m);
Mat4 multiply(const Mat4& a, const Mat4& b);
Mat4 transpose(const Mat4& m);
Mat4 identity4();
/// max |a_ij - b_ij|
double max_abs_diff(const Mat4& a, const Mat4& b);

Mat4 evaluate(const ExprMat& m, const ChartPoint& u);
JetMat4 evaluate_jet(const ExprMat& m, const ChartPoint& u);

struct MetricAt {
  Mat4 g_con{};  // g^{ij}
  Mat4 g_cov{};  // g_{ij}
};

struct FrameMetricAt {
  Mat4 G_con{};  // G^{ab} = xi^a_i xi^b_j g^{ij}
  Mat4 G_cov{};  // G_{ab} = xi_a^i xi_b^j g_{ij}
};

struct FaradayAt {
  Mat4 F{};  // F_ij = d_i A_j - d_j A_i
};

/// Frame-index inverse metric eta^{ab} that enters g^{ij}. For the block
/// form only the upper 3x3 block is used (inverse of the 3x3 block of eta)
/// and the (4,4) slot is zero; the delta_4 delta_4 term is added separately.
Mat4 frame_eta_con(const GroupModel& group);

/// g^{ij} with exact first derivatives.
JetMat4 metric_con_jet(const GroupModel& group, const ChartPoint& u);

MetricAt metric_at(const GroupModel& group, const ChartPoint& u);
FrameMetricAt frame_metric_at(const GroupModel& group, const ChartPoint& u);

/// Field strength of the model's holonomic potential with its em_alphas.
FaradayAt faraday_at(const GroupModel& group, const ChartPoint& u);
FaradayAt faraday_at(const LinearPotential& potential, const Vec4& alphas, const ChartPoint& u);

}  // namespace g4
