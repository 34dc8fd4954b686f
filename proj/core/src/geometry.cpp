#include "g4/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace g4 {

namespace {

double det3(const Mat4& m, int r0, int r1, int r2, int c0, int c1, int c2) {
  return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
         m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
         m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
}

// Cofactor C_ij of a 4x4 matrix.
double cofactor(const Mat4& m, int i, int j) {
  std::array<int, 3> r{}, c{};
  for (int k = 0, n = 0; k < kDim; ++k)
    if (k != i) r[n++] = k;
  for (int k = 0, n = 0; k < kDim; ++k)
    if (k != j) c[n++] = k;
  const double minor = det3(m, r[0], r[1], r[2], c[0], c[1], c[2]);
  return ((i + j) % 2 == 0) ? minor : -minor;
}

}  // namespace

double determinant(const Mat4& m) {
  double d = 0.0;
  for (int j = 0; j < kDim; ++j) d += m[0][j] * cofactor(m, 0, j);
  return d;
}

Mat4 inverse(const Mat4& m) {
  const double d = determinant(m);
  if (!std::isfinite(d) || std::abs(d) < kSingularDeterminant) {
    throw SingularMetric("matrix is singular (|det| below guard)");
  }
  Mat4 inv{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) inv[j][i] = cofactor(m, i, j) / d;
  return inv;
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < kDim; ++i)
    for (int k = 0; k < kDim; ++k)
      for (int j = 0; j < kDim; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat4 transpose(const Mat4& m) {
  Mat4 t{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) t[i][j] = m[j][i];
  return t;
}

Mat4 identity4() { return diagonal({1.0, 1.0, 1.0, 1.0}); }

double max_abs_diff(const Mat4& a, const Mat4& b) {
  double r = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r = std::max(r, std::abs(a[i][j] - b[i][j]));
  return r;
}

Mat4 evaluate(const ExprMat& m, const ChartPoint& u) {
  Mat4 r{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r[i][j] = m[i][j].value(u);
  return r;
}

JetMat4 evaluate_jet(const ExprMat& m, const ChartPoint& u) {
  JetMat4 r{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r[i][j] = m[i][j].jet(u);
  return r;
}

Mat4 frame_eta_con(const GroupModel& group) {
  const Mat4& eta = group.params.eta;
  if (group.metric_form == MetricForm::kTetrad) return inverse(eta);
  Mat4 block = eta;
  for (int k = 0; k < kDim; ++k) {
    block[3][k] = k == 3 ? 1.0 : 0.0;
    block[k][3] = k == 3 ? 1.0 : 0.0;
  }
  Mat4 inv = inverse(block);
  inv[3][3] = 0.0;
  return inv;
}

JetMat4 metric_con_jet(const GroupModel& group, const ChartPoint& u) {
  const Mat4 eta = frame_eta_con(group);
  JetMat4 e{};  // e[a][i] = e_a^i
  for (int a = 0; a < kDim; ++a)
    for (int i = 0; i < kDim; ++i) e[a][i] = group.tetrad.con_at(a, i).jet(u);

  JetMat4 g{};
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) {
      Jet1 s;
      for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) {
          if (eta[a][b] == 0.0) continue;
          s += eta[a][b] * (e[a][i] * e[b][j]);
        }
      if (group.metric_form == MetricForm::kBlockG3 && i == 3 && j == 3) s += Jet1(1.0);
      g[i][j] = s;
      g[j][i] = s;
    }
  return g;
}

MetricAt metric_at(const GroupModel& group, const ChartPoint& u) {
  const JetMat4 gj = metric_con_jet(group, u);
  MetricAt m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m.g_con[i][j] = gj[i][j].value;
  m.g_cov = inverse(m.g_con);
  return m;
}

FrameMetricAt frame_metric_at(const GroupModel& group, const ChartPoint& u) {
  const MetricAt g = metric_at(group, u);
  const Mat4 xi = evaluate(group.frame.xi, u);
  const Mat4 dual = evaluate(group.frame.dual, u);
  FrameMetricAt f;
  f.G_con = multiply(multiply(dual, g.g_con), transpose(dual));
  f.G_cov = multiply(multiply(xi, g.g_cov), transpose(xi));
  return f;
}

FaradayAt faraday_at(const LinearPotential& potential, const Vec4& alphas, const ChartPoint& u) {
  const auto A = potential.jet(alphas, u);
  FaradayAt f;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      const double v = A[j].grad[i] - A[i].grad[j];
      f.F[i][j] = v;
      f.F[j][i] = -v;
    }
  return f;
}

FaradayAt faraday_at(const GroupModel& group, const ChartPoint& u) {
  return faraday_at(group.potential.holo, group.params.em_alphas, u);
}

}  // namespace g4
