#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "g4/geometry.hpp"

using namespace g4;

namespace {

void check_close(const Mat4& a, const Mat4& b, double tol) { CHECK(max_abs_diff(a, b) <= tol); }

}  // namespace

TEST_CASE("identity tetrad gives g = eta") {
  const GroupModel flat = fixtures::flat_model();
  const MetricAt g = metric_at(flat, {0.3, -0.2, 1.0, 0.5});
  check_close(g.g_cov, lorentzian_eta(), 0.0);
  check_close(g.g_con, lorentzian_eta(), 0.0);
}

TEST_CASE("G4(I) metric equals eta at the origin") {
  const GroupModel m = get_group(GroupId::kI_cne1);
  const MetricAt g = metric_at(m, {0.0, 0.0, 0.0, 0.0});
  check_close(g.g_cov, lorentzian_eta(), 1e-15);
  check_close(g.g_con, lorentzian_eta(), 1e-15);
}

TEST_CASE("G4(VIII) block metric against a direct contraction") {
  const GroupModel m = get_group(GroupId::kVIII_a);
  const ChartPoint u{std::numbers::pi / 2, 0.3, 0.4, 0.0};
  const Mat4 eta = m.params.eta;
  Mat4 expected{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      double s = (i == 3 && j == 3) ? 1.0 : 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          s += (a == b ? 1.0 / eta[a][a] : 0.0) * m.tetrad.con_at(a, i).value(u) * m.tetrad.con_at(b, j).value(u);
      expected[i][j] = s;
    }
  check_close(metric_at(m, u).g_con, expected, 1e-14);
}

TEST_CASE("metric jets agree with values and are symmetric") {
  for (GroupId id : kAllGroups) {
    const GroupModel m = get_group(id);
    for (const auto& u : sample_points(m.domain, 10, 9)) {
      const JetMat4 J = metric_con_jet(m, u);
      const MetricAt g = metric_at(m, u);
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
          CHECK(J[i][j].value == doctest::Approx(g.g_con[i][j]).epsilon(1e-13));
          CHECK(g.g_con[i][j] == doctest::Approx(g.g_con[j][i]).epsilon(1e-13));
        }
      check_close(multiply(g.g_con, g.g_cov), identity4(), 1e-10);
    }
  }
}

TEST_CASE("zero potential has zero field") {
  const GroupModel m = get_group(GroupId::kIII).with_alphas({0.0, 0.0, 0.0, 0.0});
  check_close(faraday_at(m, {0.2, 0.4, -0.1, 0.3}).F, Mat4{}, 0.0);
}

TEST_CASE("G4(VI) holonomic field vanishes") {
  for (GroupId id : {GroupId::kVI_1, GroupId::kVI_2, GroupId::kVI_3, GroupId::kVI_4_1, GroupId::kVI_4_2}) {
    GroupParams p;
    p.k = 1.37;
    p.l = -0.61;
    p.em_alphas = {0.9, -1.4, 0.35, 2.2};
    const GroupModel m = get_group(id, p);
    for (const auto& u : sample_points(m.domain, 50, 4)) check_close(faraday_at(m, u).F, Mat4{}, 1e-12);
  }
}

TEST_CASE("G4(I) F14 for alpha1") {
  const GroupModel m = get_group(GroupId::kI_cne1).with_alphas({1.0, 0.0, 0.0, 0.0});
  for (double u4 : {-1.0, 0.0, 0.7}) {
    const ChartPoint u{0.3, 0.1, -0.2, u4};
    const double F14 = faraday_at(m, u).F[0][3];
    CHECK(F14 == doctest::Approx(std::exp(-u4)).epsilon(1e-13));
  }
}

TEST_CASE("frame metric: identity frame and two routes") {
  const GroupModel flat = fixtures::flat_model();
  const ChartPoint u0{0.1, 0.2, 0.3, 0.4};
  check_close(frame_metric_at(flat, u0).G_cov, metric_at(flat, u0).g_cov, 0.0);

  const GroupModel m = get_group(GroupId::kI_cne1);
  for (const auto& u : sample_points(m.domain, 20, 8)) {
    const FrameMetricAt G = frame_metric_at(m, u);
    check_close(G.G_con, transpose(G.G_con), 1e-13);
    check_close(multiply(G.G_con, G.G_cov), identity4(), 1e-10);
  }
}

TEST_CASE("singular matrix is rejected") {
  Mat4 s{};
  s[0][0] = 1.0;
  CHECK_THROWS_AS(inverse(s), SingularMetric);
}
