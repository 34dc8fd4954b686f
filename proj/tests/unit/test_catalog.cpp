#include <doctest.h>

#include <cmath>
#include <numbers>

#include "g4/catalog.hpp"

using namespace g4;

TEST_CASE("fifteen variants with distinct keys") {
  CHECK(kAllGroups.size() == 15);
  for (GroupId id : kAllGroups) {
    const auto parsed = parse_group(group_key(id));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == id);
  }
  CHECK_FALSE(parse_group("nosuch").has_value());
}

TEST_CASE("G4(I) c=2 structure constants") {
  const GroupModel m = get_group(GroupId::kI_cne1);
  CHECK(m.C.at(0, 0, 3) == 2.0);
  CHECK(m.C.at(0, 1, 2) == 1.0);
  CHECK(m.C.at(1, 1, 3) == 1.0);
  CHECK(m.C.at(2, 2, 3) == 1.0);
  CHECK(m.C.nonzero().size() == 4);
  CHECK(m.C.at(0, 2, 1) == -1.0);
}

TEST_CASE("G4(VIII) constants and first frame row") {
  const GroupModel m = get_group(GroupId::kVIII_a);
  CHECK(m.C.at(2, 0, 1) == 1.0);
  CHECK(m.C.at(0, 1, 2) == 1.0);
  CHECK(m.C.at(1, 2, 0) == 1.0);
  const ChartPoint u{1.1, 0.3, -0.2, 0.4};
  CHECK(m.frame.xi[0][0].value(u) == 0.0);
  CHECK(m.frame.xi[0][1].value(u) == 1.0);
  CHECK(m.frame.xi[0][2].value(u) == 0.0);
}

TEST_CASE("parameter constraints") {
  GroupParams p;
  p.c = 1.0;
  CHECK_THROWS_AS(get_group(GroupId::kI_cne1, p), InvalidParams);
  p = {};
  p.alpha_angle = 0.0;
  CHECK_THROWS_AS(get_group(GroupId::kIII, p), InvalidParams);
  p = {};
  p.eps01 = 2;
  CHECK_THROWS_AS(get_group(GroupId::kVI_1, p), InvalidParams);
  for (GroupId id : kAllGroups) CHECK_NOTHROW(get_group(id));
}

TEST_CASE("sampling") {
  const GroupModel m = get_group(GroupId::kVIII_a);
  const auto pts = sample_points(m.domain, 3, 42);
  REQUIRE(pts.size() == 3);
  for (const auto& u : pts) {
    CHECK(u[0] >= 0.2);
    CHECK(u[0] <= std::numbers::pi - 0.2);
    CHECK(m.domain.contains(u));
  }
  CHECK(sample_points(m.domain, 3, 42) == pts);
  CHECK(sample_points(m.domain, 3, 43) != pts);
  CHECK(sample_points(m.domain, 0, 42).empty());
}

TEST_CASE("G4(I) holonomic potential at the origin") {
  const GroupModel m = get_group(GroupId::kI_cne1);
  const Vec4 A = potential(m, {0.0, 0.0, 0.0, 0.0});
  for (double a : A) CHECK(a == doctest::Approx(1.0));
  CHECK(potential(m.with_alphas({0.0, 0.0, 0.0, 0.0}), {0.4, 0.1, -0.3, 1.0}) == Vec4{0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("G4(VI) holonomic potential has the pure-gauge shape") {
  GroupParams p;
  p.em_alphas = {0.7, -1.3, 0.4, 2.0};
  const GroupModel m = get_group(GroupId::kVI_1, p);
  const ChartPoint u{0.3, -0.8, 1.1, 0.6};
  const Vec4 A = potential(m, u);
  double a4 = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) a4 -= m.C.at(a, b, 3) * u[b] * A[a];
  CHECK(A[3] == doctest::Approx(a4));
  CHECK(A[0] == doctest::Approx(0.7 * std::exp(-m.C.at(0, 0, 3) * u[3])));
}

TEST_CASE("G4(I) tetrad potential reproduces the holonomic table") {
  const GroupModel m = get_group(GroupId::kI_cne1);
  for (const auto& u : sample_points(m.domain, 100, 5)) {
    const Vec4 a = potential(m, u);
    const Vec4 b = potential_from_tetrad(m, u);
    for (int i = 0; i < kDim; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
  }
  CHECK(potential_from_tetrad(m.with_alphas({0.0, 0.0, 0.0, 0.0}), {0.2, 0.1, 0.0, 0.3}) == Vec4{0, 0, 0, 0});
}

TEST_CASE("G4(II) tetrad potential at the origin under the resolved orientation") {
  const GroupModel m = get_group(GroupId::kII);
  CHECK(m.orientation.status == OrientationDecision::Status::kResolved);
  const Vec4 A = potential_from_tetrad(m, {0.0, 0.0, 0.0, 0.0});
  CHECK(A[0] == doctest::Approx(-1.0));
  CHECK(A == potential(m, {0.0, 0.0, 0.0, 0.0}));
}

TEST_CASE("orientation resolution") {
  Tetrad id;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) id.cov[i][j] = id.con[i][j] = i == j ? 1.0 : 0.0;
  const std::vector<ChartPoint> pts{{0.1, 0.2, 0.3, 0.4}, {-0.5, 0.0, 0.7, 1.0}};
  CHECK(orient_tetrad(id, nullptr, pts).status == OrientationDecision::Status::kAmbiguous);

  const GroupModel i1 = get_group(GroupId::kI_cne1);
  const OrientationDecision d1 = orient_tetrad(i1);
  CHECK(d1.status != OrientationDecision::Status::kFailed);
  CHECK(d1.duality_residual[0] <= 1e-12);

  const OrientationDecision d2 = orient_tetrad(get_group(GroupId::kII));
  CHECK(d2.status == OrientationDecision::Status::kResolved);
  CHECK(d2.potential_residual[d2.chosen == Orientation::kCovRowsCoordinate ? 1 : 0] > 1e-3);

  CHECK(orient_tetrad(get_group(GroupId::kII)).chosen == d2.chosen);
}

TEST_CASE("structure constants are antisymmetric") {
  for (GroupId id : kAllGroups) {
    const GroupModel m = get_group(id);
    for (int g = 0; g < kDim; ++g)
      for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) CHECK(m.C.at(g, a, b) == -m.C.at(g, b, a));
  }
}
