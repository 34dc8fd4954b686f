#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "g4/checks.hpp"

using namespace g4;

namespace {

constexpr double kExact = 1e-12;
constexpr double kDeriv = 1e-9;

std::vector<ChartPoint> points_for(const GroupModel& m, std::size_t n = 200) { return sample_points(m.domain, n, 42); }

}  // namespace

TEST_CASE("residual scaling") {
  ResidualMax r;
  r.add(1e-3, 1.0);
  CHECK(r.value() == doctest::Approx(1e-3 / 2.0));
  r.add(std::nan(""), 1.0);
  CHECK(std::isinf(r.value()));
}

TEST_CASE("tolerances must be positive") {
  ToleranceConfig t;
  CHECK_NOTHROW(t.validate());
  t.tol_exact = 0.0;
  CHECK_THROWS(t.validate());
}

TEST_CASE("frame algebra holds for every group") {
  for (GroupId id : kAllGroups) {
    CAPTURE(group_key(id));
    const GroupModel m = get_group(id);
    const auto pts = points_for(m);
    CHECK(check_duality(m, pts, kExact).passed);
    CHECK(check_tetrad_duality(m, pts, kExact).passed);
    const CheckResult lie = check_lie_closure(m, pts, kDeriv);
    CHECK(lie.passed);
    CHECK(lie.sign == 1);
    const CheckResult jac = check_jacobi(m.C, kExact);
    CHECK(jac.max_residual == 0.0);
  }
}

TEST_CASE("trivial frame algebra fixtures") {
  const GroupModel flat = fixtures::flat_model();
  const auto pts = points_for(flat, 10);
  CHECK(check_duality(flat, pts, kExact).max_residual == 0.0);
  CHECK(check_jacobi(StructureConstants{}, kExact).max_residual == 0.0);
  CHECK(check_killing(flat, pts, kDeriv).max_residual == 0.0);
  CHECK(check_frame_killing(flat, 1, pts, kDeriv).max_residual == 0.0);
}

TEST_CASE("G4(I) bracket of xi2 and xi3 is xi1") {
  const GroupModel m = get_group(GroupId::kI_cne1);
  for (const auto& u : points_for(m, 20)) {
    for (int i = 0; i < kDim; ++i) {
      double bracket = 0.0;
      for (int j = 0; j < kDim; ++j) {
        bracket += m.frame.xi[1][j].value(u) * eval_jet(m.frame.xi[2][i], u).grad[j];
        bracket -= m.frame.xi[2][j].value(u) * eval_jet(m.frame.xi[1][i], u).grad[j];
      }
      CHECK(bracket == doctest::Approx(m.frame.xi[0][i].value(u)).epsilon(1e-13));
    }
  }
}

TEST_CASE("Abelian block of G4(VI) commutes") {
  for (GroupId id : {GroupId::kVI_1, GroupId::kVI_2, GroupId::kVI_3, GroupId::kVI_4_1, GroupId::kVI_4_2}) {
    const GroupModel m = get_group(id);
    for (int g = 0; g < kDim; ++g)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(m.C.at(g, a, b) == 0.0);
    CHECK(check_lie_closure(m, points_for(m), kDeriv).passed);
  }
}

TEST_CASE("Killing equations under both signatures") {
  for (GroupId id : kAllGroups) {
    CAPTURE(group_key(id));
    for (const Mat4& eta : {lorentzian_eta(), euclidean_eta()}) {
      const GroupModel m = get_group(id).with_eta(eta);
      const auto pts = points_for(m);
      CHECK(check_killing(m, pts, kDeriv).passed);
      CHECK(check_frame_killing(m, 1, pts, kDeriv).passed);
    }
  }
}

TEST_CASE("admissibility of tetrad potentials and asserted holonomic tables") {
  for (GroupId id : kAllGroups) {
    CAPTURE(group_key(id));
    const GroupModel m = get_group(id);
    const auto pts = points_for(m);
    CHECK(check_admissibility(m, PotentialSource::kTetrad, pts, kDeriv).passed);
    if (m.potential.holo_asserted) CHECK(check_admissibility(m, PotentialSource::kHolonomic, pts, kDeriv).passed);
    CHECK(check_frame_defining(m, FrameSource::kDerived, 1, pts, kDeriv).passed);
  }
  const GroupModel zero = get_group(GroupId::kII).with_alphas({0, 0, 0, 0});
  LinearPotential none;
  for (auto& b : none.basis) b.fill(0.0);
  CHECK(check_admissibility(zero, none, points_for(zero, 10), kDeriv).max_residual == 0.0);
}

TEST_CASE("G4(I) reduced potential obeys its frame equation") {
  const GroupModel m = get_group(GroupId::kI_cne1);
  const LinearPotential fp = frame_components(m.frame, m.potential.holo);
  for (const auto& u : points_for(m, 20)) {
    const Jet1 A1 = fp.jet({0.0, 1.0, 0.0, 0.0}, u)[0];
    CHECK(A1.grad[3] == doctest::Approx(-m.params.c * A1.value));
  }
}

TEST_CASE("printed tables with known defects are surfaced per component") {
  const GroupModel iii = get_group(GroupId::kIII);
  const auto pts = points_for(iii);
  const CheckResult printed = check_frame_defining(iii, FrameSource::kPrinted, 1, pts, kDeriv);
  CHECK_FALSE(printed.passed);
  CHECK_FALSE(printed.notes.empty());
  CHECK(check_frame_defining(iii, FrameSource::kDerived, 1, pts, kDeriv).passed);

  const GroupModel iv = get_group(GroupId::kIV);
  CHECK_FALSE(check_frame_table_consistency(iv, points_for(iv), 1e-10).passed);
}

TEST_CASE("Abelian zero field") {
  for (GroupId id : {GroupId::kVI_1, GroupId::kVI_2, GroupId::kVI_3, GroupId::kVI_4_1, GroupId::kVI_4_2}) {
    GroupParams p;
    p.k = 0.83;
    p.l = 1.91;
    p.eps01 = 0;
    p.em_alphas = {-0.4, 1.7, 0.9, 0.0};
    const GroupModel m = get_group(id, p);
    CHECK(check_abelian_zero_field(m, points_for(m), kExact).passed);
  }
  const Mat3 zero{};
  const CheckResult c0 = check_abelian_zero_field(zero, {1.0, 2.0, 3.0, 0.0}, points_for(get_group(GroupId::kVI_1), 20),
                                                 kExact);
  CHECK(c0.max_residual == 0.0);
}

TEST_CASE("matrix exponential of a diagonal and a rotation") {
  const Mat3 d{{{-0.5, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}}};
  const Mat3 e = expm3(d);
  CHECK(e[0][0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(e[1][1] == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(e[2][2] == doctest::Approx(1.0));
  const Mat3 r{{{0.0, -2.0, 0.0}, {2.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
  const Mat3 er = expm3(r);
  CHECK(er[0][0] == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
  CHECK(er[1][0] == doctest::Approx(std::sin(2.0)).epsilon(1e-14));
}

TEST_CASE("gradient oracle agrees for every group") {
  for (GroupId id : kAllGroups) {
    const GroupModel m = get_group(id);
    const auto pts = points_for(m, 20);
    CHECK(check_gradient_oracle(m, pts, 1e-6).passed);
  }
}

TEST_CASE("negative controls fail with a residual of at least 1e-4") {
  for (const auto& c : fixtures::negative_controls()) {
    CAPTURE(c.name);
    CHECK_FALSE(c.result.passed);
    CHECK(c.result.max_residual >= 1e-4);
  }
}
