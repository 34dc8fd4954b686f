#include <doctest.h>

#include <cmath>
#include <random>

#include "g4/adiff.hpp"
#include "g4/catalog.hpp"

using namespace g4;

TEST_CASE("constant field has zero gradient") {
  const Jet1 j = eval_jet(Expr(7.0), {0.3, -1.0, 2.0, 0.5});
  CHECK(j.value == 7.0);
  for (double g : j.grad) CHECK(g == 0.0);
}

TEST_CASE("exp(-c u4) at the origin") {
  const Expr f = exp(-2.0 * Expr::coord(3));
  const Jet1 j = eval_jet(f, {0.0, 0.0, 0.0, 0.0});
  CHECK(j.value == doctest::Approx(1.0));
  CHECK(j.grad[0] == 0.0);
  CHECK(j.grad[1] == 0.0);
  CHECK(j.grad[2] == 0.0);
  CHECK(j.grad[3] == doctest::Approx(-2.0));
}

TEST_CASE("u1 exp(-c u4) agrees with central differences") {
  const Expr f = Expr::coord(0) * exp(-2.0 * Expr::coord(3));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (int n = 0; n < 50; ++n) {
    const ChartPoint u{d(rng), d(rng), d(rng), d(rng)};
    const Vec4 ad = eval_jet(f, u).grad;
    const Vec4 fd = finite_diff_gradient(f, u, 1e-5);
    CHECK(gradients_agree(ad, fd, 1e-7, 1e-7));
  }
}

TEST_CASE("finite differences of simple fields") {
  const Vec4 g = finite_diff_gradient(Expr::coord(1), {0.3, 1.2, -0.4, 0.7}, 1e-5);
  CHECK(std::abs(g[0]) < 1e-9);
  CHECK(std::abs(g[1] - 1.0) < 1e-9);
  CHECK(std::abs(g[2]) < 1e-9);
  CHECK(std::abs(g[3]) < 1e-9);
  const Vec4 e = finite_diff_gradient(exp(Expr::coord(3)), {0.0, 0.0, 0.0, 0.0}, 1e-5);
  CHECK(std::abs(e[3] - 1.0) < 1e-9);
}

TEST_CASE("catalog potentials agree with the oracle at 100 points") {
  for (GroupId id : kAllGroups) {
    const GroupModel m = get_group(id);
    const auto pts = sample_points(m.domain, 100, 3);
    for (const auto& basis : m.potential.holo.basis)
      for (const Expr& f : basis) {
        if (f.is_constant()) continue;
        for (const auto& u : pts) CHECK(gradients_agree(eval_jet(f, u).grad, finite_diff_gradient(f, u, 1e-5), 1e-6, 1e-6));
      }
  }
}

TEST_CASE("division by a vanishing denominator raises DomainError") {
  const Expr f = 1.0 / sin(Expr::coord(0));
  CHECK_THROWS_AS(f.value({0.0, 0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(eval_jet(f, {0.0, 0.0, 0.0, 0.0}), DomainError);
  CHECK(f.value({std::acos(0.0), 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("constant folding") {
  const Expr f = Expr(2.0) * Expr(3.0) + Expr(1.0);
  CHECK(f.is_constant());
  CHECK(f.constant_value() == 7.0);
  CHECK((Expr::coord(2) * 0.0).is_zero());
}

TEST_CASE("jet arithmetic follows the chain rule") {
  const Jet1 x = Jet1::variable(0.7, 0);
  const Jet1 y = Jet1::variable(-0.3, 2);
  const Jet1 f = sin(x) * cos(y) / exp(x);
  const double ex = std::exp(0.7);
  CHECK(f.value == doctest::Approx(std::sin(0.7) * std::cos(-0.3) / ex));
  CHECK(f.grad[0] == doctest::Approx((std::cos(0.7) - std::sin(0.7)) * std::cos(-0.3) / ex));
  CHECK(f.grad[2] == doctest::Approx(-std::sin(0.7) * std::sin(-0.3) / ex));
  CHECK(f.grad[1] == 0.0);
}
