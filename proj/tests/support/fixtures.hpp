#pragma once

#include <string>
#include <vector>

#include "g4/catalog.hpp"
#include "g4/checks.hpp"
#include "g4/mechanics.hpp"

namespace g4::fixtures {

/// Minkowski space in Cartesian coordinates with the four translations.
GroupModel flat_model(const Vec4& alphas = {0.0, 0.0, 0.0, 0.0});

GroupModel with_transposed_dual(GroupModel m);
/// Adds 0.01 u1 to one tetrad entry.
GroupModel with_perturbed_tetrad(GroupModel m);
/// Adds 0.01 u1 to the first basis potential's A_2.
GroupModel with_perturbed_potential(GroupModel m);
GroupModel with_zero_constants(GroupModel m);

/// C^1_23 = 1, C^2_13 = 1 plus an entry that breaks the Jacobi identity.
StructureConstants jacobi_violating_constants();

struct Control {
  std::string name;
  CheckResult result;
};

/// Every check run on a deliberately broken fixture.
std::vector<Control> negative_controls(std::size_t n_points = 50, std::uint64_t seed = 7);

}  // namespace g4::fixtures
