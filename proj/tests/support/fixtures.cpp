#include "fixtures.hpp"

#include "g4/geometry.hpp"

namespace g4::fixtures {

namespace {

ExprMat identity_exprs() {
  ExprMat m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m[i][j] = i == j ? 1.0 : 0.0;
  return m;
}

}  // namespace

GroupModel flat_model(const Vec4& alphas) {
  GroupModel m;
  m.params.em_alphas = alphas;
  m.frame = {identity_exprs(), identity_exprs()};
  m.tetrad.cov = identity_exprs();
  m.tetrad.con = identity_exprs();
  m.domain.box.fill({-1.5, 1.5});
  for (int b = 0; b < kDim; ++b)
    for (int i = 0; i < kDim; ++i) m.potential.holo.basis[b][i] = b == i ? 1.0 : 0.0;
  return m;
}

GroupModel with_transposed_dual(GroupModel m) {
  for (int a = 0; a < kDim; ++a)
    for (int i = a + 1; i < kDim; ++i) std::swap(m.frame.dual[a][i], m.frame.dual[i][a]);
  return m;
}

GroupModel with_perturbed_tetrad(GroupModel m) {
  const Expr bump = 0.01 * Expr::coord(0);
  m.tetrad.con[1][1] = m.tetrad.con[1][1] + bump;
  m.tetrad.cov[1][1] = m.tetrad.cov[1][1] + bump;
  return m;
}

GroupModel with_perturbed_potential(GroupModel m) {
  m.potential.holo.basis[0][1] = m.potential.holo.basis[0][1] + 0.01 * Expr::coord(0);
  m.potential.holo_asserted = true;
  return m;
}

GroupModel with_zero_constants(GroupModel m) {
  m.C = StructureConstants{};
  return m;
}

StructureConstants jacobi_violating_constants() {
  StructureConstants C;
  C.set(0, 1, 2, 1.0);
  C.set(1, 0, 2, 1.0);
  C.set(0, 0, 1, 1.0);
  return C;
}

std::vector<Control> negative_controls(std::size_t n_points, std::uint64_t seed) {
  constexpr double tol = 1e-9;
  std::vector<Control> out;
  const GroupModel base = get_group(GroupId::kI_cne1);
  const auto pts = sample_points(base.domain, n_points, seed);
  const auto phase = sample_phase_points(base, n_points, seed);

  out.push_back({"duality: transposed dual frame", check_duality(with_transposed_dual(base), pts, tol)});
  out.push_back({"tetrad_duality: perturbed tetrad", check_tetrad_duality(with_perturbed_tetrad(base), pts, tol)});

  StructureConstants doubled;
  for (const auto& e : base.C.nonzero()) doubled.set(e.g, e.a, e.b, 2.0 * e.value);
  out.push_back({"lie_closure: doubled constants", check_lie_closure(base.frame, doubled, pts, tol)});
  out.push_back({"jacobi: violating constants", check_jacobi(jacobi_violating_constants(), tol)});

  out.push_back({"killing: perturbed tetrad", check_killing(with_perturbed_tetrad(base), pts, tol)});
  out.push_back({"frame_killing: perturbed tetrad", check_frame_killing(with_perturbed_tetrad(base), 1, pts, tol)});

  const GroupModel bad_pot = with_perturbed_potential(base);
  out.push_back({"admissibility: perturbed potential",
                 check_admissibility(base, bad_pot.potential.holo, pts, tol)});
  out.push_back({"frame_defining: perturbed potential",
                 check_frame_defining(bad_pot, FrameSource::kDerived, 1, pts, tol)});

  GroupModel bad_table = get_group(GroupId::kIII);
  bad_table.potential.frame_printed = frame_components(bad_table.frame, bad_table.potential.holo);
  bad_table.potential.frame_printed->basis[1][0] =
      bad_table.potential.frame_printed->basis[1][0] + 0.01 * Expr::coord(0);
  out.push_back({"frame_table_consistency: perturbed table",
                 check_frame_table_consistency(bad_table, sample_points(bad_table.domain, n_points, seed), 1e-10)});

  GroupModel vi = get_group(GroupId::kVI_1);
  const auto vi_pts = sample_points(vi.domain, n_points, seed);
  out.push_back({"zero_field: G4(VI) tetrad potential",
                 check_zero_field(tetrad_potential(vi.tetrad), vi.params.em_alphas, vi_pts, 1e-12)});
  vi.potential.holo = tetrad_potential(vi.tetrad);
  out.push_back({"abelian_zero_field: tetrad potential in place of the reduced one",
                 check_abelian_zero_field(vi, vi_pts, 1e-12)});

  out.push_back({"integral_algebra: zero constants",
                 check_integral_algebra(base, StructureConstants{}, 1, phase, tol)});
  out.push_back({"hamiltonian_integrals: perturbed potential",
                 check_hamiltonian_integrals(base, bad_pot.potential.holo, phase, tol)});
  out.push_back({"gradient_oracle: coarse difference step",
                 check_gradient_oracle(base, std::span(pts).first(std::min<std::size_t>(20, pts.size())), 1e-6, 0.5)});
  return out;
}

}  // namespace g4::fixtures
