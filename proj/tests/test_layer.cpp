#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "equiconv/catalog.hpp"
#include "equiconv/layer.hpp"
#include "equiconv/linalg.hpp"

using namespace eqc;

namespace {

bool near(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol = 1e-12) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

TwoArgKernel from_group_kernel(const KernelG& kg) {
  const auto& g = *kg.group;
  TwoArgKernel k{kg.group, kg.rho1, kg.rho2, {}};
  k.values.resize(g.order());
  for (int a = 0; a < g.order(); ++a) {
    k.values[a].resize(g.order());
    for (int b = 0; b < g.order(); ++b) k.values[a][b] = kg.values[g.mul(g.inv(a), b)];
  }
  return k;
}

}  // namespace

TEST_CASE("a delta two-argument kernel is the identity map") {
  auto d3 = make_dihedral(3);
  const Subgroup trivial = d3.subgroups.at("trivial");
  auto cs = make_coset_space(d3.group, trivial);
  auto rho = trivial_rep(trivial);
  TwoArgKernel k{d3.group, rho, rho, {}};
  const int n = d3.group->order();
  k.values.assign(n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(1, 1)));
  for (int a = 0; a < n; ++a) k.values[a][a](0, 0) = 1.0;

  std::uint64_t state = 3;
  std::vector<Eigen::VectorXd> raw(n);
  for (auto& v : raw) v = random_vector(1, state);
  const MackeyField f = project_to_mackey(raw, cs, rho);
  const MackeyField out = apply_two_arg(k, f, cs);
  for (int a = 0; a < n; ++a) CHECK(near(out.values[a], f.values[a]));
}

TEST_CASE("a shift-invariant two-argument kernel reproduces the correlation") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  auto dcs = make_double_coset_space(d3.group, flips, flips);
  const auto basis = expand_basis_to_g(solve_basis_d(dcs, rho, rho), cs);
  std::uint64_t state = 5;
  for (const auto& kg : basis.g) {
    const TwoArgKernel two = from_group_kernel(kg);
    const SectionField f = random_section_field(cs, rho, state);
    const MackeyField fm = lift(f);
    const MackeyField via_two = apply_two_arg(two, fm, cs);
    const MackeyField via_corr = correlate_g(kg, fm, cs);
    for (size_t a = 0; a < via_two.values.size(); ++a)
      REQUIRE(near(via_two.values[a], via_corr.values[a]));
  }
}

TEST_CASE("zero two-argument kernel maps to zero") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  TwoArgKernel k{d3.group, rho, rho, {}};
  const int n = d3.group->order();
  k.values.assign(n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(2, 2)));
  std::uint64_t state = 7;
  const MackeyField f = lift(random_section_field(cs, rho, state));
  const MackeyField out = apply_two_arg(k, f, cs);
  for (const auto& v : out.values) CHECK(v.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("invariant two-argument kernels descend to one argument") {
  // Average an arbitrary kernel over the diagonal action; the result
  // must equal kappa0(g^{-1} g') with kappa0 = kappa(e, .).
  auto d3 = make_dihedral(3);
  const auto& g = *d3.group;
  const int n = g.order();
  std::uint64_t state = 11;
  std::vector<std::vector<Eigen::MatrixXd>> raw(
      n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd(2, 2)));
  for (auto& row : raw)
    for (auto& m : row) {
      const Eigen::VectorXd v = random_vector(4, state);
      m = unvec(v, 2, 2);
    }
  auto rho = regular_rep(d3.subgroups.at("flips"));
  TwoArgKernel k{d3.group, rho, rho, {}};
  k.values.assign(n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(2, 2)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int u = 0; u < n; ++u) k.values[g.mul(u, a)][g.mul(u, b)] += raw[a][b];
  CHECK(k.invariance_residual() <= 1e-12);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Eigen::MatrixXd expect = k.values[0][g.mul(g.inv(a), b)];
      REQUIRE((k.values[a][b] - expect).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("constrained two-argument kernels obey the product Mackey condition") {
  // kappa(g h2, g' h1) = rho12((h1, h2)^{-1}) applied to kappa(g, g').
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  auto dcs = make_double_coset_space(d3.group, flips, flips);
  const auto basis = expand_basis_to_g(solve_basis_d(dcs, rho, rho), cs);
  const auto& g = *d3.group;
  const TwoArgKernel two = from_group_kernel(basis.g.front());
  for (int a : {0, 2, 5})
    for (int b : {1, 3, 4})
      for (int h1 : flips.elements())
        for (int h2 : flips.elements()) {
          const Eigen::VectorXd moved =
              vec(two.values[g.mul(a, h2)][g.mul(b, h1)]);
          const Eigen::VectorXd expect =
              rho12(*rho, *rho, g.inv(h1), g.inv(h2)) * vec(two.values[a][b]);
          REQUIRE((moved - expect).cwiseAbs().maxCoeff() <= 1e-12);
        }
}

TEST_CASE("correlation with a delta kernel on a free base is the identity") {
  auto c4 = make_cyclic(4);
  const Subgroup trivial = c4.subgroups.at("trivial");
  auto cs = make_coset_space(c4.group, trivial);
  auto rho = trivial_rep(trivial);
  KernelG k{c4.group, rho, rho, {}};
  k.values.assign(4, Eigen::MatrixXd::Zero(1, 1));
  k.values[0](0, 0) = 1.0;
  std::uint64_t state = 13;
  const MackeyField f = lift(random_section_field(cs, rho, state));
  const MackeyField out = correlate_g(k, f, cs);
  for (size_t a = 0; a < f.values.size(); ++a) CHECK(near(out.values[a], f.values[a]));
}

TEST_CASE("correlation is equivariant and produces Mackey output") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  auto dcs = make_double_coset_space(d3.group, flips, flips);
  const auto basis = expand_basis_to_g(solve_basis_d(dcs, rho, rho), cs);
  std::uint64_t state = 17;
  for (const auto& kg : basis.g) {
    const MackeyField f = lift(random_section_field(cs, rho, state));
    const MackeyField phi_f = correlate_g(kg, f, cs);
    CHECK(phi_f.mackey_residual() < 1e-10);
    for (int u = 0; u < d3.group->order(); ++u) {
      const MackeyField lhs = correlate_g(kg, act(u, f), cs);
      const MackeyField rhs = act(u, phi_f);
      for (size_t a = 0; a < lhs.values.size(); ++a)
        REQUIRE(near(lhs.values[a], rhs.values[a], 1e-12));
    }
  }
}

TEST_CASE("twisted correlation matches the lifted correlation up to |H1|") {
  auto oct = make_octahedral();
  const Subgroup stab = oct.subgroups.at("vertex_stabilizer");
  auto rho1 = regular_rep(stab);
  auto rho2 = rotation_irrep(stab, 1);
  auto cs = make_coset_space(oct.group, stab);
  auto dcs = make_double_coset_space(oct.group, stab, stab);
  const auto d_basis = solve_basis_d(dcs, rho1, rho2);
  REQUIRE(d_basis.dim() > 0);
  std::uint64_t state = 19;
  for (const auto& kd : d_basis.d) {
    const KernelC kc = expand_d_to_c(kd, cs);
    const KernelG kg = lift_c_to_g(kc);
    const SectionField f = random_section_field(cs, rho1, state);
    const SectionField via_g = unlift(correlate_g(kg, lift(f), cs));
    const SectionField via_c = twisted_correlate_c(kc, f, cs);
    for (size_t x = 0; x < via_g.values.size(); ++x)
      REQUIRE(near(via_g.values[x], static_cast<double>(stab.size()) * via_c.values[x],
                   1e-11));
  }
}

TEST_CASE("on a semidirect torus with trivial reps the layer is plain correlation") {
  const int n = 3;
  auto p4 = make_p4_torus(n);
  const Subgroup stab = p4.subgroups.at("stabilizer");
  auto rho = trivial_rep(stab);
  auto cs = make_coset_space(p4.group, stab);
  auto dcs = make_double_coset_space(p4.group, stab, stab);
  const auto basis = solve_basis_d(dcs, rho, rho);
  REQUIRE(basis.dim() == 3);  // one scalar per rotation orbit
  std::uint64_t state = 23;
  const SectionField f = random_section_field(cs, rho, state);
  for (const auto& kd : basis.d) {
    const KernelC kc = expand_d_to_c(kd, cs);
    // The expanded kernel is constant on each rotation orbit.
    for (int x = 0; x < cs->num_cosets(); ++x)
      for (int h : stab.elements())
        REQUIRE(std::abs(kc.values[cs->act(h, x)](0, 0) - kc.values[x](0, 0)) <= 1e-14);
    const SectionField out = twisted_correlate_c(kc, f, cs);
    // Independent pixel-space correlation on the n x n torus; coset x
    // corresponds to the grid point (x / n, x % n).
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double acc = 0.0;
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            const int shifted = ((c - a + n) % n) * n + ((d - b + n) % n);
            acc += kc.values[shifted](0, 0) * f.values[c * n + d](0);
          }
        REQUIRE(out.values[a * n + b](0) == doctest::Approx(acc).epsilon(1e-12));
      }
  }
}

TEST_CASE("twisted correlation is equivariant in section coordinates") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho1 = regular_rep(flips);
  auto rho2 = trivial_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  auto dcs = make_double_coset_space(d3.group, flips, flips);
  const auto basis = solve_basis_d(dcs, rho1, rho2);
  std::uint64_t state = 29;
  for (const auto& kd : basis.d) {
    const KernelC kc = expand_d_to_c(kd, cs);
    const SectionField f = random_section_field(cs, rho1, state);
    const SectionField phi_f = twisted_correlate_c(kc, f, cs);
    for (int u = 0; u < d3.group->order(); ++u) {
      const SectionField lhs = twisted_correlate_c(kc, act(u, f), cs);
      const SectionField rhs = act(u, phi_f);
      for (size_t x = 0; x < lhs.values.size(); ++x)
        REQUIRE(near(lhs.values[x], rhs.values[x], 1e-12));
    }
  }
}

TEST_CASE("oracle dimension for an abelian group over a free base") {
  auto c4 = make_cyclic(4);
  const Subgroup trivial = c4.subgroups.at("trivial");
  auto cs = make_coset_space(c4.group, trivial);
  auto rho = trivial_rep(trivial);
  const auto basis = intertwiner_oracle(cs, rho, cs, rho, c4.generators);
  CHECK(basis.dim() == 4);
}

TEST_CASE("oracle dimension matches the factored solver on D3") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  const auto basis = intertwiner_oracle(cs, rho, cs, rho, d3.generators);
  CHECK(basis.dim() == 6);
}

TEST_CASE("disjoint irreps give an empty intertwiner space") {
  auto c4 = make_cyclic(4);
  const Subgroup full = c4.subgroups.at("full");
  auto cs = make_coset_space(c4.group, full);
  auto rho1 = rotation_irrep(full, 1);
  auto rho2 = rotation_irrep(full, 2);
  const auto basis = intertwiner_oracle(cs, rho1, cs, rho2, c4.generators);
  CHECK(basis.dim() == 0);
}

TEST_CASE("correlation layers span exactly the intertwiner space") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  auto dcs = make_double_coset_space(d3.group, flips, flips);
  const auto d_basis = solve_basis_d(dcs, rho, rho);
  Eigen::MatrixXd layer_vecs(cs->num_cosets() * 2 * cs->num_cosets() * 2, d_basis.dim());
  for (int i = 0; i < d_basis.dim(); ++i) {
    LayerSpec layer{cs, cs, rho, rho, d_basis.d[i]};
    layer_vecs.col(i) = vec(layer.matrix());
  }
  const auto oracle = intertwiner_oracle(cs, rho, cs, rho, d3.generators);
  REQUIRE(oracle.dim() == d_basis.dim());
  const Eigen::MatrixXd layer_span = canonical_span(layer_vecs);
  REQUIRE(layer_span.cols() == d_basis.dim());
  CHECK(span_projection_residual(layer_span, oracle.columns) < 1e-8);
  CHECK(span_projection_residual(oracle.columns, layer_vecs) < 1e-8);
}

TEST_CASE("solved layers have tiny equivariance residual; perturbed ones do not") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  auto dcs = make_double_coset_space(d3.group, flips, flips);
  const auto d_basis = solve_basis_d(dcs, rho, rho);
  const auto c_basis = expand_basis_to_c(d_basis, cs);

  for (const auto& kc : c_basis.c) {
    LayerSpec layer{cs, cs, rho, rho, kc};
    CHECK(equivariance_residual(layer, 8, 42) < 1e-10);
  }

  // Perturb off the solution span: noise of size 1e-2 orthogonal to the
  // span of valid kernels must produce a visible violation.
  const Eigen::MatrixXd span = canonical_span(stack_kernels(c_basis.c));
  std::uint64_t state = 31;
  Eigen::VectorXd noise = random_vector(static_cast<int>(span.rows()), state);
  noise -= span * (span.transpose() * noise);
  REQUIRE(noise.norm() > 1e-8);
  noise *= 1e-2 / noise.norm();
  KernelC bad = c_basis.c.front();
  const int dd = 4;
  for (int x = 0; x < cs->num_cosets(); ++x)
    bad.values[x] += unvec(noise.segment(x * dd, dd), 2, 2);
  LayerSpec bad_layer{cs, cs, rho, rho, bad};
  CHECK(equivariance_residual(bad_layer, 8, 42) > 1e-4);
}

TEST_CASE("the zero layer is trivially equivariant") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  KernelC zero{cs, rho, rho, {}};
  zero.values.assign(cs->num_cosets(), Eigen::MatrixXd::Zero(2, 2));
  LayerSpec layer{cs, cs, rho, rho, zero};
  CHECK(equivariance_residual(layer, 4, 1) == 0.0);
}

TEST_CASE("pointwise nonlinearities require and respect permutation reps") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho = regular_rep(flips);
  auto cs = make_coset_space(d3.group, flips);
  std::uint64_t state = 37;
  const SectionField f = random_section_field(cs, rho, state);

  const SectionField same = pointwise_nonlinearity(f, [](double v) { return v; });
  for (size_t x = 0; x < f.values.size(); ++x) CHECK(near(same.values[x], f.values[x]));

  auto relu = [](double v) { return v > 0 ? v : 0.0; };
  for (int u = 0; u < d3.group->order(); ++u) {
    const SectionField lhs = pointwise_nonlinearity(act(u, f), relu);
    const SectionField rhs = act(u, pointwise_nonlinearity(f, relu));
    for (size_t x = 0; x < lhs.values.size(); ++x)
      REQUIRE(near(lhs.values[x], rhs.values[x], 0.0));  // exact: pure permutation
  }

  auto rot = rotation_irrep(flips, 1);
  const SectionField vf = random_section_field(cs, rot, state);
  CHECK_THROWS_AS(pointwise_nonlinearity(vf, relu), NotPermutationRep);
}

TEST_CASE("norm nonlinearities require and respect orthogonal reps") {
  auto oct = make_octahedral();
  const Subgroup stab = oct.subgroups.at("vertex_stabilizer");
  auto rho = rotation_irrep(stab, 1);
  auto cs = make_coset_space(oct.group, stab);
  std::uint64_t state = 41;
  const SectionField f = random_section_field(cs, rho, state);

  const SectionField same = norm_nonlinearity(f, [](double r) { return r; });
  for (size_t x = 0; x < f.values.size(); ++x)
    CHECK(near(same.values[x], f.values[x], 1e-14));

  auto squash = [](double r) { return std::tanh(r); };
  for (int u = 0; u < oct.group->order(); ++u) {
    const SectionField lhs = norm_nonlinearity(act(u, f), squash);
    const SectionField rhs = act(u, norm_nonlinearity(f, squash));
    for (size_t x = 0; x < lhs.values.size(); ++x)
      REQUIRE(near(lhs.values[x], rhs.values[x], 1e-10));
  }

  SectionField zero{cs, rho, {}};
  zero.values.assign(cs->num_cosets(), Eigen::VectorXd::Zero(2));
  const SectionField still = norm_nonlinearity(zero, squash);
  for (const auto& v : still.values) CHECK(v.cwiseAbs().maxCoeff() == 0.0);

  // A valid but non-orthogonal rep of the flip subgroup.
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  Eigen::MatrixXd shear(2, 2);
  shear << -1, 1, 0, 1;
  auto skew = explicit_rep(flips, {Eigen::MatrixXd::Identity(2, 2), shear});
  auto cs_d3 = make_coset_space(d3.group, flips);
  const SectionField g = random_section_field(cs_d3, skew, state);
  CHECK_THROWS_AS(norm_nonlinearity(g, squash), NotOrthogonalRep);
}
