#include "equiconv/layer.hpp"

#include <algorithm>
#include <cmath>

#include "equiconv/linalg.hpp"

namespace eqc {

double TwoArgKernel::invariance_residual() const {
  const auto& g = *group;
  double worst = 0.0;
  for (int u = 0; u < g.order(); ++u)
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b) {
        const Eigen::MatrixXd diff = values[g.mul(u, a)][g.mul(u, b)] - values[a][b];
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      }
  return worst;
}

MackeyField apply_two_arg(const TwoArgKernel& k, const MackeyField& f,
                          const CosetSpacePtr& cs2) {
  const auto& g = *k.group;
  if (f.rep->dim() != k.rho1->dim() ||
      static_cast<int>(f.values.size()) != g.order())
    throw ShapeMismatch("field does not match the kernel's input space");
  MackeyField out{cs2, k.rho2, {}};
  out.values.resize(g.order());
  for (int a = 0; a < g.order(); ++a) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(k.rho2->dim());
    for (int b = 0; b < g.order(); ++b) acc += k.values[a][b] * f.values[b];
    out.values[a] = acc;
  }
  return out;
}

MackeyField correlate_g(const KernelG& k, const MackeyField& f,
                        const CosetSpacePtr& cs2) {
  const auto& g = *k.group;
  if (f.rep->dim() != k.rho1->dim() ||
      static_cast<int>(f.values.size()) != g.order())
    throw ShapeMismatch("field does not match the kernel's input space");
  const double fres = f.mackey_residual();
  if (fres > 1e-10) throw NotMackey("input residual " + std::to_string(fres));
  const double kres = k.constraint_residual();
  if (kres > kKernelTol) throw NotInKernelG("constraint residual " + std::to_string(kres));

  MackeyField out{cs2, k.rho2, {}};
  out.values.resize(g.order());
  for (int a = 0; a < g.order(); ++a) {
    const int ai = g.inv(a);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(k.rho2->dim());
    for (int b = 0; b < g.order(); ++b) acc += k.values[g.mul(ai, b)] * f.values[b];
    out.values[a] = acc;
  }
  return out;
}

SectionField twisted_correlate_c(const KernelC& k, const SectionField& f,
                                 const CosetSpacePtr& cs2) {
  const auto& cs1 = *k.cs1;
  const auto& g = *cs1.parent();
  if (f.rep->dim() != k.rho1->dim() ||
      static_cast<int>(f.values.size()) != cs1.num_cosets())
    throw ShapeMismatch("field does not match the kernel's input space");
  SectionField out{cs2, k.rho2, {}};
  out.values.resize(cs2->num_cosets());
  for (int x = 0; x < cs2->num_cosets(); ++x) {
    const int shift = g.inv(cs2->section(x));
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(k.rho2->dim());
    for (int y = 0; y < cs1.num_cosets(); ++y) {
      const int moved = cs1.act(shift, y);
      const int twist = cs1.h_of_element(g.mul(shift, cs1.section(y)));
      acc += k.values[moved] * (k.rho1->matrix(twist) * f.values[y]);
    }
    out.values[x] = acc;
  }
  return out;
}

SectionField LayerSpec::apply(const SectionField& f) const {
  if (std::holds_alternative<KernelC>(kernel))
    return twisted_correlate_c(std::get<KernelC>(kernel), f, cs2);
  if (std::holds_alternative<KernelD>(kernel))
    return twisted_correlate_c(expand_d_to_c(std::get<KernelD>(kernel), cs1), f, cs2);
  if (std::holds_alternative<KernelG>(kernel)) {
    const auto out = correlate_g(std::get<KernelG>(kernel), lift(f), cs2);
    return unlift(out);
  }
  const auto out = apply_two_arg(std::get<TwoArgKernel>(kernel), lift(f), cs2);
  return unlift(out);
}

Eigen::MatrixXd LayerSpec::matrix() const {
  const int d1 = rho1->dim(), d2 = rho2->dim();
  const int n1 = cs1->num_cosets() * d1;
  const int n2 = cs2->num_cosets() * d2;
  Eigen::MatrixXd m(n2, n1);
  SectionField unit{cs1, rho1, {}};
  unit.values.assign(cs1->num_cosets(), Eigen::VectorXd::Zero(d1));
  for (int col = 0; col < n1; ++col) {
    unit.values[col / d1](col % d1) = 1.0;
    const SectionField image = apply(unit);
    for (int x = 0; x < cs2->num_cosets(); ++x)
      m.block(x * d2, col, d2, 1) = image.values[x];
    unit.values[col / d1](col % d1) = 0.0;
  }
  return m;
}

IntertwinerBasis intertwiner_oracle(const CosetSpacePtr& cs1, const RepPtr& rho1,
                                    const CosetSpacePtr& cs2, const RepPtr& rho2,
                                    const std::vector<int>& generators) {
  const int n1 = cs1->num_cosets() * rho1->dim();
  const int n2 = cs2->num_cosets() * rho2->dim();
  const long long unknowns = static_cast<long long>(n1) * n2;
  if (unknowns > 1000000)
    throw TooLarge("intertwiner solve would need " + std::to_string(unknowns) +
                   " unknowns");
  std::vector<int> gens = generators;
  if (gens.empty()) {
    gens.resize(cs1->parent()->order());
    for (size_t i = 0; i < gens.size(); ++i) gens[i] = static_cast<int>(i);
  }

  // Phi pi1(g) - pi2(g) Phi = 0, vectorized column-major:
  // (pi1(g)^T kron I - I kron pi2(g)) vec(Phi) = 0. The pi blocks are
  // sparse (one d x d block per coset), so the stack is assembled as
  // triplets.
  std::vector<Eigen::Triplet<double>> trips;
  long long row_base = 0;
  for (int gen : gens) {
    const Eigen::MatrixXd pi1 = induced_matrix(*cs1, *rho1, gen);
    const Eigen::MatrixXd pi2 = induced_matrix(*cs2, *rho2, gen);
    // Row (i, j) of Phi lives at vec index j * n2 + i.
    for (int j = 0; j < n1; ++j) {
      for (int i = 0; i < n2; ++i) {
        const long long row = row_base + static_cast<long long>(j) * n2 + i;
        for (int k = 0; k < n1; ++k)
          if (pi1(k, j) != 0.0)
            trips.emplace_back(row, k * n2 + i, pi1(k, j));
        for (int k = 0; k < n2; ++k)
          if (pi2(i, k) != 0.0)
            trips.emplace_back(row, j * n2 + k, -pi2(i, k));
      }
    }
    row_base += unknowns;
  }
  Eigen::SparseMatrix<double> constraints(row_base, unknowns);
  constraints.setFromTriplets(trips.begin(), trips.end());
  IntertwinerBasis basis;
  basis.columns = nullspace_sparse(constraints);
  return basis;
}

namespace {

int pick_subset(std::uint64_t& state, int bound) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return static_cast<int>(z % static_cast<std::uint64_t>(bound));
}

}  // namespace

double equivariance_residual(const LayerSpec& layer_in, int trials, std::uint64_t seed) {
  // Route constrained forms through the coset form once up front; the
  // residual is scale invariant, so the |H1| factor between the G and C
  // application paths does not matter.
  LayerSpec layer = layer_in;
  if (std::holds_alternative<KernelD>(layer.kernel))
    layer.kernel = expand_d_to_c(std::get<KernelD>(layer.kernel), layer.cs1);
  else if (std::holds_alternative<KernelG>(layer.kernel))
    layer.kernel = restrict_g_to_c(std::get<KernelG>(layer.kernel), layer.cs1);

  const auto& g = *layer.cs1->parent();
  std::uint64_t state = seed;
  std::vector<int> us;
  if (g.order() <= 256) {
    us.resize(g.order());
    for (int u = 0; u < g.order(); ++u) us[u] = u;
  } else {
    for (int i = 0; i < 256; ++i) us.push_back(pick_subset(state, g.order()));
  }

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const SectionField f = random_section_field(layer.cs1, layer.rho1, state);
    const SectionField phi_f = layer.apply(f);
    double norm_sq = 0.0;
    for (const auto& v : phi_f.values) norm_sq += v.squaredNorm();
    const double denom = std::max(std::sqrt(norm_sq), 1e-30);
    for (int u : us) {
      const SectionField lhs = layer.apply(act(u, f));
      const SectionField rhs = act(u, phi_f);
      double diff_sq = 0.0;
      for (size_t x = 0; x < lhs.values.size(); ++x)
        diff_sq += (lhs.values[x] - rhs.values[x]).squaredNorm();
      worst = std::max(worst, std::sqrt(diff_sq) / denom);
    }
  }
  return worst;
}

SectionField pointwise_nonlinearity(const SectionField& f,
                                    const std::function<double(double)>& scalar_fn) {
  if (!f.rep->is_permutation())
    throw NotPermutationRep("pointwise nonlinearities require a permutation rep");
  SectionField out{f.cs, f.rep, f.values};
  for (auto& v : out.values)
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = scalar_fn(v(i));
  return out;
}

SectionField norm_nonlinearity(const SectionField& f,
                               const std::function<double(double)>& radial_fn) {
  const double ortho = f.rep->orthogonality_residual();
  if (ortho > 1e-10)
    throw NotOrthogonalRep("orthogonality residual " + std::to_string(ortho));
  SectionField out{f.cs, f.rep, f.values};
  for (auto& v : out.values) {
    const double n = v.norm();
    if (n == 0.0) continue;
    v *= radial_fn(n) / n;
  }
  return out;
}

}  // namespace eqc
