#include "equiconv/kernel.hpp"

#include <Eigen/Sparse>
#include <cmath>

#include "equiconv/linalg.hpp"

namespace eqc {

namespace {

void check_shapes(const std::vector<Eigen::MatrixXd>& values, int count, int d2, int d1) {
  if (static_cast<int>(values.size()) != count)
    throw ShapeMismatch("kernel value count mismatch");
  for (const auto& m : values)
    if (m.rows() != d2 || m.cols() != d1) throw ShapeMismatch("kernel matrix shape mismatch");
}

}  // namespace

double KernelG::constraint_residual() const {
  const auto& g = *group;
  check_shapes(values, g.order(), rho2->dim(), rho1->dim());
  double worst = 0.0;
  for (int a = 0; a < g.order(); ++a) {
    for (int h2 : rho2->subgroup().elements()) {
      const Eigen::MatrixXd left = rho2->matrix(h2) * values[a];
      for (int h1 : rho1->subgroup().elements()) {
        const Eigen::MatrixXd expect = left * rho1->matrix(h1);
        const int moved = g.mul(g.mul(h2, a), h1);
        worst = std::max(worst, (values[moved] - expect).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double KernelC::constraint_residual() const {
  check_shapes(values, cs1->num_cosets(), rho2->dim(), rho1->dim());
  double worst = 0.0;
  for (int x = 0; x < cs1->num_cosets(); ++x) {
    for (int h2 : rho2->subgroup().elements()) {
      const int twisted = cs1->h(x, h2);
      const Eigen::MatrixXd expect =
          rho2->matrix(h2) * values[x] * rho1->inverse_matrix(twisted);
      const int moved = cs1->act(h2, x);
      worst = std::max(worst, (values[moved] - expect).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double KernelD::constraint_residual() const {
  check_shapes(values, dcs->num(), rho2->dim(), rho1->dim());
  double worst = 0.0;
  const auto& g = *dcs->parent();
  for (int x = 0; x < dcs->num(); ++x) {
    for (int h : dcs->stabilizer(x).elements()) {
      // rho1^x(h)^{-1} = rho1^x(h^{-1}); stabilizers are subgroups.
      const Eigen::MatrixXd expect =
          rho2->matrix(h) * values[x] * rho1_x(*rho1, *dcs, x, g.inv(h));
      worst = std::max(worst, (values[x] - expect).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

int KernelBasis::dim() const {
  switch (form) {
    case KernelForm::D: return static_cast<int>(d.size());
    case KernelForm::C: return static_cast<int>(c.size());
    case KernelForm::G: return static_cast<int>(g.size());
  }
  return 0;
}

KernelBasis solve_basis_d(const DoubleCosetSpacePtr& dcs, const RepPtr& rho1,
                          const RepPtr& rho2) {
  const int d1 = rho1->dim(), d2 = rho2->dim();
  const int dd = d1 * d2;
  KernelBasis basis;
  basis.form = KernelForm::D;
  for (int x = 0; x < dcs->num(); ++x) {
    const auto& stab = dcs->stabilizer(x);
    // vec(kappa) must be fixed by every M_h = rho1^x(h)^{-T} kron rho2(h).
    Eigen::MatrixXd constraints(stab.size() * dd, dd);
    for (int p = 0; p < stab.size(); ++p) {
      const int h = stab.element(p);
      const Eigen::MatrixXd mh = kron(
          rho1_x(*rho1, *dcs, x, dcs->parent()->inv(h)).transpose(), rho2->matrix(h));
      constraints.block(p * dd, 0, dd, dd) = Eigen::MatrixXd::Identity(dd, dd) - mh;
    }
    const Eigen::MatrixXd null_basis = nullspace(constraints);
    for (Eigen::Index col = 0; col < null_basis.cols(); ++col) {
      KernelD k{dcs, rho1, rho2, {}};
      k.values.assign(dcs->num(), Eigen::MatrixXd::Zero(d2, d1));
      k.values[x] = unvec(null_basis.col(col), d2, d1);
      basis.d.push_back(std::move(k));
    }
  }
  return basis;
}

KernelBasis solve_basis_g_naive(const GroupPtr& g, const Subgroup& h1,
                                const Subgroup& h2, const RepPtr& rho1,
                                const RepPtr& rho2) {
  const int d1 = rho1->dim(), d2 = rho2->dim();
  const int dd = d1 * d2;
  const long long unknowns = static_cast<long long>(g->order()) * dd;
  if (unknowns > 5000)
    throw TooLarge("naive solve would need " + std::to_string(unknowns) + " unknowns");

  // Full system over all (g, h1, h2):
  //   vec(kappa(h2 a h1)) - (rho1(h1)^T kron rho2(h2)) vec(kappa(a)) = 0.
  std::vector<Eigen::Triplet<double>> trips;
  const int cols = static_cast<int>(unknowns);
  long long row_base = 0;
  for (int a = 0; a < g->order(); ++a) {
    for (int e2 : h2.elements()) {
      for (int e1 : h1.elements()) {
        const int moved = g->mul(g->mul(e2, a), e1);
        const Eigen::MatrixXd m = kron(rho1->matrix(e1).transpose(), rho2->matrix(e2));
        for (int r = 0; r < dd; ++r) {
          trips.emplace_back(static_cast<int>(row_base) + r, moved * dd + r, 1.0);
          for (int cidx = 0; cidx < dd; ++cidx) {
            if (m(r, cidx) != 0.0)
              trips.emplace_back(static_cast<int>(row_base) + r, a * dd + cidx, -m(r, cidx));
          }
        }
        row_base += dd;
      }
    }
  }
  Eigen::SparseMatrix<double> a_sparse(row_base, cols);
  a_sparse.setFromTriplets(trips.begin(), trips.end());
  const Eigen::MatrixXd null_basis = nullspace_sparse(a_sparse);

  KernelBasis basis;
  basis.form = KernelForm::G;
  for (Eigen::Index col = 0; col < null_basis.cols(); ++col) {
    KernelG k{g, rho1, rho2, {}};
    k.values.resize(g->order());
    for (int a = 0; a < g->order(); ++a)
      k.values[a] = unvec(null_basis.col(col).segment(a * dd, dd), d2, d1);
    basis.g.push_back(std::move(k));
  }
  return basis;
}

KernelC expand_d_to_c(const KernelD& k, const CosetSpacePtr& cs1) {
  const double res = k.constraint_residual();
  if (res > kKernelTol)
    throw NotInKernelD("constraint residual " + std::to_string(res));
  const auto& dcs = *k.dcs;
  const auto& h2 = dcs.left();
  KernelC out{cs1, k.rho1, k.rho2, {}};
  out.values.resize(cs1->num_cosets());
  for (int y = 0; y < cs1->num_cosets(); ++y) {
    const int dc = dcs.dcoset_of(cs1->section(y));
    const int gamma_coset = cs1->coset_of(dcs.gamma(dc));
    // Any h in H2 moving gamma's coset to y gives the same value; take
    // the smallest.
    int chosen = -1;
    for (int e : h2.elements()) {
      if (cs1->act(e, gamma_coset) == y) {
        chosen = e;
        break;
      }
    }
    if (chosen < 0)
      throw Error("double coset decomposition failed at coset " + std::to_string(y));
    const int twist = cs1->h(gamma_coset, chosen);
    out.values[y] =
        k.rho2->matrix(chosen) * k.values[dc] * k.rho1->inverse_matrix(twist);
  }
  return out;
}

KernelD restrict_c_to_d(const KernelC& k, const DoubleCosetSpacePtr& dcs) {
  const double res = k.constraint_residual();
  if (res > kKernelTol)
    throw NotInKernelC("constraint residual " + std::to_string(res));
  KernelD out{dcs, k.rho1, k.rho2, {}};
  out.values.resize(dcs->num());
  for (int x = 0; x < dcs->num(); ++x)
    out.values[x] = k.values[k.cs1->coset_of(dcs->gamma(x))];
  return out;
}

KernelG lift_c_to_g(const KernelC& k) {
  const double res = k.constraint_residual();
  if (res > kKernelTol)
    throw NotInKernelC("constraint residual " + std::to_string(res));
  const auto& g = *k.cs1->parent();
  KernelG out{k.cs1->parent(), k.rho1, k.rho2, {}};
  out.values.resize(g.order());
  for (int a = 0; a < g.order(); ++a) {
    const int twist = k.cs1->h_of_element(a);
    out.values[a] = k.values[k.cs1->coset_of(a)] * k.rho1->matrix(twist);
  }
  return out;
}

KernelC restrict_g_to_c(const KernelG& k, const CosetSpacePtr& cs1) {
  const double res = k.constraint_residual();
  if (res > kKernelTol)
    throw NotInKernelG("constraint residual " + std::to_string(res));
  KernelC out{cs1, k.rho1, k.rho2, {}};
  out.values.resize(cs1->num_cosets());
  for (int x = 0; x < cs1->num_cosets(); ++x) out.values[x] = k.values[cs1->section(x)];
  return out;
}

KernelBasis expand_basis_to_c(const KernelBasis& basis, const CosetSpacePtr& cs1) {
  KernelBasis out;
  out.form = KernelForm::C;
  if (basis.form == KernelForm::D) {
    for (const auto& k : basis.d) out.c.push_back(expand_d_to_c(k, cs1));
  } else if (basis.form == KernelForm::C) {
    out.c = basis.c;
  } else {
    for (const auto& k : basis.g) out.c.push_back(restrict_g_to_c(k, cs1));
  }
  return out;
}

KernelBasis expand_basis_to_g(const KernelBasis& basis, const CosetSpacePtr& cs1) {
  KernelBasis mid = expand_basis_to_c(basis, cs1);
  KernelBasis out;
  out.form = KernelForm::G;
  for (const auto& k : mid.c) out.g.push_back(lift_c_to_g(k));
  return out;
}

namespace {

template <typename K>
Eigen::MatrixXd stack_impl(const std::vector<K>& ks) {
  if (ks.empty()) return Eigen::MatrixXd(0, 0);
  const int per = static_cast<int>(ks[0].values.size());
  const int dd = static_cast<int>(ks[0].values[0].size());
  Eigen::MatrixXd out(per * dd, ks.size());
  for (size_t i = 0; i < ks.size(); ++i)
    for (int s = 0; s < per; ++s) out.block(s * dd, i, dd, 1) = vec(ks[i].values[s]);
  return out;
}

}  // namespace

Eigen::MatrixXd stack_kernels(const std::vector<KernelG>& ks) { return stack_impl(ks); }
Eigen::MatrixXd stack_kernels(const std::vector<KernelC>& ks) { return stack_impl(ks); }
Eigen::MatrixXd stack_kernels(const std::vector<KernelD>& ks) { return stack_impl(ks); }

}  // namespace eqc
