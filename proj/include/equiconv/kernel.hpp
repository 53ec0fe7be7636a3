#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "equiconv/group.hpp"
#include "equiconv/rep.hpp"

namespace eqc {

// Bi-equivariant kernel on the whole group:
// kappa(h2 g h1) = rho2(h2) kappa(g) rho1(h1).
struct KernelG {
  GroupPtr group;
  RepPtr rho1, rho2;
  std::vector<Eigen::MatrixXd> values;  // per element, d2 x d1

  double constraint_residual() const;
};

// Left-equivariant kernel on G/H1:
// kappa(h2 x) = rho2(h2) kappa(x) rho1(h1(x, h2))^{-1}.
struct KernelC {
  CosetSpacePtr cs1;
  RepPtr rho1, rho2;
  std::vector<Eigen::MatrixXd> values;  // per coset, d2 x d1

  double constraint_residual() const;
};

// Kernel on the double coset space H2\G/H1, constrained only by the
// per-double-coset stabilizer: kappa(x) = rho2(h) kappa(x) rho1^x(h)^{-1}.
struct KernelD {
  DoubleCosetSpacePtr dcs;
  RepPtr rho1, rho2;
  std::vector<Eigen::MatrixXd> values;  // per double coset, d2 x d1

  double constraint_residual() const;
};

enum class KernelForm { D, C, G };

// A linearly independent set of kernels in one of the three forms.
struct KernelBasis {
  KernelForm form = KernelForm::D;
  std::vector<KernelD> d;
  std::vector<KernelC> c;
  std::vector<KernelG> g;

  int dim() const;
};

// Solves the stabilizer constraints double coset by double coset and
// returns an orthonormal basis (vectorized Frobenius inner product, sign
// canonicalized); every basis element is supported on a single double
// coset. The full stabilizer is imposed, not just generators.
KernelBasis solve_basis_d(const DoubleCosetSpacePtr& dcs, const RepPtr& rho1,
                          const RepPtr& rho2);

// Direct nullspace of kappa(h2 g h1) = rho2(h2) kappa(g) rho1(h1) over
// all (g, h1, h2); an independent oracle for solve_basis_d. Refuses
// instances with more than 5000 unknowns.
KernelBasis solve_basis_g_naive(const GroupPtr& g, const Subgroup& h1,
                                const Subgroup& h2, const RepPtr& rho1,
                                const RepPtr& rho2);

inline constexpr double kKernelTol = 1e-10;

// Conversions between the three forms. Inputs are checked against their
// form's constraint and rejected above kKernelTol.
KernelC expand_d_to_c(const KernelD& k, const CosetSpacePtr& cs1);
KernelD restrict_c_to_d(const KernelC& k, const DoubleCosetSpacePtr& dcs);
KernelG lift_c_to_g(const KernelC& k);
KernelC restrict_g_to_c(const KernelG& k, const CosetSpacePtr& cs1);

KernelBasis expand_basis_to_c(const KernelBasis& basis, const CosetSpacePtr& cs1);
KernelBasis expand_basis_to_g(const KernelBasis& basis, const CosetSpacePtr& cs1);

// Stacks each kernel's values as one vector per basis element.
Eigen::MatrixXd stack_kernels(const std::vector<KernelG>& ks);
Eigen::MatrixXd stack_kernels(const std::vector<KernelC>& ks);
Eigen::MatrixXd stack_kernels(const std::vector<KernelD>& ks);

}  // namespace eqc
