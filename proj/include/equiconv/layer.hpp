#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "equiconv/field.hpp"
#include "equiconv/kernel.hpp"

namespace eqc {

// Unconstrained two-argument kernel on G x G. Invariance under the
// diagonal action (kappa(ug, ug') = kappa(g, g')) is a checkable
// property, not a constructor requirement.
struct TwoArgKernel {
  GroupPtr group;
  RepPtr rho1, rho2;
  std::vector<std::vector<Eigen::MatrixXd>> values;  // [g][g'], d2 x d1

  double invariance_residual() const;
};

// [k . f](g) = sum_{g'} kappa(g, g') f(g'), counting measure.
MackeyField apply_two_arg(const TwoArgKernel& k, const MackeyField& f,
                          const CosetSpacePtr& cs2);

// Cross-correlation on the group: [k * f](g) = sum_{g'} kappa(g^{-1} g') f(g').
// Input must be Mackey for (H1, rho1); the kernel must satisfy its
// constraint; the output is Mackey for (H2, rho2).
MackeyField correlate_g(const KernelG& k, const MackeyField& f,
                        const CosetSpacePtr& cs2);

// Twisted cross-correlation on G/H1:
// [out](x) = sum_y kappa(s2(x)^{-1} y) rho1(h1(s2(x)^{-1} s1(y))) f(y).
// Plain sums throughout; no 1/|G| normalization, so
// unlift(correlate_g(lift_c_to_g(k), lift(f))) = |H1| * twisted_correlate_c(k, f).
SectionField twisted_correlate_c(const KernelC& k, const SectionField& f,
                                 const CosetSpacePtr& cs2);

// An equivariant layer between two field spaces over the same group.
struct LayerSpec {
  CosetSpacePtr cs1, cs2;
  RepPtr rho1, rho2;
  std::variant<KernelD, KernelC, KernelG, TwoArgKernel> kernel;

  // Applies the layer in section coordinates (the D and G forms are
  // routed through the C form; a two-argument kernel goes through the
  // Mackey encoding).
  SectionField apply(const SectionField& f) const;
  // The layer as a matrix on section values (coset-major, fiber-minor).
  Eigen::MatrixXd matrix() const;
};

// Orthonormal basis of {Phi | Phi pi1(g) = pi2(g) Phi} in section
// coordinates, solved over a generating set of G. Columns are vec(Phi).
// Refuses instances with more than 1e6 unknowns.
struct IntertwinerBasis {
  Eigen::MatrixXd columns;  // (n1*n2) x dim
  int dim() const { return static_cast<int>(columns.cols()); }
};

IntertwinerBasis intertwiner_oracle(const CosetSpacePtr& cs1, const RepPtr& rho1,
                                    const CosetSpacePtr& cs2, const RepPtr& rho2,
                                    const std::vector<int>& generators);

// Max over `trials` random fields and all u in G (a random subset of 256
// when |G| > 256) of
//   ||Phi(pi1(u) f) - pi2(u) Phi(f)||_F / max(||Phi(f)||_F, 1e-30).
double equivariance_residual(const LayerSpec& layer, int trials, std::uint64_t seed);

// Entrywise nonlinearity; requires a permutation representation so the
// action commutes with it exactly.
SectionField pointwise_nonlinearity(const SectionField& f,
                                    const std::function<double(double)>& scalar_fn);

// v -> radial_fn(|v|) v / |v| per coset (0 maps to 0); requires an
// orthogonal representation.
SectionField norm_nonlinearity(const SectionField& f,
                               const std::function<double(double)>& radial_fn);

}  // namespace eqc
