#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "equiconv/group.hpp"

namespace eqc {

// A matrix representation of a subgroup: one invertible real matrix per
// element, validated as a homomorphism at construction (exhaustively for
// subgroups of order <= 72, tolerance 1e-12 per entry).
class Representation {
 public:
  Representation(Subgroup sub, std::vector<Eigen::MatrixXd> matrices);

  const Subgroup& subgroup() const { return sub_; }
  int dim() const { return dim_; }
  // Matrix for a parent-group element index; the element must belong to
  // the subgroup.
  const Eigen::MatrixXd& matrix(int g) const;
  const Eigen::MatrixXd& matrix_at(int pos) const { return mats_[pos]; }
  Eigen::MatrixXd inverse_matrix(int g) const { return matrix(sub_.parent()->inv(g)); }
  // True when all entries are integers; permutation and trivial
  // representations take exact integer paths in tests.
  bool exact() const { return exact_; }
  bool is_permutation() const;
  double orthogonality_residual() const;

 private:
  Subgroup sub_;
  int dim_ = 0;
  std::vector<Eigen::MatrixXd> mats_;  // per position in sub_.elements()
  bool exact_ = false;
};

using RepPtr = std::shared_ptr<const Representation>;

RepPtr trivial_rep(const Subgroup& h);
// Left-multiplication permutation matrices on the sorted element list.
RepPtr regular_rep(const Subgroup& h);
// 2x2 rotation blocks for a cyclic subgroup (generator -> rotation by
// 2*pi*frequency/n); dihedral subgroups additionally map reflections to
// 2x2 reflection matrices. frequency == 0 is rejected unless
// allow_zero, which collapses to the 1-dimensional trivial rep.
// frequency % n == 0 aliases to the identity and warns on stderr.
RepPtr rotation_irrep(const Subgroup& h, int frequency, bool allow_zero = false);
RepPtr direct_sum(const RepPtr& a, const RepPtr& b);
RepPtr explicit_rep(const Subgroup& h, std::vector<Eigen::MatrixXd> matrices);

// The operator Psi -> rho2(h2) * Psi * rho1(h1)^{-1} on d2 x d1 matrices,
// realized as a (d2*d1) x (d2*d1) matrix acting on column-major vec(Psi).
// As a function of (h1, h2) this is a representation of H1 x H2.
Eigen::MatrixXd rho12(const Representation& rho1, const Representation& rho2,
                      int h1, int h2);

// rho1^x(h) = rho1(gamma(x)^{-1} h gamma(x)) for h in the stabilizer of
// the double coset x.
Eigen::MatrixXd rho1_x(const Representation& rho1, const DoubleCosetSpace& dcs,
                       int x, int h);

// The same values packaged as a representation of the stabilizer subgroup.
RepPtr rho1_x_rep(const RepPtr& rho1, const DoubleCosetSpace& dcs, int x);

}  // namespace eqc
