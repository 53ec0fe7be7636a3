#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "equiconv/group.hpp"
#include "equiconv/rep.hpp"

namespace eqc {

// A feature field encoded redundantly on the whole group: one value per
// element, subject to f(gh) = rho(h^{-1}) f(g).
struct MackeyField {
  CosetSpacePtr cs;
  RepPtr rep;
  std::vector<Eigen::VectorXd> values;  // per element of G, length rep->dim()

  // Largest violation of the Mackey condition over all (g, h).
  double mackey_residual() const;
};

// The same field encoded without redundancy: one value per coset.
struct SectionField {
  CosetSpacePtr cs;
  RepPtr rep;
  std::vector<Eigen::VectorXd> values;  // per coset, length rep->dim()
};

// Lifting isomorphism between the two encodings:
// [lift f](g) = rho(h(g)^{-1}) f(gH) and [unlift f'](x) = f'(s(x)).
MackeyField lift(const SectionField& f);
SectionField unlift(const MackeyField& f, double tol = 1e-10);

// Induced action of the group on each encoding. On Mackey functions it
// is left translation; on section functions the fiber picks up the
// twist rho(h(x, g^{-1})^{-1}).
MackeyField act(int g, const MackeyField& f);
SectionField act(int g, const SectionField& f);

// Averages an arbitrary per-element function onto the Mackey subspace:
// f(g) = (1/|H|) sum_h rho(h) raw(gh). Fixes Mackey functions.
MackeyField project_to_mackey(const std::vector<Eigen::VectorXd>& raw,
                              const CosetSpacePtr& cs, const RepPtr& rep);

// Matrix of the induced action on section values in the standard basis
// (coset-major, fiber-minor): block (x, g^{-1}x) = rho(h(x,g^{-1}))^{-1}.
Eigen::MatrixXd induced_matrix(const CosetSpace& cs, const Representation& rep, int g);

// Deterministic uniform values in [-1, 1]; the generator state advances.
Eigen::VectorXd random_vector(int dim, std::uint64_t& state);
SectionField random_section_field(const CosetSpacePtr& cs, const RepPtr& rep,
                                  std::uint64_t& state);

}  // namespace eqc
