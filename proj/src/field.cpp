#include "equiconv/field.hpp"

#include <cmath>

namespace eqc {

double MackeyField::mackey_residual() const {
  const auto& g = *cs->parent();
  double worst = 0.0;
  for (int a = 0; a < g.order(); ++a) {
    for (int h : cs->subgroup().elements()) {
      const Eigen::VectorXd expect = rep->matrix(g.inv(h)) * values[a];
      const Eigen::VectorXd diff = values[g.mul(a, h)] - expect;
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

MackeyField lift(const SectionField& f) {
  const auto& g = *f.cs->parent();
  MackeyField out{f.cs, f.rep, {}};
  out.values.resize(g.order());
  for (int a = 0; a < g.order(); ++a) {
    const int twist = f.cs->h_of_element(a);
    out.values[a] = f.rep->matrix(g.inv(twist)) * f.values[f.cs->coset_of(a)];
  }
  return out;
}

SectionField unlift(const MackeyField& f, double tol) {
  const double res = f.mackey_residual();
  if (res > tol)
    throw NotMackey("Mackey residual " + std::to_string(res) + " exceeds tolerance");
  SectionField out{f.cs, f.rep, {}};
  out.values.resize(f.cs->num_cosets());
  for (int x = 0; x < f.cs->num_cosets(); ++x) out.values[x] = f.values[f.cs->section(x)];
  return out;
}

MackeyField act(int g, const MackeyField& f) {
  const auto& grp = *f.cs->parent();
  MackeyField out{f.cs, f.rep, {}};
  out.values.resize(grp.order());
  const int gi = grp.inv(g);
  for (int k = 0; k < grp.order(); ++k) out.values[k] = f.values[grp.mul(gi, k)];
  return out;
}

SectionField act(int g, const SectionField& f) {
  const auto& grp = *f.cs->parent();
  SectionField out{f.cs, f.rep, {}};
  out.values.resize(f.cs->num_cosets());
  const int gi = grp.inv(g);
  for (int x = 0; x < f.cs->num_cosets(); ++x) {
    const int twist = f.cs->h(x, gi);
    out.values[x] = f.rep->matrix(grp.inv(twist)) * f.values[f.cs->act(gi, x)];
  }
  return out;
}

MackeyField project_to_mackey(const std::vector<Eigen::VectorXd>& raw,
                              const CosetSpacePtr& cs, const RepPtr& rep) {
  const auto& g = *cs->parent();
  if (static_cast<int>(raw.size()) != g.order())
    throw ShapeMismatch("raw values must cover every group element");
  MackeyField out{cs, rep, {}};
  out.values.resize(g.order());
  const double scale = 1.0 / cs->subgroup().size();
  for (int a = 0; a < g.order(); ++a) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(rep->dim());
    for (int h : cs->subgroup().elements()) acc += rep->matrix(h) * raw[g.mul(a, h)];
    out.values[a] = scale * acc;
  }
  return out;
}

Eigen::MatrixXd induced_matrix(const CosetSpace& cs, const Representation& rep, int g) {
  const auto& grp = *cs.parent();
  const int d = rep.dim();
  const int n = cs.num_cosets() * d;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const int gi = grp.inv(g);
  for (int x = 0; x < cs.num_cosets(); ++x) {
    const int src = cs.act(gi, x);
    const Eigen::MatrixXd block = rep.inverse_matrix(cs.h(x, gi));
    m.block(x * d, src * d, d, d) = block;
  }
  return m;
}

Eigen::VectorXd random_vector(int dim, std::uint64_t& state) {
  // splitmix64 stream mapped to [-1, 1]; self-contained so results do
  // not depend on standard-library distribution internals.
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    v(i) = 2.0 * static_cast<double>(z >> 11) / 9007199254740992.0 - 1.0;
  }
  return v;
}

SectionField random_section_field(const CosetSpacePtr& cs, const RepPtr& rep,
                                  std::uint64_t& state) {
  SectionField f{cs, rep, {}};
  f.values.resize(cs->num_cosets());
  for (auto& v : f.values) v = random_vector(rep->dim(), state);
  return f;
}

}  // namespace eqc
