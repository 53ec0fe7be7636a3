#include <Eigen/Dense>
#include <vector>

#include "doctest.h"
#include "equiconv/catalog.hpp"
#include "equiconv/field.hpp"
#include "equiconv/linalg.hpp"

using namespace eqc;

namespace {

bool near(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol = 1e-12) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

SectionField zero_field(const CosetSpacePtr& cs, const RepPtr& rep) {
  SectionField f{cs, rep, {}};
  f.values.assign(cs->num_cosets(), Eigen::VectorXd::Zero(rep->dim()));
  return f;
}

// Stacks the constraint f(gh) = rho(h^{-1}) f(g) into one homogeneous
// system on the |G| * dim unknowns; its nullity counts the independent
// Mackey functions.
int mackey_solution_dim(const CosetSpace& cs, const Representation& rep) {
  const auto& g = *cs.parent();
  const int d = rep.dim();
  const int unknowns = g.order() * d;
  std::vector<Eigen::MatrixXd> rows;
  Eigen::MatrixXd a =
      Eigen::MatrixXd::Zero(g.order() * cs.subgroup().size() * d, unknowns);
  int row = 0;
  for (int a_idx = 0; a_idx < g.order(); ++a_idx) {
    for (int h : cs.subgroup().elements()) {
      const int moved = g.mul(a_idx, h);
      a.block(row, moved * d, d, d) = Eigen::MatrixXd::Identity(d, d);
      a.block(row, a_idx * d, d, d) -= rep.matrix(g.inv(h));
      row += d;
    }
  }
  return static_cast<int>(nullspace(a).cols());
}

}  // namespace

TEST_CASE("lift with a trivial rep is constant on cosets") {
  auto d3 = make_dihedral(3);
  auto cs = make_coset_space(d3.group, d3.subgroups.at("flips"));
  auto rep = trivial_rep(d3.subgroups.at("flips"));
  std::uint64_t state = 7;
  const SectionField f = random_section_field(cs, rep, state);
  const MackeyField lifted = lift(f);
  for (int a = 0; a < d3.group->order(); ++a)
    CHECK(lifted.values[a](0) == f.values[cs->coset_of(a)](0));
  CHECK(lifted.mackey_residual() == 0.0);
}

TEST_CASE("lift of a single-coset field spreads by the fiber rep") {
  auto d3 = make_dihedral(3);
  auto cs = make_coset_space(d3.group, d3.subgroups.at("flips"));
  auto rep = regular_rep(d3.subgroups.at("flips"));
  SectionField f = zero_field(cs, rep);
  const int x = cs->coset_of(1);  // the coset rH
  f.values[x] << 1.0, 2.0;
  const MackeyField lifted = lift(f);
  const auto& g = *d3.group;
  for (int h : cs->subgroup().elements()) {
    const int where = g.mul(cs->section(x), h);
    CHECK(near(lifted.values[where], rep->matrix(g.inv(h)) * f.values[x]));
  }
  // Values away from the support stay zero.
  for (int a = 0; a < g.order(); ++a)
    if (cs->coset_of(a) != x) CHECK(lifted.values[a].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero lifts to zero") {
  auto d3 = make_dihedral(3);
  auto cs = make_coset_space(d3.group, d3.subgroups.at("flips"));
  auto rep = regular_rep(d3.subgroups.at("flips"));
  const MackeyField lifted = lift(zero_field(cs, rep));
  for (const auto& v : lifted.values) CHECK(v.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lift and unlift are mutually inverse") {
  for (const auto& entry : {make_dihedral(3), make_octahedral()}) {
    for (const auto& [name, sub] : entry.subgroups) {
      if (sub.size() > 4) continue;
      auto cs = make_coset_space(entry.group, sub);
      auto rep = regular_rep(sub);
      std::uint64_t state = 11;
      const SectionField f = random_section_field(cs, rep, state);
      const SectionField back = unlift(lift(f));
      for (size_t x = 0; x < f.values.size(); ++x) CHECK(near(back.values[x], f.values[x]));

      std::vector<Eigen::VectorXd> raw(entry.group->order());
      for (auto& v : raw) v = random_vector(rep->dim(), state);
      const MackeyField m = project_to_mackey(raw, cs, rep);
      const MackeyField again = lift(unlift(m));
      for (size_t a = 0; a < m.values.size(); ++a)
        CHECK(near(again.values[a], m.values[a], 1e-12));
    }
  }
}

TEST_CASE("unlift rejects non-Mackey input") {
  auto d3 = make_dihedral(3);
  auto cs = make_coset_space(d3.group, d3.subgroups.at("flips"));
  auto rep = regular_rep(d3.subgroups.at("flips"));
  MackeyField bad{cs, rep, {}};
  std::uint64_t state = 3;
  bad.values.resize(d3.group->order());
  for (auto& v : bad.values) v = random_vector(rep->dim(), state);
  CHECK(bad.mackey_residual() > 1e-3);
  CHECK_THROWS_AS(unlift(bad), NotMackey);
}

TEST_CASE("group action on Mackey fields translates cosets") {
  auto d3 = make_dihedral(3);
  auto cs = make_coset_space(d3.group, d3.subgroups.at("flips"));
  auto rep = trivial_rep(d3.subgroups.at("flips"));
  // Indicator of the identity coset, lifted.
  SectionField f = zero_field(cs, rep);
  f.values[cs->origin()](0) = 1.0;
  const MackeyField lifted = lift(f);
  const MackeyField moved = act(1, lifted);  // r
  const SectionField back = unlift(moved);
  for (int x = 0; x < cs->num_cosets(); ++x)
    CHECK(back.values[x](0) == (x == cs->coset_of(1) ? 1.0 : 0.0));
}

TEST_CASE("identity acts trivially in both encodings") {
  auto oct = make_octahedral();
  auto cs = make_coset_space(oct.group, oct.subgroups.at("vertex_stabilizer"));
  auto rep = rotation_irrep(oct.subgroups.at("vertex_stabilizer"), 1);
  std::uint64_t state = 5;
  const SectionField f = random_section_field(cs, rep, state);
  const SectionField same = act(0, f);
  for (size_t x = 0; x < f.values.size(); ++x) CHECK(near(same.values[x], f.values[x]));
  const MackeyField fm = lift(f);
  const MackeyField same_m = act(0, fm);
  for (size_t a = 0; a < fm.values.size(); ++a) CHECK(near(same_m.values[a], fm.values[a]));
}

TEST_CASE("both induced actions are representations") {
  for (const auto& entry : {make_dihedral(3), make_cyclic(4), make_p4_torus(3)}) {
    for (const auto& [name, sub] : entry.subgroups) {
      if (sub.size() > 4 || name == "trivial" || name == "translations") continue;
      auto cs = make_coset_space(entry.group, sub);
      const auto& g = *entry.group;
      for (auto rep : {trivial_rep(sub), regular_rep(sub)}) {
        std::uint64_t state = 17;
        const SectionField f = random_section_field(cs, rep, state);
        for (int g1 = 0; g1 < g.order(); ++g1) {
          for (int g2 = 0; g2 < g.order(); ++g2) {
            const SectionField lhs = act(g1, act(g2, f));
            const SectionField rhs = act(g.mul(g1, g2), f);
            for (size_t x = 0; x < lhs.values.size(); ++x)
              REQUIRE(near(lhs.values[x], rhs.values[x]));
          }
        }
      }
    }
  }
}

TEST_CASE("lifting intertwines the two actions") {
  // act(g) . lift = lift . act(g), exhaustively over g.
  for (const auto& entry : {make_dihedral(3), make_octahedral()}) {
    const auto sub = entry.subgroups.at(entry.name == "octahedral" ? "vertex_stabilizer"
                                                                   : "flips");
    auto cs = make_coset_space(entry.group, sub);
    for (auto rep : {trivial_rep(sub), regular_rep(sub), rotation_irrep(sub, 1)}) {
      std::uint64_t state = 23;
      const SectionField f = random_section_field(cs, rep, state);
      for (int g = 0; g < entry.group->order(); ++g) {
        const MackeyField lhs = act(g, lift(f));
        const MackeyField rhs = lift(act(g, f));
        for (size_t a = 0; a < lhs.values.size(); ++a)
          REQUIRE(near(lhs.values[a], rhs.values[a]));
      }
    }
  }
}

TEST_CASE("induced matrices match the action") {
  auto d3 = make_dihedral(3);
  auto cs = make_coset_space(d3.group, d3.subgroups.at("flips"));
  auto rep = regular_rep(d3.subgroups.at("flips"));
  std::uint64_t state = 29;
  const SectionField f = random_section_field(cs, rep, state);
  Eigen::VectorXd flat(cs->num_cosets() * rep->dim());
  for (int x = 0; x < cs->num_cosets(); ++x)
    flat.segment(x * rep->dim(), rep->dim()) = f.values[x];
  for (int g = 0; g < d3.group->order(); ++g) {
    const Eigen::VectorXd moved = induced_matrix(*cs, *rep, g) * flat;
    const SectionField expect = act(g, f);
    for (int x = 0; x < cs->num_cosets(); ++x)
      REQUIRE(near(moved.segment(x * rep->dim(), rep->dim()), expect.values[x]));
  }
}

TEST_CASE("project_to_mackey fixes Mackey functions") {
  auto d3 = make_dihedral(3);
  auto cs = make_coset_space(d3.group, d3.subgroups.at("flips"));
  auto rep = regular_rep(d3.subgroups.at("flips"));
  std::uint64_t state = 31;
  const SectionField f = random_section_field(cs, rep, state);
  const MackeyField m = lift(f);
  const MackeyField fixed = project_to_mackey(m.values, cs, rep);
  for (size_t a = 0; a < m.values.size(); ++a)
    CHECK(near(fixed.values[a], m.values[a], 1e-14));
}

TEST_CASE("project_to_mackey with trivial rep is the coset mean") {
  auto d3 = make_dihedral(3);
  auto cs = make_coset_space(d3.group, d3.subgroups.at("flips"));
  auto rep = trivial_rep(d3.subgroups.at("flips"));
  std::uint64_t state = 37;
  std::vector<Eigen::VectorXd> raw(d3.group->order());
  for (auto& v : raw) v = random_vector(1, state);
  const MackeyField m = project_to_mackey(raw, cs, rep);
  for (int a = 0; a < d3.group->order(); ++a) {
    double mean = 0.0;
    for (int mem : cs->members(cs->coset_of(a))) mean += raw[mem](0);
    mean /= cs->subgroup().size();
    CHECK(m.values[a](0) == doctest::Approx(mean).epsilon(1e-14));
  }
}

TEST_CASE("random raw values project to small Mackey residual") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    auto oct = make_octahedral();
    const auto sub = oct.subgroups.at("vertex_stabilizer");
    auto cs = make_coset_space(oct.group, sub);
    auto rep = regular_rep(sub);
    std::uint64_t state = seed;
    std::vector<Eigen::VectorXd> raw(oct.group->order());
    for (auto& v : raw) v = random_vector(rep->dim(), state);
    CHECK(project_to_mackey(raw, cs, rep).mackey_residual() < 1e-12);
  }
}

TEST_CASE("the Mackey constraint space has dimension |G/H| * dim(rho)") {
  auto d3 = make_dihedral(3);
  auto flips = d3.subgroups.at("flips");
  CHECK(mackey_solution_dim(left_cosets(d3.group, flips), *regular_rep(flips)) == 3 * 2);
  CHECK(mackey_solution_dim(left_cosets(d3.group, flips), *trivial_rep(flips)) == 3);

  auto oct = make_octahedral();
  auto stab = oct.subgroups.at("vertex_stabilizer");
  CHECK(mackey_solution_dim(left_cosets(oct.group, stab), *rotation_irrep(stab, 1)) ==
        6 * 2);
}
