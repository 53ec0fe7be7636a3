#include <Eigen/Dense>

#include "doctest.h"
#include "equiconv/catalog.hpp"
#include "equiconv/rep.hpp"

using namespace eqc;

namespace {

bool near(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-12) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("trivial rep is all ones") {
  auto c4 = make_cyclic(4);
  auto rep = trivial_rep(full_subgroup(c4.group));
  CHECK(rep->dim() == 1);
  for (int g = 0; g < 4; ++g) CHECK(rep->matrix(g)(0, 0) == 1.0);
  CHECK(rep->exact());
}

TEST_CASE("regular rep of the flip subgroup is the swap matrix") {
  auto d3 = make_dihedral(3);
  auto rep = regular_rep(d3.subgroups.at("flips"));
  CHECK(rep->dim() == 2);
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(near(rep->matrix(3), swap));  // f
  CHECK(near(rep->matrix(0), Eigen::MatrixXd::Identity(2, 2)));
  CHECK(rep->is_permutation());
}

TEST_CASE("regular rep of C4 is the cyclic shift") {
  auto c4 = make_cyclic(4);
  auto rep = regular_rep(full_subgroup(c4.group));
  CHECK(rep->dim() == 4);
  CHECK(rep->is_permutation());
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(4, 4);
  for (int k = 0; k < 4; ++k) power = rep->matrix(1) * power;
  CHECK(near(power, Eigen::MatrixXd::Identity(4, 4)));
  // Left multiplication by the generator is a single 4-cycle.
  CHECK(rep->matrix(1)(1, 0) == 1.0);
  CHECK(rep->matrix(1)(2, 1) == 1.0);
}

TEST_CASE("regular rep of the trivial subgroup") {
  auto c4 = make_cyclic(4);
  auto rep = regular_rep(c4.subgroups.at("trivial"));
  CHECK(rep->dim() == 1);
  CHECK(rep->matrix(0)(0, 0) == 1.0);
}

TEST_CASE("rotation irrep of C4 at frequency 1") {
  auto c4 = make_cyclic(4);
  auto rep = rotation_irrep(full_subgroup(c4.group), 1);
  Eigen::MatrixXd quarter(2, 2);
  quarter << 0, -1, 1, 0;
  CHECK(near(rep->matrix(1), quarter));
}

TEST_CASE("rotation irrep guards") {
  auto c4 = make_cyclic(4);
  CHECK_THROWS_AS(rotation_irrep(full_subgroup(c4.group), 0), FrequencyZero);
  auto collapsed = rotation_irrep(full_subgroup(c4.group), 0, /*allow_zero=*/true);
  CHECK(collapsed->dim() == 1);
  // Frequency n aliases to the identity on every element.
  auto aliased = rotation_irrep(full_subgroup(c4.group), 4);
  for (int g = 0; g < 4; ++g)
    CHECK(near(aliased->matrix(g), Eigen::MatrixXd::Identity(2, 2)));
  // The full octahedral group is neither cyclic nor dihedral.
  auto oct = make_octahedral();
  CHECK_THROWS_AS(rotation_irrep(full_subgroup(oct.group), 1), NotCyclicOrDihedral);
}

TEST_CASE("rotation irrep of a dihedral subgroup") {
  auto d4 = make_dihedral(4);
  auto rep = rotation_irrep(full_subgroup(d4.group), 1);
  CHECK(rep->dim() == 2);
  CHECK(rep->orthogonality_residual() < 1e-12);
  Eigen::MatrixXd flip(2, 2);
  flip << 1, 0, 0, -1;
  CHECK(near(rep->matrix(4), flip));  // the reflection generator
}

TEST_CASE("direct sums are block diagonal") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto sum = direct_sum(trivial_rep(flips), trivial_rep(flips));
  CHECK(sum->dim() == 2);
  CHECK(near(sum->matrix(3), Eigen::MatrixXd::Identity(2, 2)));

  auto mixed = direct_sum(regular_rep(flips), trivial_rep(flips));
  CHECK(mixed->dim() == 3);
  CHECK(mixed->matrix(3)(0, 1) == 1.0);
  CHECK(mixed->matrix(3)(2, 2) == 1.0);

  auto c4 = make_cyclic(4);
  auto rot = rotation_irrep(full_subgroup(c4.group), 1);
  auto two_rots = direct_sum(rot, rot);
  CHECK(two_rots->dim() == 4);
  CHECK(near(two_rots->matrix(1).topLeftCorner(2, 2), rot->matrix(1)));

  CHECK_THROWS_AS(direct_sum(trivial_rep(flips), trivial_rep(d3.subgroups.at("rotations"))),
                  GroupMismatch);
}

TEST_CASE("explicit rep validation rejects non-homomorphisms") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  std::vector<Eigen::MatrixXd> bad{Eigen::MatrixXd::Identity(1, 1),
                                   2.0 * Eigen::MatrixXd::Identity(1, 1)};
  CHECK_THROWS_AS(explicit_rep(flips, bad), NotRepresentation);
}

TEST_CASE("rho12 on the identity pair is the identity operator") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho1 = regular_rep(flips);
  auto rho2 = regular_rep(flips);
  CHECK(near(rho12(*rho1, *rho2, 0, 0), Eigen::MatrixXd::Identity(4, 4)));
}

TEST_CASE("rho12 with trivial input rep is the output matrix") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho1 = trivial_rep(flips);
  auto rho2 = regular_rep(flips);
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(near(rho12(*rho1, *rho2, 0, 3), swap));
}

TEST_CASE("rho12 is a representation of the product group") {
  auto d3 = make_dihedral(3);
  auto rho1 = regular_rep(d3.subgroups.at("flips"));
  auto rho2 = rotation_irrep(d3.subgroups.at("rotations"), 1);
  const auto& g = *d3.group;
  for (int h1 : rho1->subgroup().elements())
    for (int h2 : rho2->subgroup().elements())
      for (int k1 : rho1->subgroup().elements())
        for (int k2 : rho2->subgroup().elements()) {
          const Eigen::MatrixXd lhs = rho12(*rho1, *rho2, h1, h2) * rho12(*rho1, *rho2, k1, k2);
          const Eigen::MatrixXd rhs = rho12(*rho1, *rho2, g.mul(h1, k1), g.mul(h2, k2));
          REQUIRE(near(lhs, rhs));
        }
}

TEST_CASE("rho1_x at the identity double coset is rho1 itself") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho1 = regular_rep(flips);
  auto dcs = make_double_coset_space(d3.group, flips, flips);
  for (int h : dcs->stabilizer(0).elements())
    CHECK(near(rho1_x(*rho1, *dcs, 0, h), rho1->matrix(h)));
}

TEST_CASE("rho1_x on the free double coset only accepts the identity") {
  auto d3 = make_dihedral(3);
  const Subgroup flips = d3.subgroups.at("flips");
  auto rho1 = regular_rep(flips);
  auto dcs = make_double_coset_space(d3.group, flips, flips);
  REQUIRE(dcs->stabilizer(1).size() == 1);
  CHECK(near(rho1_x(*rho1, *dcs, 1, 0), Eigen::MatrixXd::Identity(2, 2)));
  CHECK_THROWS_AS(rho1_x(*rho1, *dcs, 1, 3), NotInStabilizer);
}

TEST_CASE("rho1_x is a representation of each stabilizer") {
  auto oct = make_octahedral();
  const Subgroup stab = oct.subgroups.at("vertex_stabilizer");
  for (auto rho1 : {trivial_rep(stab), regular_rep(stab), rotation_irrep(stab, 1)}) {
    auto dcs = make_double_coset_space(oct.group, stab, stab);
    for (int x = 0; x < dcs->num(); ++x) {
      // The constructor re-validates the homomorphism property.
      auto rep = rho1_x_rep(rho1, *dcs, x);
      CHECK(rep->dim() == rho1->dim());
      CHECK(rep->subgroup().size() == dcs->stabilizer(x).size());
    }
  }
  // The antipode stabilizer is the full C4 again.
  auto dcs = make_double_coset_space(oct.group, stab, stab);
  CHECK(rho1_x_rep(regular_rep(stab), *dcs, 2)->subgroup().size() == 4);
}

TEST_CASE("catalog reps pass homomorphism and invertibility checks") {
  // Construction validates; this sweep just instantiates every shipped kind.
  for (const auto& entry : catalog_entries()) {
    for (const auto& [name, sub] : entry.subgroups) {
      auto t = trivial_rep(sub);
      CHECK(t->exact());
      if (sub.size() <= 8) {
        auto r = regular_rep(sub);
        CHECK(r->is_permutation());
        CHECK(r->exact());
      }
    }
  }
}
