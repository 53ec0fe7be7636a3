#include "equiconv/rep.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>

#include "equiconv/linalg.hpp"

namespace eqc {

namespace {

constexpr double kHomTol = 1e-12;

bool integral_entries(const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != std::round(m(i, j))) return false;
  return true;
}

}  // namespace

Representation::Representation(Subgroup sub, std::vector<Eigen::MatrixXd> matrices)
    : sub_(std::move(sub)), mats_(std::move(matrices)) {
  if (static_cast<int>(mats_.size()) != sub_.size())
    throw NotRepresentation("one matrix required per subgroup element");
  if (mats_.empty()) throw NotRepresentation("empty representation");
  dim_ = static_cast<int>(mats_[0].rows());
  for (const auto& m : mats_)
    if (m.rows() != dim_ || m.cols() != dim_)
      throw NotRepresentation("matrices must be square and of equal size");

  const auto& g = *sub_.parent();
  const int id_pos = sub_.position(Group::kIdentity);
  if (!(mats_[id_pos] - Eigen::MatrixXd::Identity(dim_, dim_)).isZero(kHomTol))
    throw NotRepresentation("identity element must map to the identity matrix");

  if (sub_.size() <= 72) {
    for (int p = 0; p < sub_.size(); ++p) {
      for (int q = 0; q < sub_.size(); ++q) {
        const int prod = g.mul(sub_.element(p), sub_.element(q));
        const Eigen::MatrixXd diff = mats_[p] * mats_[q] - mats_[sub_.position(prod)];
        if (diff.cwiseAbs().maxCoeff() > kHomTol)
          throw NotRepresentation("homomorphism fails at elements " +
                                  std::to_string(sub_.element(p)) + ", " +
                                  std::to_string(sub_.element(q)));
      }
    }
  }
  for (int p = 0; p < sub_.size(); ++p) {
    const int ipos = sub_.position(g.inv(sub_.element(p)));
    const Eigen::MatrixXd diff =
        mats_[p] * mats_[ipos] - Eigen::MatrixXd::Identity(dim_, dim_);
    if (diff.cwiseAbs().maxCoeff() > kHomTol)
      throw NotRepresentation("matrix for element " + std::to_string(sub_.element(p)) +
                              " is not inverted by its group inverse");
  }

  exact_ = true;
  for (const auto& m : mats_)
    if (!integral_entries(m)) {
      exact_ = false;
      break;
    }
}

const Eigen::MatrixXd& Representation::matrix(int g) const {
  const int pos = sub_.position(g);
  if (pos < 0)
    throw Error("element " + std::to_string(g) + " is not in the representation's subgroup");
  return mats_[pos];
}

bool Representation::is_permutation() const {
  for (const auto& m : mats_) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      int ones = 0;
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (m(i, j) == 1.0)
          ++ones;
        else if (m(i, j) != 0.0)
          return false;
      }
      if (ones != 1) return false;
    }
  }
  return true;
}

double Representation::orthogonality_residual() const {
  double worst = 0.0;
  for (const auto& m : mats_) {
    const Eigen::MatrixXd d = m * m.transpose() - Eigen::MatrixXd::Identity(dim_, dim_);
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

RepPtr trivial_rep(const Subgroup& h) {
  std::vector<Eigen::MatrixXd> mats(h.size(), Eigen::MatrixXd::Identity(1, 1));
  return std::make_shared<const Representation>(h, std::move(mats));
}

RepPtr regular_rep(const Subgroup& h) {
  const auto& g = *h.parent();
  const int n = h.size();
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(n);
  for (int p = 0; p < n; ++p) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int q = 0; q < n; ++q) {
      const int image = h.position(g.mul(h.element(p), h.element(q)));
      m(image, q) = 1.0;
    }
    mats.push_back(std::move(m));
  }
  return std::make_shared<const Representation>(h, std::move(mats));
}

namespace {

struct CyclicOrDihedral {
  int rotation_order = 0;             // n
  std::vector<int> rotation_power;    // per position: k with element = r^k, or -1
  std::vector<int> reflection_power;  // per position: k with element = r^k f, or -1
};

// Recognize H as cyclic of order n or dihedral of order 2n. For the
// dihedral case every element is r^k or r^k f with f an involution
// satisfying f r f = r^{-1}.
std::optional<CyclicOrDihedral> recognize_cyclic_or_dihedral(const Subgroup& h) {
  const auto& g = *h.parent();
  const int n = h.size();

  auto powers_of = [&](int r) {
    std::vector<int> pw{Group::kIdentity};
    int cur = r;
    while (cur != Group::kIdentity) {
      pw.push_back(cur);
      cur = g.mul(cur, r);
    }
    return pw;
  };

  // Cyclic: some element generates everything.
  for (int p = 0; p < n; ++p) {
    const int r = h.element(p);
    if (g.element_order(r) == n) {
      CyclicOrDihedral out;
      out.rotation_order = n;
      out.rotation_power.assign(n, -1);
      out.reflection_power.assign(n, -1);
      const auto pw = powers_of(r);
      for (int k = 0; k < n; ++k) out.rotation_power[h.position(pw[k])] = k;
      return out;
    }
  }

  // Dihedral: a rotation subgroup of index 2 plus reflections.
  if (n % 2 != 0) return std::nullopt;
  const int half = n / 2;
  for (int p = 0; p < n; ++p) {
    const int r = h.element(p);
    if (g.element_order(r) != half) continue;
    const auto pw = powers_of(r);
    std::vector<int> in_rot(n, -1);
    for (int k = 0; k < half; ++k) in_rot[h.position(pw[k])] = k;
    for (int q = 0; q < n; ++q) {
      if (in_rot[q] >= 0) continue;
      const int f = h.element(q);
      if (g.mul(f, f) != Group::kIdentity) continue;
      if (g.mul(g.mul(f, r), f) != g.inv(r)) continue;
      CyclicOrDihedral out;
      out.rotation_order = half;
      out.rotation_power = in_rot;
      out.reflection_power.assign(n, -1);
      bool ok = true;
      for (int t = 0; t < n; ++t) {
        if (in_rot[t] >= 0) continue;
        // Element should be r^k f for some k.
        const int elem = h.element(t);
        const int rk = g.mul(elem, f);  // (r^k f) f = r^k
        const int kpos = h.position(rk);
        if (kpos < 0 || in_rot[kpos] < 0) {
          ok = false;
          break;
        }
        out.reflection_power[t] = in_rot[kpos];
      }
      if (ok) return out;
    }
  }
  return std::nullopt;
}

Eigen::MatrixXd rot2(double angle) {
  Eigen::MatrixXd m(2, 2);
  m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  // Snap near-integer entries so permutation-like cases stay exact.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(m(i, j) - std::round(m(i, j))) < 1e-15) m(i, j) = std::round(m(i, j));
  return m;
}

}  // namespace

RepPtr rotation_irrep(const Subgroup& h, int frequency, bool allow_zero) {
  if (frequency == 0) {
    if (!allow_zero) throw FrequencyZero("frequency 0 collapses to the trivial rep");
    return trivial_rep(h);
  }
  const auto structure = recognize_cyclic_or_dihedral(h);
  if (!structure)
    throw NotCyclicOrDihedral("subgroup of order " + std::to_string(h.size()) +
                              " is neither cyclic nor dihedral");
  const int n = structure->rotation_order;
  if (frequency % n == 0 && n > 1)
    std::cerr << "warning: rotation frequency " << frequency
              << " aliases to the identity for rotation order " << n << "\n";

  Eigen::MatrixXd flip(2, 2);
  flip << 1, 0, 0, -1;
  const double step = 2.0 * std::numbers::pi * frequency / n;
  std::vector<Eigen::MatrixXd> mats(h.size());
  for (int p = 0; p < h.size(); ++p) {
    if (structure->rotation_power[p] >= 0)
      mats[p] = rot2(step * structure->rotation_power[p]);
    else
      mats[p] = rot2(step * structure->reflection_power[p]) * flip;
  }
  return std::make_shared<const Representation>(h, std::move(mats));
}

RepPtr direct_sum(const RepPtr& a, const RepPtr& b) {
  if (!a->subgroup().same_as(b->subgroup()))
    throw GroupMismatch("direct sum requires identical subgroups");
  const int da = a->dim(), db = b->dim();
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(a->subgroup().size());
  for (int p = 0; p < a->subgroup().size(); ++p) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(da + db, da + db);
    m.topLeftCorner(da, da) = a->matrix_at(p);
    m.bottomRightCorner(db, db) = b->matrix_at(p);
    mats.push_back(std::move(m));
  }
  return std::make_shared<const Representation>(a->subgroup(), std::move(mats));
}

RepPtr explicit_rep(const Subgroup& h, std::vector<Eigen::MatrixXd> matrices) {
  return std::make_shared<const Representation>(h, std::move(matrices));
}

Eigen::MatrixXd rho12(const Representation& rho1, const Representation& rho2,
                      int h1, int h2) {
  // vec(rho2(h2) Psi rho1(h1)^{-1}) = (rho1(h1)^{-T} kron rho2(h2)) vec(Psi)
  return kron(rho1.inverse_matrix(h1).transpose(), rho2.matrix(h2));
}

Eigen::MatrixXd rho1_x(const Representation& rho1, const DoubleCosetSpace& dcs,
                       int x, int h) {
  if (!dcs.stabilizer(x).contains(h))
    throw NotInStabilizer("element " + std::to_string(h) +
                          " does not stabilize double coset " + std::to_string(x));
  const auto& g = *dcs.parent();
  const int gm = dcs.gamma(x);
  const int conj = g.mul(g.mul(g.inv(gm), h), gm);
  return rho1.matrix(conj);  // throws unless conj lies in H1
}

RepPtr rho1_x_rep(const RepPtr& rho1, const DoubleCosetSpace& dcs, int x) {
  const Subgroup& stab = dcs.stabilizer(x);
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(stab.size());
  for (int e : stab.elements()) mats.push_back(rho1_x(*rho1, dcs, x, e));
  return std::make_shared<const Representation>(stab, std::move(mats));
}

}  // namespace eqc
