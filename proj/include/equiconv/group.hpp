#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equiconv/errors.hpp"

namespace eqc {

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// A finite group given by a validated Cayley table. Element 0 is always
// the identity; table(i, j) is the index of g_i * g_j.
class Group {
 public:
  static constexpr int kIdentity = 0;

  int order() const { return order_; }
  int identity_index() const { return kIdentity; }
  int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<int>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // Order of the cyclic subgroup generated by a.
  int element_order(int a) const;

  friend GroupPtr build_group(const std::vector<std::vector<int>>& table,
                              std::vector<std::string> labels);

 private:
  Group() = default;
  int order_ = 0;
  std::vector<int> table_;  // row-major, order x order
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
};

// Validates the table (Latin square, identity at index 0, inverses,
// associativity — exhaustive for order <= 256, randomized sampling of
// at least 10*order^2 triples above) and builds the group.
GroupPtr build_group(const std::vector<std::vector<int>>& table,
                     std::vector<std::string> labels = {});

// A subgroup of `parent`, stored as a sorted list of parent indices.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupPtr parent, std::vector<int> sorted_elements);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool contains(int g) const { return position_[g] >= 0; }
  // Position of parent element g in the sorted element list, -1 if absent.
  int position(int g) const { return position_[g]; }
  int element(int pos) const { return elements_[pos]; }

  bool same_as(const Subgroup& other) const {
    return parent_ == other.parent_ && elements_ == other.elements_;
  }

 private:
  GroupPtr parent_;
  std::vector<int> elements_;
  std::vector<int> position_;  // parent index -> position, -1 if absent
};

// Closure of the generators; always a subgroup.
Subgroup build_subgroup(const GroupPtr& g, const std::vector<int>& generators);
// The whole group as a subgroup of itself.
Subgroup full_subgroup(const GroupPtr& g);

// Representative-choice policies for sections. SmallestIndex is the
// default; Rotated picks the second-smallest member where one exists
// (the identity coset always keeps the identity) and exists to show
// downstream results do not depend on the choice.
enum class SectionPolicy { SmallestIndex, Rotated };

// The left coset space G/H with projection, membership and a section s.
// Cosets are indexed by their smallest member, so the identity coset is
// index 0 (the origin). s(origin) = e always holds.
class CosetSpace {
 public:
  const GroupPtr& parent() const { return parent_; }
  const Subgroup& subgroup() const { return subgroup_; }
  int num_cosets() const { return num_cosets_; }
  int coset_of(int g) const { return coset_of_[g]; }
  const std::vector<int>& members(int x) const { return members_[x]; }
  int section(int x) const { return section_[x]; }
  int origin() const { return 0; }

  // Action of g on the coset x: p(g * s(x)).
  int act(int g, int x) const { return coset_of_[parent_->mul(g, section_[x])]; }

  // h(x, g) = s(gx)^{-1} g s(x); always a member of H.
  int h(int x, int g) const;

  // h(g) = s(gH)^{-1} g = h(origin, g).
  int h_of_element(int g) const;

  // g = rep * h with rep = s(gH) and h in H; the decomposition is unique.
  std::pair<int, int> decompose(int g) const;

  friend CosetSpace left_cosets(const GroupPtr& g, const Subgroup& h,
                                SectionPolicy policy);
  friend CosetSpace left_cosets(const GroupPtr& g, const Subgroup& h,
                                const std::vector<int>& explicit_section);

 private:
  CosetSpace() = default;
  void build_partition(const GroupPtr& g, const Subgroup& h);

  GroupPtr parent_;
  Subgroup subgroup_;
  int num_cosets_ = 0;
  std::vector<int> coset_of_;
  std::vector<std::vector<int>> members_;
  std::vector<int> section_;
};

using CosetSpacePtr = std::shared_ptr<const CosetSpace>;

CosetSpace left_cosets(const GroupPtr& g, const Subgroup& h,
                       SectionPolicy policy = SectionPolicy::SmallestIndex);
// Explicit representatives, one per coset in coset-index order. Each must
// lie in its coset and the identity coset must get the identity.
CosetSpace left_cosets(const GroupPtr& g, const Subgroup& h,
                       const std::vector<int>& explicit_section);

CosetSpacePtr make_coset_space(const GroupPtr& g, const Subgroup& h,
                               SectionPolicy policy = SectionPolicy::SmallestIndex);

// The double coset space H2\G/H1 with representatives gamma and the
// per-double-coset stabilizer gamma(x) H1 gamma(x)^{-1}  intersect  H2.
// Double cosets are indexed by their smallest member, so the double
// coset of the identity is index 0 with gamma = e.
class DoubleCosetSpace {
 public:
  const GroupPtr& parent() const { return parent_; }
  const Subgroup& left() const { return left_; }    // H2
  const Subgroup& right() const { return right_; }  // H1
  int num() const { return num_; }
  int dcoset_of(int g) const { return dcoset_of_[g]; }
  int gamma(int x) const { return gamma_[x]; }
  const Subgroup& stabilizer(int x) const { return stabilizers_[x]; }
  const std::vector<int>& members(int x) const { return members_[x]; }

  friend DoubleCosetSpace double_cosets(const GroupPtr& g, const Subgroup& h2,
                                        const Subgroup& h1, SectionPolicy policy);

 private:
  DoubleCosetSpace() = default;
  GroupPtr parent_;
  Subgroup left_, right_;
  int num_ = 0;
  std::vector<int> dcoset_of_;
  std::vector<int> gamma_;
  std::vector<Subgroup> stabilizers_;
  std::vector<std::vector<int>> members_;
};

using DoubleCosetSpacePtr = std::shared_ptr<const DoubleCosetSpace>;

DoubleCosetSpace double_cosets(const GroupPtr& g, const Subgroup& h2,
                               const Subgroup& h1,
                               SectionPolicy policy = SectionPolicy::SmallestIndex);

DoubleCosetSpacePtr make_double_coset_space(
    const GroupPtr& g, const Subgroup& h2, const Subgroup& h1,
    SectionPolicy policy = SectionPolicy::SmallestIndex);

// Elements of H2 stabilizing the coset x of G/H1, by enumeration.
std::vector<int> coset_stabilizer(const CosetSpace& cs1, const Subgroup& h2, int x);

// Semidirect product N x| H. `action` maps each H element (by index) to
// an automorphism of N given as a permutation of N's indices. Elements
// are encoded as n_idx * |H| + h_idx, so the identity is 0, the
// canonical copy of N is {(n, e)} and the smallest-index section of
// G/H picks s(nH) = (n, e).
struct SemidirectProduct {
  GroupPtr group;
  std::vector<int> embed_n;  // N index -> G index
  std::vector<int> embed_h;  // H index -> G index
};

SemidirectProduct semidirect_product(const GroupPtr& n, const GroupPtr& h,
                                     const std::vector<std::vector<int>>& action);

// Direct product A x B with index a * |B| + b and componentwise product.
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

}  // namespace eqc
