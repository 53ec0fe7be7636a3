#include "equiconv/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace eqc {

namespace {

std::string index_msg(const std::string& what, std::initializer_list<int> idx) {
  std::ostringstream os;
  os << what << " at indices (";
  bool first = true;
  for (int i : idx) {
    if (!first) os << ", ";
    os << i;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

int Group::element_order(int a) const {
  int ord = 1;
  int cur = a;
  while (cur != kIdentity) {
    cur = mul(cur, a);
    ++ord;
  }
  return ord;
}

GroupPtr build_group(const std::vector<std::vector<int>>& table,
                     std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotLatinSquare("empty table");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw NotLatinSquare(index_msg("row length mismatch", {i}));
    for (int j = 0; j < n; ++j) {
      if (table[i][j] < 0 || table[i][j] >= n)
        throw NotLatinSquare(index_msg("entry out of range", {i, j}));
    }
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw BadParams("labels length does not match table size");

  // Latin square: every row and column is a permutation.
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int j = 0; j < n; ++j) {
      if (seen_row[table[i][j]]) throw NotLatinSquare(index_msg("repeated row entry", {i, j}));
      seen_row[table[i][j]] = 1;
      if (seen_col[table[j][i]]) throw NotLatinSquare(index_msg("repeated column entry", {j, i}));
      seen_col[table[j][i]] = 1;
    }
  }

  // Identity must be element 0: row 0 and column 0 are the identity map.
  for (int j = 0; j < n; ++j)
    if (table[0][j] != j) throw NoIdentity(index_msg("row 0 is not the identity", {j}));
  for (int i = 0; i < n; ++i)
    if (table[i][0] != i) throw NoIdentity(index_msg("column 0 is not the identity", {i}));

  // Two-sided inverses.
  std::vector<int> inverse(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (table[i][j] == 0 && table[j][i] == 0) {
        inverse[i] = j;
        break;
      }
    }
    if (inverse[i] < 0) throw NoInverse(index_msg("no two-sided inverse", {i}));
  }

  // Associativity: exhaustive up to order 256, sampled beyond.
  auto check_triple = [&](int a, int b, int c) {
    if (table[table[a][b]][c] != table[a][table[b][c]])
      throw NotAssociative(index_msg("associativity fails", {a, b, c}));
  };
  if (n <= 256) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eedu);
    std::uniform_int_distribution<int> pick(0, n - 1);
    const long long samples = 10LL * n * n;
    for (long long s = 0; s < samples; ++s) check_triple(pick(rng), pick(rng), pick(rng));
  }

  if (labels.empty()) {
    labels.resize(n);
    for (int i = 0; i < n; ++i) labels[i] = "g" + std::to_string(i);
  }

  auto g = std::shared_ptr<Group>(new Group());
  g->order_ = n;
  g->table_.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g->table_[static_cast<size_t>(i) * n + j] = table[i][j];
  g->inverse_ = std::move(inverse);
  g->labels_ = std::move(labels);
  return g;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> sorted_elements)
    : parent_(std::move(parent)), elements_(std::move(sorted_elements)) {
  position_.assign(parent_->order(), -1);
  for (int p = 0; p < static_cast<int>(elements_.size()); ++p)
    position_[elements_[p]] = p;
}

Subgroup build_subgroup(const GroupPtr& g, const std::vector<int>& generators) {
  for (int gen : generators)
    if (gen < 0 || gen >= g->order()) throw BadParams("generator index out of range");
  std::set<int> closure{Group::kIdentity};
  std::vector<int> frontier{Group::kIdentity};
  for (int gen : generators)
    if (closure.insert(gen).second) frontier.push_back(gen);
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier) {
      for (int b : closure) {
        for (int c : {g->mul(a, b), g->mul(b, a)}) {
          if (closure.insert(c).second) next.push_back(c);
        }
      }
    }
    frontier = std::move(next);
  }
  return Subgroup(g, std::vector<int>(closure.begin(), closure.end()));
}

Subgroup full_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

void CosetSpace::build_partition(const GroupPtr& g, const Subgroup& h) {
  parent_ = g;
  subgroup_ = h;
  const int n = g->order();
  coset_of_.assign(n, -1);
  // Scan in index order so cosets come out sorted by smallest member.
  for (int a = 0; a < n; ++a) {
    if (coset_of_[a] >= 0) continue;
    const int x = num_cosets_++;
    std::vector<int> mem;
    for (int e : h.elements()) {
      const int m = g->mul(a, e);
      coset_of_[m] = x;
      mem.push_back(m);
    }
    std::sort(mem.begin(), mem.end());
    members_.push_back(std::move(mem));
  }
}

int CosetSpace::h(int x, int g) const {
  const int gx = act(g, x);
  const int r = parent_->mul(parent_->inv(section_[gx]), parent_->mul(g, section_[x]));
  return r;
}

int CosetSpace::h_of_element(int g) const {
  return parent_->mul(parent_->inv(section_[coset_of_[g]]), g);
}

std::pair<int, int> CosetSpace::decompose(int g) const {
  const int rep = section_[coset_of_[g]];
  return {rep, parent_->mul(parent_->inv(rep), g)};
}

CosetSpace left_cosets(const GroupPtr& g, const Subgroup& h, SectionPolicy policy) {
  CosetSpace cs;
  cs.build_partition(g, h);
  cs.section_.resize(cs.num_cosets_);
  for (int x = 0; x < cs.num_cosets_; ++x) {
    const auto& mem = cs.members_[x];
    if (policy == SectionPolicy::Rotated && mem.size() > 1 && mem[0] != Group::kIdentity)
      cs.section_[x] = mem[1];
    else
      cs.section_[x] = mem[0];
  }
  return cs;
}

CosetSpace left_cosets(const GroupPtr& g, const Subgroup& h,
                       const std::vector<int>& explicit_section) {
  CosetSpace cs;
  cs.build_partition(g, h);
  if (static_cast<int>(explicit_section.size()) != cs.num_cosets_)
    throw ExplicitSectionInvalid("section length does not match number of cosets");
  for (int x = 0; x < cs.num_cosets_; ++x) {
    const int rep = explicit_section[x];
    if (rep < 0 || rep >= g->order() || cs.coset_of_[rep] != x)
      throw ExplicitSectionInvalid("representative " + std::to_string(rep) +
                                   " is not in coset " + std::to_string(x));
  }
  if (explicit_section[0] != Group::kIdentity)
    throw ExplicitSectionInvalid("identity coset must be represented by the identity");
  cs.section_ = explicit_section;
  return cs;
}

CosetSpacePtr make_coset_space(const GroupPtr& g, const Subgroup& h, SectionPolicy policy) {
  return std::make_shared<const CosetSpace>(left_cosets(g, h, policy));
}

std::vector<int> coset_stabilizer(const CosetSpace& cs1, const Subgroup& h2, int x) {
  std::vector<int> stab;
  for (int e : h2.elements())
    if (cs1.act(e, x) == x) stab.push_back(e);
  return stab;
}

DoubleCosetSpace double_cosets(const GroupPtr& g, const Subgroup& h2,
                               const Subgroup& h1, SectionPolicy policy) {
  DoubleCosetSpace ds;
  ds.parent_ = g;
  ds.left_ = h2;
  ds.right_ = h1;
  const int n = g->order();
  ds.dcoset_of_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (ds.dcoset_of_[a] >= 0) continue;
    const int x = ds.num_++;
    std::vector<int> mem;
    for (int e2 : h2.elements()) {
      const int ea = g->mul(e2, a);
      for (int e1 : h1.elements()) {
        const int m = g->mul(ea, e1);
        if (ds.dcoset_of_[m] < 0) {
          ds.dcoset_of_[m] = x;
          mem.push_back(m);
        }
      }
    }
    std::sort(mem.begin(), mem.end());
    ds.members_.push_back(std::move(mem));
  }
  ds.gamma_.resize(ds.num_);
  for (int x = 0; x < ds.num_; ++x) {
    const auto& mem = ds.members_[x];
    if (policy == SectionPolicy::Rotated && mem.size() > 1 && mem[0] != Group::kIdentity)
      ds.gamma_[x] = mem[1];
    else
      ds.gamma_[x] = mem[0];
  }
  // Stabilizer of the coset gamma(x) H1: gamma H1 gamma^{-1}  intersect  H2.
  ds.stabilizers_.reserve(ds.num_);
  for (int x = 0; x < ds.num_; ++x) {
    const int gm = ds.gamma_[x];
    std::set<int> conj;
    for (int e1 : h1.elements()) conj.insert(g->mul(g->mul(gm, e1), g->inv(gm)));
    std::vector<int> stab;
    for (int e2 : h2.elements())
      if (conj.count(e2)) stab.push_back(e2);
    ds.stabilizers_.emplace_back(g, std::move(stab));
  }
  return ds;
}

DoubleCosetSpacePtr make_double_coset_space(const GroupPtr& g, const Subgroup& h2,
                                            const Subgroup& h1, SectionPolicy policy) {
  return std::make_shared<const DoubleCosetSpace>(double_cosets(g, h2, h1, policy));
}

SemidirectProduct semidirect_product(const GroupPtr& n, const GroupPtr& h,
                                     const std::vector<std::vector<int>>& action) {
  const int nn = n->order(), nh = h->order();
  if (static_cast<int>(action.size()) != nh)
    throw BadParams("action must assign one permutation per H element");

  for (int hi = 0; hi < nh; ++hi) {
    const auto& phi = action[hi];
    if (static_cast<int>(phi.size()) != nn)
      throw NotAutomorphism(index_msg("permutation length mismatch", {hi}));
    std::vector<char> seen(nn, 0);
    for (int v : phi) {
      if (v < 0 || v >= nn || seen[v])
        throw NotAutomorphism(index_msg("not a permutation of N", {hi}));
      seen[v] = 1;
    }
    if (phi[Group::kIdentity] != Group::kIdentity)
      throw NotAutomorphism(index_msg("does not fix the identity of N", {hi}));
    for (int a = 0; a < nn; ++a)
      for (int b = 0; b < nn; ++b)
        if (phi[n->mul(a, b)] != n->mul(phi[a], phi[b]))
          throw NotAutomorphism(index_msg("not multiplicative on N", {hi, a, b}));
  }
  for (int a = 0; a < nh; ++a) {
    for (int b = 0; b < nh; ++b) {
      const auto& pa = action[a];
      const auto& pb = action[b];
      const auto& pab = action[h->mul(a, b)];
      for (int v = 0; v < nn; ++v)
        if (pab[v] != pa[pb[v]])
          throw ActionNotHomomorphism(index_msg("action is not a homomorphism", {a, b, v}));
    }
  }

  const int order = nn * nh;
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  auto enc = [nh](int ni, int hi) { return ni * nh + hi; };
  for (int n1 = 0; n1 < nn; ++n1)
    for (int h1 = 0; h1 < nh; ++h1)
      for (int n2 = 0; n2 < nn; ++n2)
        for (int h2 = 0; h2 < nh; ++h2)
          table[enc(n1, h1)][enc(n2, h2)] = enc(n->mul(n1, action[h1][n2]), h->mul(h1, h2));

  std::vector<std::string> labels(order);
  for (int ni = 0; ni < nn; ++ni)
    for (int hi = 0; hi < nh; ++hi)
      labels[enc(ni, hi)] = "(" + n->label(ni) + "," + h->label(hi) + ")";

  SemidirectProduct out;
  out.group = build_group(table, std::move(labels));
  out.embed_n.resize(nn);
  for (int ni = 0; ni < nn; ++ni) out.embed_n[ni] = enc(ni, 0);
  out.embed_h.resize(nh);
  for (int hi = 0; hi < nh; ++hi) out.embed_h[hi] = enc(0, hi);
  return out;
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  const int na = a->order(), nb = b->order();
  std::vector<std::vector<int>> trivial_action(nb);
  std::vector<int> id(na);
  std::iota(id.begin(), id.end(), 0);
  for (auto& p : trivial_action) p = id;
  // A x B via the trivial action, but with labels in product form.
  auto sp = semidirect_product(a, b, trivial_action);
  return sp.group;
}

}  // namespace eqc
