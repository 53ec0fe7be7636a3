#include "equiconv/catalog.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

namespace eqc {

namespace {

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

}  // namespace

CatalogEntry make_cyclic(int n) {
  if (n < 1) throw BadParams("cyclic order must be positive");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = i == 0 ? "e" : (i == 1 ? "g" : "g^" + std::to_string(i));
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  CatalogEntry e;
  e.name = "cyclic(" + std::to_string(n) + ")";
  e.group = build_group(table, labels);
  if (n > 1) e.generators = {1};
  e.subgroups["trivial"] = build_subgroup(e.group, {});
  e.subgroups["full"] = full_subgroup(e.group);
  for (int d = 2; d < n; ++d)
    if (n % d == 0)
      e.subgroups["order" + std::to_string(d)] = build_subgroup(e.group, {n / d});
  return e;
}

CatalogEntry make_dihedral(int n) {
  if (n < 1) throw BadParams("dihedral rotation order must be positive");
  const int order = 2 * n;
  // Element r^i f^j at index i + n*j, with f r = r^{-1} f.
  auto enc = [n](int i, int j) { return i + n * j; };
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < 2; ++l) {
          const int rot = j == 0 ? (i + k) % n : ((i - k) % n + n) % n;
          table[enc(i, j)][enc(k, l)] = enc(rot, (j + l) % 2);
        }
  std::vector<std::string> labels(order);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) {
      std::string s;
      if (i == 1) s = "r";
      if (i > 1) s = "r^" + std::to_string(i);
      if (j == 1) s += "f";
      if (s.empty()) s = "e";
      labels[enc(i, j)] = s;
    }
  CatalogEntry e;
  e.name = "dihedral(" + std::to_string(n) + ")";
  e.group = build_group(table, labels);
  e.generators = n > 1 ? std::vector<int>{1, n} : std::vector<int>{n};
  e.subgroups["trivial"] = build_subgroup(e.group, {});
  e.subgroups["full"] = full_subgroup(e.group);
  e.subgroups["rotations"] = build_subgroup(e.group, {1});
  e.subgroups["flips"] = build_subgroup(e.group, {n});
  return e;
}

CatalogEntry make_d3_fig5() {
  CatalogEntry e = make_dihedral(3);
  e.name = "d3_fig5";
  // Section {e, r, r^2 f} for the flip subgroup: the standard example of
  // a legal but non-canonical choice of coset representatives.
  e.sections["flips"] = {0, 1, 5};
  return e;
}

CatalogEntry make_octahedral() {
  // Vertices 0..5 = +z, +x, +y, -x, -y, -z. Generated by quarter turns
  // about the z and x axes.
  const std::vector<int> rz{0, 2, 3, 4, 1, 5};
  const std::vector<int> rx{4, 1, 0, 3, 5, 2};
  std::set<std::vector<int>> seen{identity_perm(6)};
  std::vector<std::vector<int>> frontier{identity_perm(6)};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier)
      for (const auto* gen : {&rz, &rx}) {
        auto q = compose(*gen, p);
        if (seen.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> perms(seen.begin(), seen.end());
  std::sort(perms.begin(), perms.end());
  // std::sort puts the identity first (lexicographically smallest).
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);

  const int order = static_cast<int>(perms.size());
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) table[i][j] = index.at(compose(perms[i], perms[j]));
  std::vector<std::string> labels(order);
  for (int i = 0; i < order; ++i) {
    std::string s;
    for (int v : perms[i]) s += static_cast<char>('0' + v);
    labels[i] = s;
  }

  CatalogEntry e;
  e.name = "octahedral";
  e.group = build_group(table, labels);
  e.generators = {index.at(rz), index.at(rx)};
  e.subgroups["trivial"] = build_subgroup(e.group, {});
  e.subgroups["full"] = full_subgroup(e.group);
  e.subgroups["vertex_stabilizer"] = build_subgroup(e.group, {index.at(rz)});
  e.subgroups["vertex_stabilizer_c2"] =
      build_subgroup(e.group, {index.at(compose(rz, rz))});
  return e;
}

namespace {

// 90-degree rotation (a, b) -> (-b, a) on the n x n torus, index a*n+b.
std::vector<int> torus_rotation(int n) {
  std::vector<int> p(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p[a * n + b] = ((n - b) % n) * n + a;
  return p;
}

// Diagonal reflection (a, b) -> (b, a).
std::vector<int> torus_reflection(int n) {
  std::vector<int> p(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p[a * n + b] = b * n + a;
  return p;
}

CatalogEntry make_torus_entry(int n, bool with_reflection) {
  if (n < 1) throw BadParams("torus size must be positive");
  const CatalogEntry cn = make_cyclic(n);
  const GroupPtr normal = direct_product(cn.group, cn.group);
  const CatalogEntry point = with_reflection ? make_dihedral(4) : make_cyclic(4);

  const auto rot = torus_rotation(n);
  const auto refl = torus_reflection(n);
  std::vector<std::vector<int>> action(point.group->order());
  for (int h = 0; h < point.group->order(); ++h) {
    // Point-group element r^i (f^j) by its dihedral/cyclic encoding.
    const int i = with_reflection ? h % 4 : h;
    const int j = with_reflection ? h / 4 : 0;
    std::vector<int> phi = identity_perm(n * n);
    if (j == 1) phi = refl;
    for (int k = 0; k < i; ++k) phi = compose(rot, phi);
    action[h] = phi;
  }
  auto sp = semidirect_product(normal, point.group, action);

  CatalogEntry e;
  e.name = (with_reflection ? "p4m_torus(" : "p4_torus(") + std::to_string(n) + ")";
  e.group = sp.group;
  e.subgroups["trivial"] = build_subgroup(e.group, {});
  e.subgroups["full"] = full_subgroup(e.group);
  std::vector<int> stab_gens{sp.embed_h[1]};
  if (with_reflection) stab_gens.push_back(sp.embed_h[4]);
  e.subgroups["stabilizer"] = build_subgroup(e.group, stab_gens);
  e.subgroups["translations"] =
      build_subgroup(e.group, n > 1 ? std::vector<int>{sp.embed_n[n], sp.embed_n[1]}
                                    : std::vector<int>{});
  e.generators = stab_gens;
  if (n > 1) e.generators.insert(e.generators.begin(), sp.embed_n[n]);
  return e;
}

}  // namespace

CatalogEntry make_p4_torus(int n) { return make_torus_entry(n, false); }
CatalogEntry make_p4m_torus(int n) { return make_torus_entry(n, true); }

CatalogEntry make_catalog_entry(const std::string& name,
                                const std::map<std::string, int>& params) {
  auto param = [&](const std::string& key, int fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "cyclic") return make_cyclic(param("n", 4));
  if (name == "dihedral") return make_dihedral(param("n", 3));
  if (name == "d3_fig5") return make_d3_fig5();
  if (name == "octahedral") return make_octahedral();
  if (name == "p4_torus") return make_p4_torus(param("n", 3));
  if (name == "p4m_torus") return make_p4m_torus(param("n", 3));
  throw UnknownName("unknown catalog entry: " + name);
}

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  out.push_back(make_cyclic(4));
  out.push_back(make_cyclic(6));
  out.push_back(make_dihedral(3));
  out.push_back(make_d3_fig5());
  out.push_back(make_dihedral(4));
  out.push_back(make_octahedral());
  out.push_back(make_p4_torus(3));
  out.push_back(make_p4m_torus(3));
  return out;
}

SolveConfig make_solve_config(const std::string& name, const CatalogEntry& entry,
                              const std::string& h1_name, const std::string& h2_name,
                              const RepPtr& rho1, const RepPtr& rho2) {
  SolveConfig cfg;
  cfg.name = name;
  cfg.group = entry.group;
  cfg.generators = entry.generators;
  cfg.h1 = entry.subgroups.at(h1_name);
  cfg.h2 = entry.subgroups.at(h2_name);
  cfg.rho1 = rho1;
  cfg.rho2 = rho2;
  auto coset_space_for = [&](const std::string& sub_name, const Subgroup& h) {
    auto it = entry.sections.find(sub_name);
    if (it != entry.sections.end())
      return std::make_shared<const CosetSpace>(left_cosets(entry.group, h, it->second));
    return make_coset_space(entry.group, h);
  };
  cfg.cs1 = coset_space_for(h1_name, cfg.h1);
  cfg.cs2 = coset_space_for(h2_name, cfg.h2);
  cfg.dcs = make_double_coset_space(entry.group, cfg.h2, cfg.h1);
  return cfg;
}

std::vector<SolveConfig> catalog_configs() {
  std::vector<SolveConfig> out;
  auto add = [&](const CatalogEntry& entry, const std::string& h1,
                 const std::string& h2, const std::string& k1, const std::string& k2) {
    auto rep_for = [&](const Subgroup& h, const std::string& kind) -> RepPtr {
      if (kind == "trivial") return trivial_rep(h);
      if (kind == "regular") return regular_rep(h);
      if (kind == "rot1") return rotation_irrep(h, 1);
      if (kind == "rot2") return rotation_irrep(h, 2);
      throw UnknownName("unknown rep kind: " + kind);
    };
    const Subgroup& sub1 = entry.subgroups.at(h1);
    const Subgroup& sub2 = entry.subgroups.at(h2);
    const std::string name =
        entry.name + "/" + h1 + (h1 == h2 ? "" : "+" + h2) + "/" + k1 + "-" + k2;
    out.push_back(make_solve_config(name, entry, h1, h2, rep_for(sub1, k1),
                                    rep_for(sub2, k2)));
  };

  const auto c4 = make_cyclic(4);
  const auto c6 = make_cyclic(6);
  const auto d3 = make_dihedral(3);
  const auto d3f = make_d3_fig5();
  const auto d4 = make_dihedral(4);
  const auto oct = make_octahedral();
  const auto p4 = make_p4_torus(3);
  const auto p4m = make_p4m_torus(3);

  add(c4, "trivial", "trivial", "trivial", "trivial");
  add(c4, "order2", "order2", "regular", "regular");
  add(c4, "order2", "order2", "trivial", "regular");
  add(c4, "full", "full", "rot1", "rot1");
  add(c4, "full", "full", "rot1", "rot2");
  add(c6, "order3", "order3", "rot1", "rot1");
  add(c6, "order2", "order2", "regular", "regular");
  add(d3, "flips", "flips", "trivial", "trivial");
  add(d3, "flips", "flips", "regular", "regular");
  add(d3, "flips", "flips", "trivial", "regular");
  add(d3, "flips", "flips", "regular", "trivial");
  add(d3f, "flips", "flips", "regular", "regular");
  add(d3, "rotations", "rotations", "regular", "regular");
  add(d3, "rotations", "rotations", "rot1", "rot1");
  add(d3, "flips", "rotations", "trivial", "trivial");
  add(d4, "rotations", "rotations", "rot1", "rot1");
  add(d4, "rotations", "rotations", "rot1", "rot2");
  add(d4, "flips", "flips", "regular", "regular");
  add(oct, "vertex_stabilizer", "vertex_stabilizer", "trivial", "trivial");
  add(oct, "vertex_stabilizer", "vertex_stabilizer", "regular", "regular");
  add(oct, "vertex_stabilizer", "vertex_stabilizer", "rot1", "rot1");
  add(oct, "vertex_stabilizer", "vertex_stabilizer", "trivial", "regular");
  add(oct, "vertex_stabilizer", "vertex_stabilizer_c2", "trivial", "regular");
  add(p4, "stabilizer", "stabilizer", "trivial", "trivial");
  add(p4, "stabilizer", "stabilizer", "regular", "regular");
  add(p4, "stabilizer", "stabilizer", "rot1", "rot1");
  add(p4m, "stabilizer", "stabilizer", "trivial", "trivial");
  add(p4m, "stabilizer", "stabilizer", "rot1", "rot1");
  return out;
}

}  // namespace eqc
