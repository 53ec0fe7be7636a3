#include "equiconv/config.hpp"

#include <set>

namespace eqc {

namespace {

const json& require_key(const json& obj, const std::string& key,
                        const std::string& context) {
  if (!obj.is_object() || !obj.contains(key))
    throw ConfigError("missing key '" + key + "' in " + context);
  return obj.at(key);
}

int require_int(const json& obj, const std::string& key, const std::string& context) {
  const json& v = require_key(obj, key, context);
  if (!v.is_number_integer())
    throw ConfigError("key '" + key + "' in " + context + " must be an integer");
  return v.get<int>();
}

CatalogEntry table_entry(const json& spec) {
  const json& t = require_key(spec, "table", "group");
  if (!t.is_array()) throw ConfigError("key 'table' must be an array of rows");
  std::vector<std::vector<int>> table;
  for (const auto& row : t) {
    if (!row.is_array()) throw ConfigError("key 'table' rows must be arrays");
    table.push_back(row.get<std::vector<int>>());
  }
  std::vector<std::string> labels;
  if (spec.contains("labels")) labels = spec.at("labels").get<std::vector<std::string>>();
  CatalogEntry e;
  e.name = "table(" + std::to_string(table.size()) + ")";
  e.group = build_group(table, labels);
  e.subgroups["trivial"] = build_subgroup(e.group, {});
  e.subgroups["full"] = full_subgroup(e.group);
  return e;
}

CatalogEntry direct_product_entry(const json& spec) {
  const CatalogEntry a = resolve_group(require_key(spec, "a", "direct_product group"));
  const CatalogEntry b = resolve_group(require_key(spec, "b", "direct_product group"));
  CatalogEntry e;
  e.name = "direct_product(" + a.name + "," + b.name + ")";
  e.group = direct_product(a.group, b.group);
  const int nb = b.group->order();
  e.subgroups["trivial"] = build_subgroup(e.group, {});
  e.subgroups["full"] = full_subgroup(e.group);
  std::vector<int> left_gens, right_gens;
  for (int g : a.generators) left_gens.push_back(g * nb);
  for (int g : b.generators) right_gens.push_back(g);
  e.subgroups["left"] = build_subgroup(e.group, left_gens);
  e.subgroups["right"] = build_subgroup(e.group, right_gens);
  e.generators = left_gens;
  e.generators.insert(e.generators.end(), right_gens.begin(), right_gens.end());
  return e;
}

CatalogEntry semidirect_entry(const json& spec) {
  const CatalogEntry n = resolve_group(require_key(spec, "normal", "semidirect group"));
  const CatalogEntry h = resolve_group(require_key(spec, "quotient", "semidirect group"));
  const json& act = require_key(spec, "action", "semidirect group");
  if (!act.is_array())
    throw ConfigError("key 'action' must be an array of permutations");
  std::vector<std::vector<int>> action;
  for (const auto& row : act) action.push_back(row.get<std::vector<int>>());
  const SemidirectProduct sp = semidirect_product(n.group, h.group, action);
  CatalogEntry e;
  e.name = "semidirect(" + n.name + "," + h.name + ")";
  e.group = sp.group;
  e.subgroups["trivial"] = build_subgroup(e.group, {});
  e.subgroups["full"] = full_subgroup(e.group);
  std::vector<int> n_gens, h_gens;
  for (int g : n.generators) n_gens.push_back(sp.embed_n[g]);
  for (int g : h.generators) h_gens.push_back(sp.embed_h[g]);
  e.subgroups["normal"] = build_subgroup(e.group, n_gens);
  e.subgroups["stabilizer"] = build_subgroup(e.group, h_gens);
  e.generators = n_gens;
  e.generators.insert(e.generators.end(), h_gens.begin(), h_gens.end());
  return e;
}

CosetSpacePtr coset_space_from_spec(const CatalogEntry& entry, const Subgroup& sub,
                                    const std::string& sub_name, const json& config,
                                    const std::string& key) {
  if (config.contains(key)) {
    const json& spec = config.at(key);
    const std::string policy =
        require_key(spec, "policy", key).get<std::string>();
    if (policy == "smallest")
      return make_coset_space(entry.group, sub, SectionPolicy::SmallestIndex);
    if (policy == "rotated")
      return make_coset_space(entry.group, sub, SectionPolicy::Rotated);
    if (policy == "explicit") {
      const auto reps =
          require_key(spec, "representatives", key).get<std::vector<int>>();
      return std::make_shared<const CosetSpace>(left_cosets(entry.group, sub, reps));
    }
    throw ConfigError("unknown policy '" + policy + "' in " + key);
  }
  // Entries may ship a fixed section for a named subgroup.
  auto it = entry.sections.find(sub_name);
  if (it != entry.sections.end())
    return std::make_shared<const CosetSpace>(
        left_cosets(entry.group, sub, it->second));
  return make_coset_space(entry.group, sub);
}

}  // namespace

CatalogEntry resolve_group(const json& spec) {
  const std::string kind = require_key(spec, "kind", "group").get<std::string>();
  try {
    if (kind == "table") return table_entry(spec);
    if (kind == "direct_product") return direct_product_entry(spec);
    if (kind == "semidirect") return semidirect_entry(spec);
    if (kind == "cyclic") return make_cyclic(require_int(spec, "n", "group"));
    if (kind == "dihedral") return make_dihedral(require_int(spec, "n", "group"));
    if (kind == "d3_fig5") return make_d3_fig5();
    if (kind == "octahedral") return make_octahedral();
    if (kind == "p4_torus") return make_p4_torus(require_int(spec, "n", "group"));
    if (kind == "p4m_torus") return make_p4m_torus(require_int(spec, "n", "group"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    throw ConfigError("group spec '" + kind + "' rejected: " + err.what());
  }
  throw ConfigError("unknown group kind '" + kind + "'");
}

Subgroup resolve_subgroup(const CatalogEntry& entry, const json& spec,
                          const std::string& key) {
  if (spec.is_object() && spec.contains("named")) {
    const std::string name = spec.at("named").get<std::string>();
    auto it = entry.subgroups.find(name);
    if (it == entry.subgroups.end())
      throw ConfigError("unknown subgroup name '" + name + "' in " + key);
    return it->second;
  }
  if (spec.is_object() && spec.contains("generators")) {
    try {
      return build_subgroup(entry.group, spec.at("generators").get<std::vector<int>>());
    } catch (const Error& err) {
      throw ConfigError("key '" + key + "' rejected: " + err.what());
    }
  }
  throw ConfigError("key '" + key + "' needs 'named' or 'generators'");
}

RepPtr resolve_rep(const Subgroup& sub, const json& spec, const std::string& key) {
  const std::string kind = require_key(spec, "kind", key).get<std::string>();
  try {
    if (kind == "trivial") return trivial_rep(sub);
    if (kind == "regular") return regular_rep(sub);
    if (kind == "rotation") {
      const int freq = require_int(spec, "frequency", key);
      return rotation_irrep(sub, freq, spec.value("allow_zero", false));
    }
    if (kind == "sum") {
      const json& terms = require_key(spec, "terms", key);
      if (!terms.is_array() || terms.empty())
        throw ConfigError("key 'terms' in " + key + " must be a non-empty array");
      RepPtr acc = resolve_rep(sub, terms[0], key);
      for (size_t i = 1; i < terms.size(); ++i)
        acc = direct_sum(acc, resolve_rep(sub, terms[i], key));
      return acc;
    }
    if (kind == "explicit") {
      const json& mats = require_key(spec, "matrices", key);
      std::vector<Eigen::MatrixXd> matrices;
      for (const auto& mj : mats) {
        const auto rows = mj.get<std::vector<std::vector<double>>>();
        Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (size_t r = 0; r < rows.size(); ++r)
          for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
        matrices.push_back(std::move(m));
      }
      return explicit_rep(sub, std::move(matrices));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    throw ConfigError("rep spec '" + kind + "' in " + key + " rejected: " + err.what());
  }
  throw ConfigError("unknown rep kind '" + kind + "' in " + key);
}

ResolvedExperiment resolve_experiment(const json& config) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  ResolvedExperiment r;
  r.entry = resolve_group(require_key(config, "group", "config"));
  const json h1_spec = config.value("h1", json{{"named", "trivial"}});
  const json h2_spec = config.value("h2", h1_spec);
  r.h1 = resolve_subgroup(r.entry, h1_spec, "h1");
  r.h2 = resolve_subgroup(r.entry, h2_spec, "h2");
  r.rho1 = resolve_rep(r.h1, config.value("rho1", json{{"kind", "trivial"}}), "rho1");
  r.rho2 = resolve_rep(r.h2, config.value("rho2", json{{"kind", "trivial"}}), "rho2");

  const std::string h1_name =
      h1_spec.contains("named") ? h1_spec.at("named").get<std::string>() : "";
  const std::string h2_name =
      h2_spec.contains("named") ? h2_spec.at("named").get<std::string>() : "";
  r.cs1 = coset_space_from_spec(r.entry, r.h1, h1_name, config, "section1");
  r.cs2 = coset_space_from_spec(r.entry, r.h2, h2_name, config, "section2");

  SectionPolicy gamma_policy = SectionPolicy::SmallestIndex;
  if (config.contains("gamma")) {
    const std::string policy =
        require_key(config.at("gamma"), "policy", "gamma").get<std::string>();
    if (policy == "rotated")
      gamma_policy = SectionPolicy::Rotated;
    else if (policy != "smallest")
      throw ConfigError("unknown policy '" + policy + "' in gamma");
  }
  r.dcs = make_double_coset_space(r.entry.group, r.h2, r.h1, gamma_policy);

  if (config.contains("trials")) r.trials = require_int(config, "trials", "config");
  if (r.trials < 0) throw ConfigError("key 'trials' must be non-negative");
  if (config.contains("seed")) {
    if (!config.at("seed").is_number())
      throw ConfigError("key 'seed' must be a number");
    r.seed = config.at("seed").get<std::uint64_t>();
  }
  if (config.contains("tol")) {
    if (!config.at("tol").is_number()) throw ConfigError("key 'tol' must be a number");
    r.tol = config.at("tol").get<double>();
  }
  if (config.contains("inject_noise")) {
    if (!config.at("inject_noise").is_number())
      throw ConfigError("key 'inject_noise' must be a number");
    r.inject_noise = config.at("inject_noise").get<double>();
  }
  r.digest = config_digest(config);
  return r;
}

std::string config_digest(const json& config) {
  // Canonical form: sorted-key dump so semantically equal configs agree.
  const nlohmann::json sorted = nlohmann::json::parse(config.dump());
  const std::string text = sorted.dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

namespace {

template <typename K>
json kernel_entries(const K& k, bool skip_zero) {
  json entries = json::array();
  for (size_t s = 0; s < k.values.size(); ++s) {
    if (skip_zero && k.values[s].cwiseAbs().maxCoeff() == 0.0) continue;
    entries.push_back(json{{"support_index", s}, {"matrix", matrix_to_json(k.values[s])}});
  }
  return entries;
}

}  // namespace

json basis_to_json(const KernelBasis& basis) {
  json out;
  switch (basis.form) {
    case KernelForm::D: out["form"] = "d"; break;
    case KernelForm::C: out["form"] = "c"; break;
    case KernelForm::G: out["form"] = "g"; break;
  }
  out["dim"] = basis.dim();
  json kernels = json::array();
  if (basis.form == KernelForm::D)
    for (const auto& k : basis.d) kernels.push_back(json{{"entries", kernel_entries(k, true)}});
  if (basis.form == KernelForm::C)
    for (const auto& k : basis.c) kernels.push_back(json{{"entries", kernel_entries(k, false)}});
  if (basis.form == KernelForm::G)
    for (const auto& k : basis.g) kernels.push_back(json{{"entries", kernel_entries(k, false)}});
  out["kernels"] = std::move(kernels);
  return out;
}

json section_field_to_json(const SectionField& f) {
  json out = json::array();
  for (size_t x = 0; x < f.values.size(); ++x)
    out.push_back(json{{"index", x}, {"value", vector_to_json(f.values[x])}});
  return out;
}

json mackey_field_to_json(const MackeyField& f) {
  json out = json::array();
  for (size_t a = 0; a < f.values.size(); ++a)
    out.push_back(json{{"index", a}, {"value", vector_to_json(f.values[a])}});
  return out;
}

}  // namespace eqc
