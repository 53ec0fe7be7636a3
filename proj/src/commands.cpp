#include "equiconv/commands.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "equiconv/field.hpp"
#include "equiconv/layer.hpp"
#include "equiconv/linalg.hpp"

namespace eqc {

namespace {

// Exact integer identities of the coset machinery for one coset space.
bool coset_identities_hold(const GroupPtr& group, const Subgroup& sub,
                           const CosetSpace& cs) {
  const auto& g = *group;
  for (int x = 0; x < cs.num_cosets(); ++x) {
    for (int g1 = 0; g1 < g.order(); ++g1) {
      for (int g2 = 0; g2 < g.order(); ++g2) {
        if (cs.h(x, g.mul(g1, g2)) != g.mul(cs.h(cs.act(g2, x), g1), cs.h(x, g2)))
          return false;
      }
    }
  }
  for (int a = 0; a < g.order(); ++a) {
    const auto [rep, h] = cs.decompose(a);
    if (g.mul(rep, h) != a || !sub.contains(h)) return false;
    for (int hp : sub.elements())
      if (cs.h_of_element(g.mul(a, hp)) != g.mul(cs.h_of_element(a), hp)) return false;
  }
  for (int x = 0; x < cs.num_cosets(); ++x)
    if (cs.h_of_element(cs.section(x)) != Group::kIdentity) return false;
  return true;
}

// The enumerated coset stabilizer must match the conjugation formula.
bool stabilizer_formula_holds(const GroupPtr& group, const Subgroup& h2,
                              const CosetSpace& cs1) {
  const auto& g = *group;
  for (int x = 0; x < cs1.num_cosets(); ++x) {
    std::set<int> conj;
    for (int e : cs1.subgroup().elements())
      conj.insert(g.mul(g.mul(cs1.section(x), e), g.inv(cs1.section(x))));
    std::vector<int> expect;
    for (int e : h2.elements())
      if (conj.count(e)) expect.push_back(e);
    if (coset_stabilizer(cs1, h2, x) != expect) return false;
  }
  return true;
}

double roundtrip_residual(const KernelBasis& d_basis, const CosetSpacePtr& cs1,
                          const DoubleCosetSpacePtr& dcs) {
  double worst = 0.0;
  for (const auto& kd : d_basis.d) {
    const KernelC kc = expand_d_to_c(kd, cs1);
    const KernelD back = restrict_c_to_d(kc, dcs);
    for (int x = 0; x < dcs->num(); ++x)
      worst = std::max(worst, (back.values[x] - kd.values[x]).cwiseAbs().maxCoeff());
    const KernelC again = expand_d_to_c(back, cs1);
    const KernelG kg = lift_c_to_g(kc);
    const KernelC from_g = restrict_g_to_c(kg, cs1);
    for (int y = 0; y < cs1->num_cosets(); ++y) {
      worst = std::max(worst, (again.values[y] - kc.values[y]).cwiseAbs().maxCoeff());
      worst = std::max(worst, (from_g.values[y] - kc.values[y]).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

std::vector<KernelC> noise_injected(const std::vector<KernelC>& kernels,
                                    double magnitude, std::uint64_t& state) {
  if (kernels.empty()) return kernels;
  const Eigen::MatrixXd span = canonical_span(stack_kernels(kernels));
  std::vector<KernelC> out = kernels;
  const int d2 = static_cast<int>(kernels[0].values[0].rows());
  const int d1 = static_cast<int>(kernels[0].values[0].cols());
  const int dd = d1 * d2;
  for (auto& k : out) {
    Eigen::VectorXd noise = random_vector(static_cast<int>(span.rows()), state);
    noise -= span * (span.transpose() * noise);
    if (noise.norm() < 1e-12) continue;  // constraint space is everything
    noise *= magnitude / noise.norm();
    for (size_t x = 0; x < k.values.size(); ++x)
      k.values[x] += unvec(noise.segment(x * dd, dd), d2, d1);
  }
  return out;
}

double mackey_projection_residual(const ResolvedExperiment& r, std::uint64_t& state) {
  double worst = 0.0;
  for (const auto& [cs, rep] :
       {std::pair{r.cs1, r.rho1}, std::pair{r.cs2, r.rho2}}) {
    std::vector<Eigen::VectorXd> raw(r.entry.group->order());
    for (auto& v : raw) v = random_vector(rep->dim(), state);
    worst = std::max(worst, project_to_mackey(raw, cs, rep).mackey_residual());
  }
  return worst;
}

}  // namespace

CommandResult cmd_basis(const json& config, const std::string& form) {
  const ResolvedExperiment r = resolve_experiment(config);
  const KernelBasis d_basis = solve_basis_d(r.dcs, r.rho1, r.rho2);
  json out;
  out["command"] = "basis";
  out["config_digest"] = r.digest;
  json basis_json;
  if (form == "d" || form.empty()) {
    basis_json = basis_to_json(d_basis);
  } else if (form == "c") {
    basis_json = basis_to_json(expand_basis_to_c(d_basis, r.cs1));
  } else if (form == "g") {
    basis_json = basis_to_json(expand_basis_to_g(d_basis, r.cs1));
  } else {
    throw ConfigError("unknown basis form '" + form + "' (expected d, c or g)");
  }
  for (auto& [key, value] : basis_json.items()) out[key] = value;
  return {out, kExitPass};
}

CommandResult cmd_verify(const json& config) {
  const ResolvedExperiment r = resolve_experiment(config);
  json out;
  out["command"] = "verify";
  out["config_digest"] = r.digest;
  out["seed"] = r.seed;
  out["trials"] = r.trials;
  out["tol"] = r.tol;

  const bool identities =
      coset_identities_hold(r.entry.group, r.h1, *r.cs1) &&
      coset_identities_hold(r.entry.group, r.h2, *r.cs2) &&
      stabilizer_formula_holds(r.entry.group, r.h2, *r.cs1);

  const KernelBasis d_basis = solve_basis_d(r.dcs, r.rho1, r.rho2);
  const KernelBasis g_basis = expand_basis_to_g(d_basis, r.cs1);
  const int c_to_g_rank = span_rank(stack_kernels(g_basis.g));
  const auto oracle =
      intertwiner_oracle(r.cs1, r.rho1, r.cs2, r.rho2, r.entry.generators);
  out["dims"] = json{
      {"d", d_basis.dim()}, {"c_to_g_rank", c_to_g_rank}, {"oracle", oracle.dim()}};
  const bool dims_equal =
      d_basis.dim() == c_to_g_rank && d_basis.dim() == oracle.dim();

  const double roundtrip = roundtrip_residual(d_basis, r.cs1, r.dcs);

  json residuals;
  residuals["roundtrip"] = roundtrip;
  bool residuals_ok = roundtrip <= 1e-12;
  std::uint64_t state = r.seed;
  if (r.trials > 0) {
    const double mackey = mackey_projection_residual(r, state);
    residuals["mackey"] = mackey;
    residuals_ok = residuals_ok && mackey <= r.tol;

    std::vector<KernelC> layers;
    for (const auto& kd : d_basis.d) layers.push_back(expand_d_to_c(kd, r.cs1));
    if (r.inject_noise > 0.0) layers = noise_injected(layers, r.inject_noise, state);
    double equi = 0.0;
    for (const auto& kc : layers) {
      LayerSpec layer{r.cs1, r.cs2, r.rho1, r.rho2, kc};
      equi = std::max(equi, equivariance_residual(layer, r.trials, r.seed));
    }
    residuals["equivariance"] = equi;
    residuals_ok = residuals_ok && equi <= r.tol;
  } else {
    residuals["mackey"] = nullptr;
    residuals["equivariance"] = nullptr;
  }
  out["residuals"] = residuals;

  out["checks"] = json{{"coset_identities", identities},
                       {"dims_equal", dims_equal},
                       {"residuals_within_tol", residuals_ok}};
  const bool pass = identities && dims_equal && residuals_ok;
  out["pass"] = pass;
  return {out, pass ? kExitPass : kExitVerifyFailed};
}

CommandResult cmd_oracle(const json& config) {
  const ResolvedExperiment r = resolve_experiment(config);
  const KernelBasis d_basis = solve_basis_d(r.dcs, r.rho1, r.rho2);
  const auto oracle =
      intertwiner_oracle(r.cs1, r.rho1, r.cs2, r.rho2, r.entry.generators);

  const int n1 = r.cs1->num_cosets() * r.rho1->dim();
  const int n2 = r.cs2->num_cosets() * r.rho2->dim();
  Eigen::MatrixXd layer_vecs(n1 * n2, d_basis.dim());
  for (int i = 0; i < d_basis.dim(); ++i) {
    LayerSpec layer{r.cs1, r.cs2, r.rho1, r.rho2, d_basis.d[i]};
    layer_vecs.col(i) = vec(layer.matrix());
  }
  const Eigen::MatrixXd layer_span = canonical_span(layer_vecs);

  bool span_match = layer_span.cols() == oracle.columns.cols() &&
                    d_basis.dim() == oracle.dim();
  if (span_match && oracle.dim() > 0) {
    span_match = span_projection_residual(layer_span, oracle.columns) < r.tol &&
                 span_projection_residual(oracle.columns, layer_vecs) < r.tol;
  }

  json out;
  out["command"] = "oracle";
  out["config_digest"] = r.digest;
  out["oracle_dim"] = oracle.dim();
  out["solver_dim"] = d_basis.dim();
  out["span_match"] = span_match;
  return {out, span_match ? kExitPass : kExitVerifyFailed};
}

CommandResult cmd_catalog() {
  json entries = json::array();
  for (const auto& entry : catalog_entries()) {
    json sub = json::object();
    for (const auto& [name, s] : entry.subgroups) sub[name] = s.size();
    json e;
    e["name"] = entry.name;
    e["order"] = entry.group->order();
    e["generators"] = entry.generators;
    e["subgroups"] = sub;
    if (!entry.sections.empty()) {
      json sections = json::object();
      for (const auto& [name, reps] : entry.sections) sections[name] = reps;
      e["sections"] = sections;
    }
    entries.push_back(std::move(e));
  }
  json out;
  out["command"] = "catalog";
  out["entries"] = std::move(entries);
  return {out, kExitPass};
}

CommandResult cmd_selftest(int trials, std::uint64_t seed,
                           const std::optional<json>& fixture) {
  json out;
  out["command"] = "selftest";
  out["seed"] = seed;
  out["trials"] = trials;

  bool all_pass = true;
  std::string first_failure;

  json sweep = json::array();
  for (const auto& entry : catalog_entries()) {
    bool entry_ok = true;
    for (const auto& [name, sub] : entry.subgroups) {
      const CosetSpace cs = entry.sections.count(name)
                                ? left_cosets(entry.group, sub, entry.sections.at(name))
                                : left_cosets(entry.group, sub);
      entry_ok = entry_ok && coset_identities_hold(entry.group, sub, cs);
    }
    sweep.push_back(json{{"name", entry.name}, {"pass", entry_ok}});
    if (!entry_ok && first_failure.empty()) first_failure = "identities:" + entry.name;
    all_pass = all_pass && entry_ok;
  }
  if (fixture) {
    bool fixture_ok = true;
    std::string note = "ok";
    try {
      const CatalogEntry fe = resolve_group(*fixture);
      for (const auto& [name, sub] : fe.subgroups)
        fixture_ok = fixture_ok &&
                     coset_identities_hold(fe.group, sub, left_cosets(fe.group, sub));
    } catch (const Error& err) {
      fixture_ok = false;
      note = err.what();
    }
    sweep.push_back(json{{"name", "fixture"}, {"pass", fixture_ok}, {"note", note}});
    if (!fixture_ok && first_failure.empty()) first_failure = "fixture: " + note;
    all_pass = all_pass && fixture_ok;
  }
  out["identity_sweep"] = std::move(sweep);

  json configs = json::array();
  for (const auto& cfg : catalog_configs()) {
    json c;
    c["name"] = cfg.name;
    const KernelBasis d_basis = solve_basis_d(cfg.dcs, cfg.rho1, cfg.rho2);
    const KernelBasis g_basis = expand_basis_to_g(d_basis, cfg.cs1);
    const int c_to_g_rank = span_rank(stack_kernels(g_basis.g));
    const auto naive = solve_basis_g_naive(cfg.group, cfg.h1, cfg.h2, cfg.rho1,
                                           cfg.rho2);
    const auto oracle =
        intertwiner_oracle(cfg.cs1, cfg.rho1, cfg.cs2, cfg.rho2, cfg.generators);
    c["dims"] = json{{"d", d_basis.dim()},
                     {"c_to_g_rank", c_to_g_rank},
                     {"naive", naive.dim()},
                     {"oracle", oracle.dim()}};
    const bool dims_equal = d_basis.dim() == c_to_g_rank &&
                            d_basis.dim() == naive.dim() &&
                            d_basis.dim() == oracle.dim();

    const double roundtrip = roundtrip_residual(d_basis, cfg.cs1, cfg.dcs);
    double equi = 0.0;
    if (trials > 0) {
      for (const auto& kd : d_basis.d) {
        LayerSpec layer{cfg.cs1, cfg.cs2, cfg.rho1, cfg.rho2, kd};
        equi = std::max(equi, equivariance_residual(layer, trials, seed));
      }
    }
    c["residuals"] = json{{"roundtrip", roundtrip}, {"equivariance", equi}};
    const bool pass = dims_equal && roundtrip <= 1e-12 && equi <= 1e-8;
    c["pass"] = pass;
    configs.push_back(std::move(c));
    if (!pass && first_failure.empty()) first_failure = "config:" + cfg.name;
    all_pass = all_pass && pass;
  }
  out["configs"] = std::move(configs);

  if (!first_failure.empty()) out["first_failure"] = first_failure;
  out["pass"] = all_pass;
  return {out, all_pass ? kExitPass : kExitVerifyFailed};
}

}  // namespace eqc
