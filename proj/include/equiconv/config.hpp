#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "equiconv/catalog.hpp"
#include "equiconv/field.hpp"
#include "equiconv/kernel.hpp"

namespace eqc {

// Insertion-ordered JSON keeps reports byte-stable.
using json = nlohmann::ordered_json;

// A fully resolved experiment: group, subgroup pair, representation
// pair, coset geometry, and command parameters.
struct ResolvedExperiment {
  CatalogEntry entry;
  Subgroup h1, h2;
  RepPtr rho1, rho2;
  CosetSpacePtr cs1, cs2;
  DoubleCosetSpacePtr dcs;
  int trials = 32;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  double inject_noise = 0.0;
  std::string digest;
};

// Group spec: {"kind": "cyclic"|"dihedral"|"d3_fig5"|"octahedral"|
// "p4_torus"|"p4m_torus"|"table"|"direct_product"|"semidirect", ...}.
// Composite kinds take nested group specs; "table" takes a row-major
// integer table plus optional labels.
CatalogEntry resolve_group(const json& spec);

// Subgroup spec: {"named": "<subgroup name>"} or {"generators": [...]}.
Subgroup resolve_subgroup(const CatalogEntry& entry, const json& spec,
                          const std::string& key);

// Rep spec: {"kind": "trivial"|"regular"|"rotation"|"sum"|"explicit", ...}.
RepPtr resolve_rep(const Subgroup& sub, const json& spec, const std::string& key);

// Full experiment config; all errors are ConfigError naming the key.
ResolvedExperiment resolve_experiment(const json& config);

// FNV-1a content hash of the canonicalized config, hex encoded.
std::string config_digest(const json& config);

// Serialization helpers ------------------------------------------------

json matrix_to_json(const Eigen::MatrixXd& m);
json vector_to_json(const Eigen::VectorXd& v);

// Basis dump: {"form", "dim", "kernels": [{"entries": [{"support_index",
// "matrix"}]}]}. Double-coset kernels list only their support point.
json basis_to_json(const KernelBasis& basis);

json section_field_to_json(const SectionField& f);
json mackey_field_to_json(const MackeyField& f);

}  // namespace eqc
