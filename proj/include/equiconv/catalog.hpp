#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "equiconv/group.hpp"
#include "equiconv/rep.hpp"

namespace eqc {

// A builtin group with its canonical subgroups, a minimal generator
// list, and optional explicit sections for named subgroups.
struct CatalogEntry {
  std::string name;
  GroupPtr group;
  std::vector<int> generators;
  std::map<std::string, Subgroup> subgroups;
  // Explicit coset representatives (subgroup name -> section), used by
  // entries that ship a fixed non-default section.
  std::map<std::string, std::vector<int>> sections;
};

// Builders for the individual entries.
CatalogEntry make_cyclic(int n);
CatalogEntry make_dihedral(int n);
// Dihedral(3) shipping the explicit section {e, r, r^2 f} for the flip
// subgroup, the standard worked example for a non-canonical section.
CatalogEntry make_d3_fig5();
// The 24 rotations of the octahedron as permutations of its 6 vertices;
// ships the C4 stabilizer of a vertex.
CatalogEntry make_octahedral();
// (Z_n x Z_n) x| C4: 90-degree rotations acting on a periodic grid.
CatalogEntry make_p4_torus(int n);
// (Z_n x Z_n) x| D4: rotations and reflections on a periodic grid.
CatalogEntry make_p4m_torus(int n);

// String front end used by the CLI: cyclic(n), dihedral(n), d3_fig5,
// p4_torus(n), p4m_torus(n), octahedral.
CatalogEntry make_catalog_entry(const std::string& name,
                                const std::map<std::string, int>& params);

// All entries at their default parameters.
std::vector<CatalogEntry> catalog_entries();

// A named solver configuration: group, pair of subgroups and reps.
struct SolveConfig {
  std::string name;
  GroupPtr group;
  std::vector<int> generators;
  Subgroup h1, h2;
  RepPtr rho1, rho2;
  CosetSpacePtr cs1, cs2;
  DoubleCosetSpacePtr dcs;
};

SolveConfig make_solve_config(const std::string& name, const CatalogEntry& entry,
                              const std::string& h1_name, const std::string& h2_name,
                              const RepPtr& rho1, const RepPtr& rho2);

// The desk-scale sweep: every shipped (G, H1, H2, rho1, rho2)
// combination with |G| <= 72 and fiber dimensions <= 4, spanning
// trivial, regular and rotation representations.
std::vector<SolveConfig> catalog_configs();

}  // namespace eqc
