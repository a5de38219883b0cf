//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef DPOC_CHEMISTRY_H_
#define DPOC_CHEMISTRY_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpoc/canonical.h"
#include "dpoc/graph.h"
#include "dpoc/morphism.h"
#include "dpoc/rule.h"

namespace dpoc {

struct NamedGraph {
  std::string name;
  MolGraph graph;
};

struct Ruleset {
  std::vector<Rule> rules;
  std::vector<NamedGraph> graphs;
  bool chemical = false;

  const Rule &rule(const std::string &name) const;
  const MolGraph &graph(const std::string &name) const;
};

/// Rules that violate atom conservation while the ruleset is chemical.
std::vector<std::string> check_ruleset(const Ruleset &rs);

/// CH2O, explicit hydrogens.
MolGraph formaldehyde();

/// HOCH2-CHO, explicit hydrogens.
MolGraph glycolaldehyde();

enum class AldolContext {
  kHydrogens,  // p2/p3 require one hydrogen on each of the two reacting carbons
  kBare,       // p2/p3 without those context hydrogens
};

/**
 * Keto-enol tautomerism (p0 forward, p1 backward) and aldol addition (p2
 * forward, p3 retro-aldol), with formaldehyde (g0) and glycolaldehyde (g1).
 *
 * p1: H-O-C1=C0 becomes O=C1-C0-H on the same four atoms.
 * p3: H-O4-C5(-He1)-C0(-He2)-C1=O2 becomes O4=C5(-He1) + H-O2-C1=C0(-He2);
 * with AldolContext::kHydrogens the hydrogens He1/He2 are context that must
 * be present.
 */
Ruleset formose_ruleset(AldolContext context = AldolContext::kHydrogens);

/// Non-hydrogen atoms.
int heavy_atom_count(const MolGraph &g);

struct Species {
  MolGraph graph;
  CanonicalCode code;
  int round = 0;
};

/// A derivation stored as species indices plus the match that replays it.
struct Hyperedge {
  std::vector<int> inputs;   // species indices, sorted
  std::vector<int> outputs;  // species indices, sorted
  int rule = -1;             // index into ReactionNetwork::rules
  int round = 0;
  Embedding match;           // into the union of inputs, in listed order
};

struct ReactionNetwork {
  std::vector<Rule> rules;
  std::vector<Species> species;
  std::vector<Hyperedge> hyperedges;
  std::map<CanonicalCode, int> index_of;

  /// Species index of a graph, or -1.
  int find(const MolGraph &g) const;
};

struct ExpansionLimits {
  int max_species = 1000;
  int max_atoms_per_species = 14;  // non-hydrogen atoms
  int max_rounds = 8;
};

/**
 * Breadth-first closure over the seeds. Round r applies every rule to every
 * input multiset (size at most the number of left components) containing a
 * species first seen in round r - 1, keeping proper, gluing-valid derivations
 * whose products respect the atom cap. Round 1 also gives each seed an
 * influx edge: its creation rule applied to nothing. Zero rounds yields the
 * seeds and no hyperedges.
 */
ReactionNetwork expand_network(const std::vector<MolGraph> &seeds,
                               const Ruleset &rs, const ExpansionLimits &limits);

struct UniverseOptions {
  int max_len = 10;
  bool syntactic = false;      // dedupe by syntactic_key instead of rule_code
  long long max_rules = 5'000'000;  // abort guard, mostly for syntactic mode
};

struct UniverseResult {
  std::vector<Rule> rules;              // level order, then discovery order
  std::vector<long long> new_at_level;  // [0] = distinct bound graphs
  long long compositions = 0;           // composites produced, with repeats
  bool truncated = false;

  long long count() const { return static_cast<long long>(rules.size()); }
};

/**
 * Every rule p_ik o ... o p_i1 o g for g in bindables and 1 <= k <= max_len,
 * deduplicated globally. The bound graphs (empty, empty, g) seed the
 * deduplication, so a chain that only reproduces a binding adds nothing.
 */
UniverseResult composition_universe(const std::vector<Rule> &rules,
                                    const std::vector<MolGraph> &bindables,
                                    const UniverseOptions &options);

struct PolymerPattern {
  MolGraph unit;
  int multiplicity = 0;
  bool in_left = true;
};

/// Largest component of L (then R) that occurs at least twice.
std::optional<PolymerPattern> detect_polymer_pattern(const Rule &r);

}  // namespace dpoc

#endif  // DPOC_CHEMISTRY_H_
