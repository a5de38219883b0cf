//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef DPOC_RULE_H_
#define DPOC_RULE_H_

#include <optional>
#include <string>
#include <vector>

#include "dpoc/canonical.h"
#include "dpoc/graph.h"

namespace dpoc {

/// Membership of a rule element. A present left label puts the element in L,
/// a present right label puts it in R; both together put it in K.
struct RuleVertex {
  std::optional<Label> left;
  std::optional<Label> right;

  bool in_left() const { return left.has_value(); }
  bool in_right() const { return right.has_value(); }
  bool in_context() const { return left && right; }

  bool operator==(const RuleVertex &) const = default;
};

struct RuleEdge {
  int source;
  int target;
  std::optional<Label> left;
  std::optional<Label> right;

  bool in_left() const { return left.has_value(); }
  bool in_right() const { return right.has_value(); }
  bool in_context() const { return left && right; }

  bool operator==(const RuleEdge &) const = default;
};

/**
 * A DPO rule L <- K -> R stored as one merged graph. Shared vertex indices
 * realize the atom mapping between the three graphs. An edge that is deleted
 * and re-created between the same pair is stored once, as a context edge
 * whose label changes.
 */
struct Rule {
  std::string name;
  std::vector<RuleVertex> vertices;
  std::vector<RuleEdge> edges;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  int add_vertex(std::optional<Label> left, std::optional<Label> right);
  int add_edge(int u, int v, std::optional<Label> left,
               std::optional<Label> right);

  /// Index of the merged edge between u and v, or -1.
  int find_edge(int u, int v) const;

  bool operator==(const Rule &) const = default;
};

struct RuleViolation {
  enum class Kind {
    kEmptyRule,
    kUnlabeledElement,
    kEmptyLabel,
    kBadEndpoint,
    kSelfLoop,
    kDanglingEdge,
    kParallelEdge,
  };

  Kind kind;
  bool is_edge;
  int element;
  std::string message;
};

/// Empty when the rule satisfies every structural invariant.
std::vector<RuleViolation> validate_rule(const Rule &r);

inline bool is_valid_rule(const Rule &r) {
  return validate_rule(r).empty();
}

/// One side of a rule as a stand-alone graph plus index maps into the rule.
struct RuleSide {
  MolGraph graph;
  std::vector<int> vertex_to_rule;
  std::vector<int> edge_to_rule;
  std::vector<int> rule_to_vertex;  // -1 when absent from this side
  std::vector<int> rule_to_edge;
};

RuleSide left_side(const Rule &r);
RuleSide right_side(const Rule &r);
RuleSide context_side(const Rule &r);

/// The merged graph with each element labeled by its (left, right) pair.
MolGraph merged_graph(const Rule &r);

/// Isomorphism-invariant code of the merged graph; the rule identity used
/// for every deduplication.
CanonicalCode rule_code(const Rule &r);

/// Order-dependent serialization; two rules share it only if they are
/// literally identical up to the name.
std::string syntactic_key(const Rule &r);

/// Swap left and right.
Rule inverse(const Rule &r);

/// (empty, empty, g): creates g. Used for graph binding.
Rule creation_rule(const MolGraph &g, std::string name);

/// (g, empty, empty): destroys g. Used for graph unbinding.
Rule destruction_rule(const MolGraph &g, std::string name);

/// True when the rule neither creates nor deletes vertices and keeps every
/// vertex label (atom conservation).
bool conserves_atoms(const Rule &r);

/// A copy renumbered into canonical order; isomorphic rules map to identical
/// copies up to the order of interchangeable elements.
Rule canonical_rule(const Rule &r);

}  // namespace dpoc

#endif  // DPOC_RULE_H_
