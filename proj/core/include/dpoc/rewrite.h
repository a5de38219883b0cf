//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef DPOC_REWRITE_H_
#define DPOC_REWRITE_H_

#include <compare>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dpoc/graph.h"
#include "dpoc/morphism.h"
#include "dpoc/rule.h"

namespace dpoc {

class RewriteError: public std::runtime_error {
public:
  enum class Kind { kGluing, kDangling };

  RewriteError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) { }

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct VertexRef {
  int component;
  int vertex;

  auto operator<=>(const VertexRef &) const = default;
};

/**
 * One application G =(p,m)=> H. The match embeds left_side(rule).graph into
 * the disjoint union of the input components (inputs in order). atom_map is
 * indexed by vertices of that union and is empty for deleted vertices.
 * right_map sends each rule vertex with a right label to its output vertex.
 */
struct Derivation {
  Rule rule;
  ComponentMultiset inputs;
  Embedding match;
  ComponentMultiset outputs;
  std::vector<std::optional<VertexRef>> atom_map;
  std::vector<std::optional<VertexRef>> right_map;
};

/// Embeddings of L into the union of the hosts, sorted by vertex map.
std::vector<Embedding> find_matches(const Rule &r, const ComponentMultiset &hosts);

/// False iff the rule would create an edge that already joins the matched
/// host vertices.
bool check_gluing(const Rule &r, const Embedding &m, const ComponentMultiset &hosts);

/// Throws RewriteError on a gluing violation or when a deleted vertex still
/// has host edges outside the match.
Derivation apply_at(const Rule &r, const ComponentMultiset &hosts,
                    const Embedding &m);

/// Input components holding at least one matched vertex.
std::vector<int> touched_components(const Derivation &d);

/// No input component is both untouched by the match and isomorphic to an
/// output component.
bool is_proper(const Derivation &d);

}  // namespace dpoc

#endif  // DPOC_REWRITE_H_
