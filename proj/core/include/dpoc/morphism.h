//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef DPOC_MORPHISM_H_
#define DPOC_MORPHISM_H_

#include <compare>
#include <functional>
#include <optional>
#include <vector>

#include "dpoc/graph.h"

namespace dpoc {

class ContractError: public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/**
 * Label-preserving injective embedding of a pattern into a host graph.
 * vertex_map[i] is the host image of pattern vertex i; edge_map[e] is the host
 * edge carrying pattern edge e. The image is a (not necessarily induced)
 * subgraph of the host.
 */
struct Embedding {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;

  auto operator<=>(const Embedding &) const = default;
  bool operator==(const Embedding &) const = default;
};

/// Visitor receives each embedding; returning false stops the search.
using EmbeddingVisitor = std::function<bool(const Embedding &)>;

/// Visits every embedding in an unspecified but deterministic order.
void for_each_embedding(const MolGraph &pattern, const MolGraph &host,
                        const EmbeddingVisitor &visit);

/// All embeddings, sorted lexicographically by vertex_map.
std::vector<Embedding> enumerate_embeddings(const MolGraph &pattern,
                                            const MolGraph &host);

/// As enumerate_embeddings, for a connected pattern into a connected host.
/// Throws ContractError if either argument is disconnected.
std::vector<Embedding> enumerate_component_embeddings(
    const MolGraph &pattern_component, const MolGraph &host_component);

std::optional<Embedding> find_embedding(const MolGraph &pattern,
                                        const MolGraph &host);

/// True iff the embedding satisfies every invariant against pattern and host.
bool is_valid_embedding(const MolGraph &pattern, const MolGraph &host,
                        const Embedding &m);

}  // namespace dpoc

#endif  // DPOC_MORPHISM_H_
