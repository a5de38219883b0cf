//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef DPOC_GRAPH_H_
#define DPOC_GRAPH_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpoc {

/// Atom symbol on vertices ("C", "O", "H"), bond symbol on edges ("-", "=").
/// Always non-empty; compared by exact string equality.
using Label = std::string;

class GraphError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  int source;
  int target;
  Label label;

  int other(int v) const { return v == source ? target : source; }

  bool operator==(const Edge &) const = default;
};

struct Adjacency {
  int vertex;
  int edge;
};

/**
 * Undirected, simple, vertex- and edge-labeled graph.
 *
 * Vertices are numbered densely from 0 in insertion order. The class refuses
 * self-loops, parallel edges, empty labels and out-of-range endpoints, so
 * every instance satisfies the molecule-graph invariants by construction.
 */
class MolGraph {
public:
  int add_vertex(Label label);

  /// Adds the edge {u, v}; throws GraphError on loops or parallel edges.
  int add_edge(int u, int v, Label label);

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return labels_.empty(); }

  const Label &label(int v) const { return labels_[v]; }
  const std::vector<Label> &labels() const { return labels_; }
  const Edge &edge(int e) const { return edges_[e]; }
  const std::vector<Edge> &edges() const { return edges_; }

  std::span<const Adjacency> neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

  /// Index of the edge between u and v, or -1.
  int find_edge(int u, int v) const;

  /// Syntactic equality (same numbering), not isomorphism.
  bool operator==(const MolGraph &other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

private:
  std::vector<Label> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Adjacency>> adjacency_;
};

/// A graph viewed as the multiset of its connected components.
struct ComponentMultiset {
  std::vector<MolGraph> components;

  int count() const { return static_cast<int>(components.size()); }
};

/**
 * Connected components together with the maps back into the source graph.
 * Components are numbered by their smallest vertex index; inside a component
 * vertices and edges keep their relative order.
 */
struct ComponentSplit {
  std::vector<MolGraph> components;
  std::vector<int> component_of;        // source vertex -> component
  std::vector<int> local_index;         // source vertex -> component vertex
  std::vector<std::vector<int>> vertices;  // component vertex -> source
  std::vector<std::vector<int>> edges;     // component edge -> source edge
};

ComponentSplit split_components(const MolGraph &g);
ComponentMultiset connected_components(const MolGraph &g);
bool is_connected(const MolGraph &g);

struct UnionGraph {
  MolGraph graph;
  std::vector<int> vertex_offset;
  std::vector<int> edge_offset;

  /// Component owning a vertex of the union graph.
  int component_of_vertex(int v) const;
};

UnionGraph disjoint_union(std::span<const MolGraph> parts);

/// Copy of g where vertex i becomes vertex perm[i].
MolGraph permute_vertices(const MolGraph &g, std::span<const int> perm);

/// Induced subgraph on the given vertices (in the given order).
MolGraph induced_subgraph(const MolGraph &g, std::span<const int> vertices);

/// Sorted multiset of vertex labels.
std::vector<Label> vertex_label_multiset(const MolGraph &g);
std::vector<Label> vertex_label_multiset(const ComponentMultiset &m);

}  // namespace dpoc

#endif  // DPOC_GRAPH_H_
