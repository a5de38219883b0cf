//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "dpoc/graph.h"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace dpoc {

int MolGraph::add_vertex(Label label) {
  if (label.empty())
    throw GraphError("vertex label must be non-empty");
  labels_.push_back(std::move(label));
  adjacency_.emplace_back();
  return num_vertices() - 1;
}

int MolGraph::add_edge(int u, int v, Label label) {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
    throw GraphError("edge endpoint " + std::to_string(u < 0 || u >= num_vertices() ? u : v)
                     + " is not a vertex");
  if (u == v)
    throw GraphError("self-loop at vertex " + std::to_string(u));
  if (label.empty())
    throw GraphError("edge label must be non-empty");
  if (find_edge(u, v) >= 0)
    throw GraphError("parallel edge between " + std::to_string(u) + " and "
                     + std::to_string(v));

  const int e = num_edges();
  edges_.push_back({ u, v, std::move(label) });
  adjacency_[u].push_back({ v, e });
  adjacency_[v].push_back({ u, e });
  return e;
}

int MolGraph::find_edge(int u, int v) const {
  if (adjacency_[u].size() > adjacency_[v].size())
    std::swap(u, v);
  for (const Adjacency &a: adjacency_[u])
    if (a.vertex == v)
      return a.edge;
  return -1;
}

ComponentSplit split_components(const MolGraph &g) {
  ComponentSplit split;
  const int n = g.num_vertices();
  split.component_of.assign(n, -1);
  split.local_index.assign(n, -1);

  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (split.component_of[root] >= 0)
      continue;

    const int c = static_cast<int>(split.vertices.size());
    std::vector<int> members;
    split.component_of[root] = c;
    stack.push_back(root);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (const Adjacency &a: g.neighbors(v)) {
        if (split.component_of[a.vertex] < 0) {
          split.component_of[a.vertex] = c;
          stack.push_back(a.vertex);
        }
      }
    }
    std::sort(members.begin(), members.end());
    split.vertices.push_back(std::move(members));
  }

  const int nc = static_cast<int>(split.vertices.size());
  split.components.resize(nc);
  split.edges.resize(nc);
  for (int c = 0; c < nc; ++c) {
    for (int v: split.vertices[c]) {
      split.local_index[v] = split.components[c].add_vertex(g.label(v));
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge &edge = g.edge(e);
    const int c = split.component_of[edge.source];
    split.components[c].add_edge(split.local_index[edge.source],
                                 split.local_index[edge.target], edge.label);
    split.edges[c].push_back(e);
  }
  return split;
}

ComponentMultiset connected_components(const MolGraph &g) {
  return { split_components(g).components };
}

bool is_connected(const MolGraph &g) {
  return split_components(g).components.size() == 1;
}

int UnionGraph::component_of_vertex(int v) const {
  auto it = std::upper_bound(vertex_offset.begin(), vertex_offset.end(), v);
  return static_cast<int>(it - vertex_offset.begin()) - 1;
}

UnionGraph disjoint_union(std::span<const MolGraph> parts) {
  UnionGraph u;
  for (const MolGraph &part: parts) {
    const int vo = u.graph.num_vertices();
    u.vertex_offset.push_back(vo);
    u.edge_offset.push_back(u.graph.num_edges());
    for (const Label &l: part.labels())
      u.graph.add_vertex(l);
    for (const Edge &e: part.edges())
      u.graph.add_edge(vo + e.source, vo + e.target, e.label);
  }
  return u;
}

MolGraph permute_vertices(const MolGraph &g, std::span<const int> perm) {
  const int n = g.num_vertices();
  std::vector<int> inverse(n);
  for (int i = 0; i < n; ++i)
    inverse[perm[i]] = i;

  MolGraph out;
  for (int i = 0; i < n; ++i)
    out.add_vertex(g.label(inverse[i]));
  for (const Edge &e: g.edges())
    out.add_edge(perm[e.source], perm[e.target], e.label);
  return out;
}

MolGraph induced_subgraph(const MolGraph &g, std::span<const int> vertices) {
  std::vector<int> local(g.num_vertices(), -1);
  MolGraph out;
  for (int v: vertices)
    local[v] = out.add_vertex(g.label(v));
  for (const Edge &e: g.edges()) {
    if (local[e.source] >= 0 && local[e.target] >= 0)
      out.add_edge(local[e.source], local[e.target], e.label);
  }
  return out;
}

std::vector<Label> vertex_label_multiset(const MolGraph &g) {
  std::vector<Label> out = g.labels();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Label> vertex_label_multiset(const ComponentMultiset &m) {
  std::vector<Label> out;
  for (const MolGraph &g: m.components)
    out.insert(out.end(), g.labels().begin(), g.labels().end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dpoc
