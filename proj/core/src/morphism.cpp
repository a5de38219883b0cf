//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "dpoc/morphism.h"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "dpoc/canonical.h"

namespace dpoc {
namespace {

struct BackEdge {
  int position;
  const Label *label;
};

struct Step {
  int vertex;
  int parent_position = -1;
  const Label *parent_label = nullptr;
  std::vector<BackEdge> back_edges;
};

class EmbeddingSearch {
public:
  EmbeddingSearch(const MolGraph &pattern, const MolGraph &host)
      : pattern_(pattern), host_(host) { }

  void run(const EmbeddingVisitor &visit) {
    if (pattern_.num_vertices() > host_.num_vertices()
        || pattern_.num_edges() > host_.num_edges())
      return;
    plan();
    image_.assign(pattern_.num_vertices(), -1);
    used_.assign(host_.num_vertices(), 0);
    visit_ = &visit;
    stopped_ = false;
    extend(0);
  }

private:
  // Connectivity-first order, rare labels first: every step after a root is
  // anchored at an already placed neighbor, so candidates come from one
  // host adjacency list.
  void plan() {
    std::map<Label, int> host_count;
    for (const Label &l: host_.labels())
      ++host_count[l];
    auto rarity = [&](int v) {
      auto it = host_count.find(pattern_.label(v));
      return it == host_count.end() ? 0 : it->second;
    };

    const int n = pattern_.num_vertices();
    std::vector<int> position(n, -1), placed_neighbors(n, 0);
    steps_.clear();
    for (int k = 0; k < n; ++k) {
      int best = -1;
      for (int v = 0; v < n; ++v) {
        if (position[v] >= 0)
          continue;
        if (best < 0)
          best = v;
        else if (placed_neighbors[v] != placed_neighbors[best]) {
          if (placed_neighbors[v] > placed_neighbors[best])
            best = v;
        } else if (rarity(v) != rarity(best)) {
          if (rarity(v) < rarity(best))
            best = v;
        } else if (pattern_.degree(v) > pattern_.degree(best)) {
          best = v;
        }
      }

      Step step;
      step.vertex = best;
      for (const Adjacency &a: pattern_.neighbors(best)) {
        if (position[a.vertex] < 0) {
          ++placed_neighbors[a.vertex];
          continue;
        }
        const Label *l = &pattern_.edge(a.edge).label;
        if (step.parent_position < 0
            || position[a.vertex] < step.parent_position) {
          if (step.parent_position >= 0)
            step.back_edges.push_back({ step.parent_position, step.parent_label });
          step.parent_position = position[a.vertex];
          step.parent_label = l;
        } else {
          step.back_edges.push_back({ position[a.vertex], l });
        }
      }
      position[best] = k;
      steps_.push_back(std::move(step));
    }
  }

  bool feasible(const Step &step, int h) const {
    if (used_[h] || host_.label(h) != pattern_.label(step.vertex)
        || host_.degree(h) < pattern_.degree(step.vertex))
      return false;
    for (const BackEdge &b: step.back_edges) {
      const int e = host_.find_edge(h, image_[steps_[b.position].vertex]);
      if (e < 0 || host_.edge(e).label != *b.label)
        return false;
    }
    return true;
  }

  void place(const Step &step, int h, int depth) {
    image_[step.vertex] = h;
    used_[h] = 1;
    extend(depth + 1);
    used_[h] = 0;
    image_[step.vertex] = -1;
  }

  void extend(int depth) {
    if (stopped_)
      return;
    if (depth == static_cast<int>(steps_.size())) {
      emit();
      return;
    }

    const Step &step = steps_[depth];
    if (step.parent_position < 0) {
      for (int h = 0; h < host_.num_vertices() && !stopped_; ++h) {
        if (feasible(step, h))
          place(step, h, depth);
      }
      return;
    }

    const int anchor = image_[steps_[step.parent_position].vertex];
    for (const Adjacency &a: host_.neighbors(anchor)) {
      if (stopped_)
        return;
      if (host_.edge(a.edge).label == *step.parent_label
          && feasible(step, a.vertex))
        place(step, a.vertex, depth);
    }
  }

  void emit() {
    Embedding m;
    m.vertex_map = image_;
    m.edge_map.reserve(pattern_.num_edges());
    for (const Edge &e: pattern_.edges())
      m.edge_map.push_back(host_.find_edge(image_[e.source], image_[e.target]));
    if (!(*visit_)(m))
      stopped_ = true;
  }

  const MolGraph &pattern_;
  const MolGraph &host_;
  std::vector<Step> steps_;
  std::vector<int> image_;
  std::vector<char> used_;
  const EmbeddingVisitor *visit_ = nullptr;
  bool stopped_ = false;
};

}  // namespace

void for_each_embedding(const MolGraph &pattern, const MolGraph &host,
                        const EmbeddingVisitor &visit) {
  EmbeddingSearch search(pattern, host);
  search.run(visit);
}

std::vector<Embedding> enumerate_embeddings(const MolGraph &pattern,
                                            const MolGraph &host) {
  std::vector<Embedding> out;
  for_each_embedding(pattern, host, [&](const Embedding &m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Embedding> enumerate_component_embeddings(
    const MolGraph &pattern_component, const MolGraph &host_component) {
  if (!is_connected(pattern_component))
    throw ContractError("pattern component is not connected");
  if (!is_connected(host_component))
    throw ContractError("host component is not connected");
  return enumerate_embeddings(pattern_component, host_component);
}

std::optional<Embedding> find_embedding(const MolGraph &pattern,
                                        const MolGraph &host) {
  std::optional<Embedding> found;
  for_each_embedding(pattern, host, [&](const Embedding &m) {
    found = m;
    return false;
  });
  return found;
}

bool is_valid_embedding(const MolGraph &pattern, const MolGraph &host,
                        const Embedding &m) {
  if (static_cast<int>(m.vertex_map.size()) != pattern.num_vertices()
      || static_cast<int>(m.edge_map.size()) != pattern.num_edges())
    return false;
  std::vector<char> used(host.num_vertices(), 0);
  for (int v = 0; v < pattern.num_vertices(); ++v) {
    const int h = m.vertex_map[v];
    if (h < 0 || h >= host.num_vertices() || used[h]
        || host.label(h) != pattern.label(v))
      return false;
    used[h] = 1;
  }
  for (int e = 0; e < pattern.num_edges(); ++e) {
    const int he = m.edge_map[e];
    if (he < 0 || he >= host.num_edges())
      return false;
    const Edge &pe = pattern.edge(e);
    const Edge &h = host.edge(he);
    const int a = m.vertex_map[pe.source], b = m.vertex_map[pe.target];
    const bool same_ends = (h.source == a && h.target == b)
                           || (h.source == b && h.target == a);
    if (!same_ends || h.label != pe.label)
      return false;
  }
  return true;
}

bool is_isomorphic(const MolGraph &g, const MolGraph &h) {
  if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges())
    return false;
  if (vertex_label_multiset(g) != vertex_label_multiset(h))
    return false;
  return find_embedding(g, h).has_value();
}

}  // namespace dpoc
