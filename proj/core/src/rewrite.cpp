//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "dpoc/rewrite.h"

#include <algorithm>
#include <string>
#include <vector>

#include "dpoc/canonical.h"

namespace dpoc {

std::vector<Embedding> find_matches(const Rule &r, const ComponentMultiset &hosts) {
  const RuleSide left = left_side(r);
  const UnionGraph u = disjoint_union(hosts.components);
  return enumerate_embeddings(left.graph, u.graph);
}

namespace {

// Index of the first rule edge that would be created on top of an existing
// host edge, or -1.
int gluing_violation(const Rule &r, const RuleSide &left, const Embedding &m,
                     const MolGraph &host) {
  for (int e = 0; e < r.num_edges(); ++e) {
    const RuleEdge &re = r.edges[e];
    if (re.left || !re.right)
      continue;
    const int a = left.rule_to_vertex[re.source];
    const int b = left.rule_to_vertex[re.target];
    if (a < 0 || b < 0)
      continue;
    if (host.find_edge(m.vertex_map[a], m.vertex_map[b]) >= 0)
      return e;
  }
  return -1;
}

}  // namespace

bool check_gluing(const Rule &r, const Embedding &m, const ComponentMultiset &hosts) {
  const RuleSide left = left_side(r);
  const UnionGraph u = disjoint_union(hosts.components);
  return gluing_violation(r, left, m, u.graph) < 0;
}

Derivation apply_at(const Rule &r, const ComponentMultiset &hosts,
                    const Embedding &m) {
  const RuleSide left = left_side(r);
  const UnionGraph u = disjoint_union(hosts.components);
  const MolGraph &host = u.graph;
  if (!is_valid_embedding(left.graph, host, m))
    throw ContractError("match is not an embedding of the left graph");

  if (const int e = gluing_violation(r, left, m, host); e >= 0) {
    throw RewriteError(RewriteError::Kind::kGluing,
                       "gluing violation: rule edge " + std::to_string(e)
                           + " would duplicate an existing host edge");
  }

  std::vector<char> matched_edge(host.num_edges(), 0);
  for (int he: m.edge_map)
    matched_edge[he] = 1;

  // host vertex -> rule vertex, for matched vertices
  std::vector<int> rule_of(host.num_vertices(), -1);
  for (int lv = 0; lv < left.graph.num_vertices(); ++lv)
    rule_of[m.vertex_map[lv]] = left.vertex_to_rule[lv];

  for (int h = 0; h < host.num_vertices(); ++h) {
    const int rv = rule_of[h];
    if (rv < 0 || r.vertices[rv].right)
      continue;
    for (const Adjacency &a: host.neighbors(h)) {
      if (!matched_edge[a.edge]) {
        throw RewriteError(RewriteError::Kind::kDangling,
                           "dangling edge: deleted vertex " + std::to_string(h)
                               + " keeps an unmatched host edge");
      }
    }
  }

  MolGraph out;
  std::vector<int> new_index(host.num_vertices(), -1);
  for (int h = 0; h < host.num_vertices(); ++h) {
    const int rv = rule_of[h];
    if (rv < 0) {
      new_index[h] = out.add_vertex(host.label(h));
    } else if (r.vertices[rv].right) {
      new_index[h] = out.add_vertex(*r.vertices[rv].right);
    }
  }
  std::vector<int> rule_vertex_out(r.num_vertices(), -1);
  for (int h = 0; h < host.num_vertices(); ++h) {
    if (rule_of[h] >= 0)
      rule_vertex_out[rule_of[h]] = new_index[h];
  }
  for (int rv = 0; rv < r.num_vertices(); ++rv) {
    const RuleVertex &v = r.vertices[rv];
    if (!v.left && v.right)
      rule_vertex_out[rv] = out.add_vertex(*v.right);
  }

  std::vector<int> rule_edge_of(host.num_edges(), -1);
  for (int le = 0; le < left.graph.num_edges(); ++le)
    rule_edge_of[m.edge_map[le]] = left.edge_to_rule[le];
  for (int he = 0; he < host.num_edges(); ++he) {
    const Edge &e = host.edge(he);
    const int re = rule_edge_of[he];
    if (re < 0) {
      out.add_edge(new_index[e.source], new_index[e.target], e.label);
    } else if (r.edges[re].right) {
      out.add_edge(new_index[e.source], new_index[e.target], *r.edges[re].right);
    }
  }
  for (const RuleEdge &re: r.edges) {
    if (!re.left && re.right)
      out.add_edge(rule_vertex_out[re.source], rule_vertex_out[re.target],
                   *re.right);
  }

  ComponentSplit split = split_components(out);
  Derivation d;
  d.rule = r;
  d.inputs = hosts;
  d.match = m;
  d.atom_map.resize(host.num_vertices());
  for (int h = 0; h < host.num_vertices(); ++h) {
    if (new_index[h] >= 0) {
      const int o = new_index[h];
      d.atom_map[h] = VertexRef{ split.component_of[o], split.local_index[o] };
    }
  }
  d.right_map.resize(r.num_vertices());
  for (int rv = 0; rv < r.num_vertices(); ++rv) {
    if (const int o = rule_vertex_out[rv]; o >= 0 && r.vertices[rv].right)
      d.right_map[rv] = VertexRef{ split.component_of[o], split.local_index[o] };
  }
  d.outputs.components = std::move(split.components);
  return d;
}

std::vector<int> touched_components(const Derivation &d) {
  std::vector<int> offsets;
  int total = 0;
  for (const MolGraph &g: d.inputs.components) {
    offsets.push_back(total);
    total += g.num_vertices();
  }
  std::vector<int> out;
  for (int h: d.match.vertex_map) {
    auto it = std::upper_bound(offsets.begin(), offsets.end(), h);
    out.push_back(static_cast<int>(it - offsets.begin()) - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_proper(const Derivation &d) {
  const std::vector<int> touched = touched_components(d);
  for (int i = 0; i < d.inputs.count(); ++i) {
    if (std::binary_search(touched.begin(), touched.end(), i))
      continue;
    const MolGraph &g = d.inputs.components[i];
    for (const MolGraph &h: d.outputs.components) {
      if (is_isomorphic(g, h))
        return false;
    }
  }
  return true;
}

}  // namespace dpoc
