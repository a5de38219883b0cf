//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "chains.h"

#include <algorithm>
#include <map>
#include <set>

#include "dpoc/compose.h"
#include "oracle.h"

namespace dpoc::chains {

namespace {

const std::vector<std::string> kVertexLabels = { "A", "B", "C" };
const std::vector<std::string> kEdgeLabels = { "-", "=" };

std::string other_label(const std::string &l) { return l == "-" ? "=" : "-"; }

}  // namespace

std::optional<Placed> random_rule_at(std::mt19937 &rng, const MolGraph &host,
                                     const std::string &name, int max_new) {
  if (host.num_vertices() == 0)
    return std::nullopt;
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> pick(0, host.num_vertices() - 1);

  const int want = std::uniform_int_distribution<int>(1, std::min(4, host.num_vertices()))(rng);
  std::vector<int> chosen{ pick(rng) };
  while (static_cast<int>(chosen.size()) < want) {
    std::vector<int> frontier;
    for (int v: chosen) {
      for (const Adjacency &a: host.neighbors(v)) {
        if (std::find(chosen.begin(), chosen.end(), a.vertex) == chosen.end())
          frontier.push_back(a.vertex);
      }
    }
    int next;
    if (!frontier.empty() && u(rng) < 0.85) {
      next = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)];
    } else {
      next = pick(rng);
      if (std::find(chosen.begin(), chosen.end(), next) != chosen.end())
        break;
    }
    chosen.push_back(next);
  }

  std::vector<int> l_edges;
  for (int e = 0; e < host.num_edges(); ++e) {
    const Edge &he = host.edge(e);
    const bool inside = std::count(chosen.begin(), chosen.end(), he.source)
                        && std::count(chosen.begin(), chosen.end(), he.target);
    if (inside && u(rng) < 0.85)
      l_edges.push_back(e);
  }

  std::vector<char> removed(chosen.size(), 0);
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const int v = chosen[i];
    bool all_in_l = true;
    for (const Adjacency &a: host.neighbors(v))
      all_in_l = all_in_l && std::count(l_edges.begin(), l_edges.end(), a.edge);
    removed[i] = all_in_l && u(rng) < 0.2;
  }

  Rule r;
  r.name = name;
  std::map<int, int> rv;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const Label &l = host.label(chosen[i]);
    rv[chosen[i]] = removed[i] ? r.add_vertex(l, std::nullopt) : r.add_vertex(l, l);
  }
  for (const int e: l_edges) {
    const Edge &he = host.edge(e);
    const bool gone = !r.vertices[rv[he.source]].right || !r.vertices[rv[he.target]].right;
    const double x = u(rng);
    std::optional<Label> right;
    if (!gone && x < 0.4)
      right = he.label;
    else if (!gone && x < 0.7)
      right = other_label(he.label);
    r.add_edge(rv[he.source], rv[he.target], he.label, right);
  }
  std::vector<int> kept;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (!removed[i])
      kept.push_back(chosen[i]);
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      if (host.find_edge(kept[i], kept[j]) < 0 && u(rng) < 0.35)
        r.add_edge(rv[kept[i]], rv[kept[j]], std::nullopt,
                   kEdgeLabels[std::uniform_int_distribution<int>(0, 1)(rng)]);
    }
  }
  for (int k = 0; k < max_new && !kept.empty(); ++k) {
    if (u(rng) >= 0.3)
      continue;
    const int fresh = r.add_vertex(std::nullopt, kVertexLabels[std::uniform_int_distribution<int>(0, 2)(rng)]);
    const int anchor = kept[std::uniform_int_distribution<std::size_t>(0, kept.size() - 1)(rng)];
    r.add_edge(rv[anchor], fresh, std::nullopt, "-");
  }
  if (!is_valid_rule(r))
    return std::nullopt;

  const RuleSide left = left_side(r);
  Embedding m;
  std::vector<int> host_of(r.num_vertices(), -1);
  for (const auto &[h, v]: rv)
    host_of[v] = h;
  for (int lv = 0; lv < left.graph.num_vertices(); ++lv)
    m.vertex_map.push_back(host_of[left.vertex_to_rule[lv]]);
  for (const Edge &e: left.graph.edges())
    m.edge_map.push_back(host.find_edge(m.vertex_map[e.source], m.vertex_map[e.target]));
  return Placed{ std::move(r), std::move(m) };
}

namespace {

std::vector<int> offsets_of(const ComponentMultiset &ms) {
  std::vector<int> out;
  int total = 0;
  for (const MolGraph &g: ms.components) {
    out.push_back(total);
    total += g.num_vertices();
  }
  return out;
}

}  // namespace

std::optional<Chain> random_chain(std::mt19937 &rng, int max_vertices) {
  const int n = std::uniform_int_distribution<int>(2, max_vertices)(rng);
  const MolGraph g = oracle::random_graph(rng, n, 0.45, kVertexLabels, kEdgeLabels);

  Chain c;
  c.start = connected_components(g);
  const MolGraph g_union = disjoint_union(c.start.components).graph;

  std::optional<Placed> p1 = random_rule_at(rng, g_union, "q1", 1);
  if (!p1)
    return std::nullopt;
  try {
    c.step1 = apply_at(p1->rule, c.start, p1->match);
  } catch (const RewriteError &) {
    return std::nullopt;
  }
  c.first = p1->rule;

  // Where R1 landed in H.
  const ComponentMultiset &mid = c.step1.outputs;
  const std::vector<int> off = offsets_of(mid);
  const MolGraph h_union = disjoint_union(mid.components).graph;
  const RuleSide right = right_side(c.first);
  const ComponentSplit r_split = split_components(right.graph);
  std::vector<int> r1_comp_of_host(h_union.num_vertices(), -1);
  for (int rv = 0; rv < c.first.num_vertices(); ++rv) {
    if (const auto &ref = c.step1.right_map[rv]) {
      const int hv = off[ref->component] + ref->vertex;
      r1_comp_of_host[hv] = r_split.component_of[right.rule_to_vertex[rv]];
    }
  }
  std::set<int> r1_edges;
  for (const RuleEdge &e: c.first.edges) {
    if (!e.right)
      continue;
    const auto &a = *c.step1.right_map[e.source];
    const auto &b = *c.step1.right_map[e.target];
    r1_edges.insert(h_union.find_edge(off[a.component] + a.vertex, off[b.component] + b.vertex));
  }

  std::optional<Placed> p2 = random_rule_at(rng, h_union, "q2", 1);
  if (!p2)
    return std::nullopt;
  const RuleSide left2 = left_side(p2->rule);
  const ComponentSplit l_split = split_components(left2.graph);
  for (std::size_t k = 0; k < l_split.components.size(); ++k) {
    std::set<int> comps;
    bool outside = false;
    for (const int lv: l_split.vertices[k]) {
      const int r1c = r1_comp_of_host[p2->match.vertex_map[lv]];
      if (r1c < 0)
        outside = true;
      else
        comps.insert(r1c);
    }
    if (outside && !comps.empty())
      return std::nullopt;
    if (comps.size() > 1)
      return std::nullopt;
    if (comps.empty())
      continue;
    for (const int le: l_split.edges[k]) {
      if (!r1_edges.count(p2->match.edge_map[le]))
        return std::nullopt;
    }
    ++c.matched_components;
  }
  if (c.matched_components == 0)
    return std::nullopt;

  try {
    c.step2 = apply_at(p2->rule, mid, p2->match);
  } catch (const RewriteError &) {
    return std::nullopt;
  }
  c.second = p2->rule;
  return c;
}

bool realized(const Chain &c, std::string *detail) {
  int composites = 0;
  const MatchMatrix mm = build_match_matrix(c.first, c.second);
  for (const PartialMatching &mu: enumerate_matchings(mm)) {
    const std::optional<Rule> comp = compose(c.first, c.second, mu);
    if (!comp)
      continue;
    ++composites;
    for (const Embedding &m: find_matches(*comp, c.start)) {
      Derivation d;
      try {
        d = apply_at(*comp, c.start, m);
      } catch (const RewriteError &) {
        continue;
      }
      if (oracle::isomorphic(d.outputs.components, c.step2.outputs.components))
        return true;
    }
  }
  if (detail)
    *detail = std::to_string(composites) + " composites, none reproduces the chain";
  return false;
}

}  // namespace dpoc::chains
