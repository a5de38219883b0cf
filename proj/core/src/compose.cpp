//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "dpoc/compose.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpoc/canonical.h"

namespace dpoc {

bool PartialMatching::is_full() const {
  return std::none_of(selections.begin(), selections.end(),
                      [](const Selection &s) { return s.is_virtual(); });
}

MatchMatrix build_match_matrix(const Rule &first, const Rule &second) {
  MatchMatrix mm;
  mm.first_right = right_side(first);
  mm.second_left = left_side(second);
  mm.columns = split_components(mm.first_right.graph);
  mm.rows = split_components(mm.second_left.graph);

  mm.cells.resize(mm.rows.components.size());
  for (std::size_t i = 0; i < mm.rows.components.size(); ++i) {
    mm.cells[i].resize(mm.columns.components.size());
    for (std::size_t j = 0; j < mm.columns.components.size(); ++j) {
      mm.cells[i][j] = enumerate_embeddings(mm.rows.components[i],
                                            mm.columns.components[j]);
    }
  }
  return mm;
}

namespace {

bool selection_is_disjoint(const MatchMatrix &mm,
                           const std::vector<Selection> &selections) {
  std::vector<std::vector<char>> used(mm.num_columns());
  for (int j = 0; j < mm.num_columns(); ++j)
    used[j].assign(mm.columns.components[j].num_vertices(), 0);

  for (int i = 0; i < mm.num_rows(); ++i) {
    const Selection &s = selections[i];
    if (s.is_virtual())
      continue;
    for (int h: mm.cells[i][s.column][s.entry].vertex_map) {
      if (used[s.column][h])
        return false;
      used[s.column][h] = 1;
    }
  }
  return true;
}

PartialMatching build_mu(const MatchMatrix &mm,
                         const std::vector<Selection> &selections) {
  PartialMatching mu;
  mu.selections = selections;
  mu.vertex_mu.assign(mm.second_left.rule_to_vertex.size(), -1);
  mu.edge_mu.assign(mm.second_left.rule_to_edge.size(), -1);

  for (int i = 0; i < mm.num_rows(); ++i) {
    const Selection &s = selections[i];
    if (s.is_virtual())
      continue;
    const Embedding &m = mm.cells[i][s.column][s.entry];
    for (std::size_t a = 0; a < m.vertex_map.size(); ++a) {
      const int second_vertex =
          mm.second_left.vertex_to_rule[mm.rows.vertices[i][a]];
      const int first_vertex =
          mm.first_right.vertex_to_rule[mm.columns.vertices[s.column][m.vertex_map[a]]];
      mu.vertex_mu[second_vertex] = first_vertex;
    }
    for (std::size_t e = 0; e < m.edge_map.size(); ++e) {
      const int second_edge = mm.second_left.edge_to_rule[mm.rows.edges[i][e]];
      const int first_edge =
          mm.first_right.edge_to_rule[mm.columns.edges[s.column][m.edge_map[e]]];
      mu.edge_mu[second_edge] = first_edge;
    }
  }
  return mu;
}

void reject(std::string *why, std::string reason) {
  if (why)
    *why = std::move(reason);
}

}  // namespace

std::optional<PartialMatching> matching_from_selection(
    const MatchMatrix &mm, const std::vector<Selection> &selections) {
  if (static_cast<int>(selections.size()) != mm.num_rows())
    throw ContractError("selection needs one entry per row");
  const bool all_virtual =
      std::all_of(selections.begin(), selections.end(),
                  [](const Selection &s) { return s.is_virtual(); });
  if (all_virtual || !selection_is_disjoint(mm, selections))
    return std::nullopt;
  return build_mu(mm, selections);
}

std::vector<PartialMatching> enumerate_matchings(const MatchMatrix &mm,
                                                 MatchingStats *stats) {
  const int rows = mm.num_rows();
  std::vector<std::vector<Selection>> options(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < mm.num_columns(); ++j) {
      for (int k = 0; k < mm.count(i, j); ++k)
        options[i].push_back({ j, k });
    }
    options[i].push_back({});
  }

  MatchingStats local;
  std::vector<PartialMatching> out;
  std::vector<int> pick(rows, 0);
  std::vector<Selection> selections(rows);
  while (true) {
    ++local.raw_selections;
    bool all_virtual = true;
    for (int i = 0; i < rows; ++i) {
      selections[i] = options[i][pick[i]];
      all_virtual = all_virtual && selections[i].is_virtual();
    }
    if (all_virtual) {
      ++local.all_virtual;
    } else if (!selection_is_disjoint(mm, selections)) {
      ++local.overlapping;
    } else {
      ++local.valid;
      out.push_back(build_mu(mm, selections));
    }

    int i = 0;
    while (i < rows && ++pick[i] == static_cast<int>(options[i].size())) {
      pick[i] = 0;
      ++i;
    }
    if (i == rows)
      break;
  }

  if (stats)
    *stats = local;
  return out;
}

std::optional<Rule> compose(const Rule &first, const Rule &second,
                            const PartialMatching &mu, std::string *why) {
  // Composite element labels: left from the first rule, right from the
  // second, for every element the matching identifies.
  std::vector<RuleVertex> vertices(first.vertices);
  std::vector<int> second_to_composite(second.num_vertices(), -1);
  for (int v = 0; v < second.num_vertices(); ++v) {
    const RuleVertex &sv = second.vertices[v];
    const int target = mu.vertex_mu[v];
    if (target < 0) {
      second_to_composite[v] = static_cast<int>(vertices.size());
      vertices.push_back(sv);
      continue;
    }
    const RuleVertex &fv = first.vertices[target];
    if (fv.right != sv.left)
      throw std::logic_error("matching pairs vertices with different labels");
    second_to_composite[v] = target;
    vertices[target] = { fv.left, sv.right };
  }

  std::vector<RuleEdge> edges(first.edges);
  std::map<std::pair<int, int>, int> edge_at;
  for (int e = 0; e < first.num_edges(); ++e)
    edge_at[std::minmax(first.edges[e].source, first.edges[e].target)] = e;

  for (int e = 0; e < second.num_edges(); ++e) {
    const RuleEdge &se = second.edges[e];
    const int target = mu.edge_mu[e];
    if (target >= 0) {
      const RuleEdge &fe = first.edges[target];
      if (fe.right != se.left)
        throw std::logic_error("matching pairs edges with different labels");
      edges[target].left = fe.left;
      edges[target].right = se.right;
      continue;
    }

    const int a = second_to_composite[se.source];
    const int b = second_to_composite[se.target];
    auto key = std::minmax(a, b);
    auto it = edge_at.find(key);
    if (it == edge_at.end()) {
      edge_at.emplace(key, static_cast<int>(edges.size()));
      edges.push_back({ a, b, se.left, se.right });
      continue;
    }

    RuleEdge &existing = edges[it->second];
    if (se.left || existing.right) {
      reject(why, "matching condition: edge (" + std::to_string(a) + ", "
                      + std::to_string(b)
                      + ") would be created while already present");
      return std::nullopt;
    }
    existing.right = se.right;
  }

  // Elements created by the first rule and deleted by the second vanish.
  std::vector<int> index(vertices.size(), -1);
  Rule out;
  out.name = second.name + " o " + first.name;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].left || vertices[v].right) {
      index[v] = out.num_vertices();
      out.vertices.push_back(vertices[v]);
    }
  }
  for (const RuleEdge &e: edges) {
    if (!e.left && !e.right)
      continue;
    const int a = index[e.source], b = index[e.target];
    const bool dangling =
        a < 0 || b < 0 || (e.right && (!out.vertices[a].right || !out.vertices[b].right))
        || (e.left && (!out.vertices[a].left || !out.vertices[b].left));
    if (dangling) {
      reject(why, "dangling edge: an edge survives at a vertex the composite removes");
      return std::nullopt;
    }
    out.edges.push_back({ a, b, e.left, e.right });
  }

  const std::vector<RuleViolation> violations = validate_rule(out);
  if (!violations.empty()) {
    reject(why, "invalid composite: " + violations.front().message);
    return std::nullopt;
  }
  return out;
}

std::vector<std::pair<CanonicalCode, Rule>> compose_all_coded(
    const Rule &first, const Rule &second, ComposeStats *stats) {
  ComposeStats local;
  const MatchMatrix mm = build_match_matrix(first, second);
  const std::vector<PartialMatching> matchings =
      enumerate_matchings(mm, &local.matchings);

  std::map<CanonicalCode, Rule> unique;
  for (const PartialMatching &mu: matchings) {
    std::optional<Rule> r = compose(first, second, mu);
    if (!r) {
      ++local.rejected;
      continue;
    }
    if (!unique.emplace(rule_code(*r), std::move(*r)).second)
      ++local.duplicates;
  }

  if (stats)
    *stats = local;
  std::vector<std::pair<CanonicalCode, Rule>> out;
  out.reserve(unique.size());
  for (auto &[code, r]: unique)
    out.emplace_back(code, std::move(r));
  return out;
}

std::vector<Rule> compose_all(const Rule &first, const Rule &second,
                              ComposeStats *stats) {
  std::vector<Rule> out;
  for (auto &[code, r]: compose_all_coded(first, second, stats))
    out.push_back(std::move(r));
  return out;
}

std::vector<Rule> bind(const MolGraph &g, const Rule &p) {
  return compose_all(creation_rule(g, "bind"), p);
}

Rule unbind(const MolGraph &g) {
  return destruction_rule(g, "unbind");
}

namespace {

std::vector<Rule> fold_step(const std::vector<Rule> &current, const Rule &next) {
  std::map<CanonicalCode, Rule> unique;
  for (const Rule &r: current) {
    for (auto &[code, c]: compose_all_coded(r, next))
      unique.emplace(std::move(code), std::move(c));
  }
  std::vector<Rule> out;
  out.reserve(unique.size());
  for (auto &[code, r]: unique)
    out.push_back(std::move(r));
  return out;
}

struct OrderSearch {
  std::vector<Rule> classes;            // one representative per distinct rule
  std::vector<std::vector<int>> members; // class -> rule indices
  std::vector<int> remaining;
  std::vector<int> chain;               // classes in execution order
  std::vector<std::vector<int>> found;
  int total = 0;

  void run(const std::vector<Rule> &current) {
    if (static_cast<int>(chain.size()) == total) {
      record();
      return;
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (remaining[c] == 0)
        continue;
      std::vector<Rule> next = chain.empty() && current.empty()
                                   ? std::vector<Rule>{ classes[c] }
                                   : fold_step(current, classes[c]);
      if (next.empty())
        continue;
      --remaining[c];
      chain.push_back(static_cast<int>(c));
      run(next);
      chain.pop_back();
      ++remaining[c];
    }
  }

  void record() {
    std::vector<std::size_t> used(classes.size(), 0);
    std::vector<int> order;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const int c = *it;
      order.push_back(members[c][used[c]++]);
    }
    found.push_back(std::move(order));
  }
};

}  // namespace

std::vector<Rule> compose_sequence(const std::vector<Rule> &rules) {
  if (rules.empty())
    throw ContractError("compose_sequence needs at least one rule");
  std::vector<Rule> current{ rules.back() };
  for (auto it = rules.rbegin() + 1; it != rules.rend() && !current.empty(); ++it)
    current = fold_step(current, *it);
  return current;
}

std::vector<std::vector<Rule>> compose_sequence_traced(const std::vector<Rule> &rules) {
  if (rules.empty())
    throw ContractError("compose_sequence needs at least one rule");
  struct Step {
    Rule rule;
    int parent;
  };
  std::vector<std::vector<Step>> levels{ { Step{ rules.back(), -1 } } };
  for (auto it = rules.rbegin() + 1; it != rules.rend(); ++it) {
    const std::vector<Step> &current = levels.back();
    std::map<CanonicalCode, Step> unique;
    for (int i = 0; i < static_cast<int>(current.size()); ++i) {
      for (auto &[code, c]: compose_all_coded(current[i].rule, *it))
        unique.try_emplace(std::move(code), Step{ std::move(c), i });
    }
    std::vector<Step> next;
    for (auto &[code, step]: unique)
      next.push_back(std::move(step));
    if (next.empty())
      return {};
    levels.push_back(std::move(next));
  }

  std::vector<std::vector<Rule>> out;
  for (int i = 0; i < static_cast<int>(levels.back().size()); ++i) {
    std::vector<Rule> path(levels.size());
    int at = i;
    for (int l = static_cast<int>(levels.size()) - 1; l >= 0; --l) {
      path[l] = levels[l][at].rule;
      at = levels[l][at].parent;
    }
    out.push_back(std::move(path));
  }
  return out;
}

std::vector<std::vector<int>> find_orders(const std::vector<Rule> &rules,
                                          const std::optional<Rule> &innermost) {
  OrderSearch search;
  std::map<CanonicalCode, int> class_of;
  for (int i = 0; i < static_cast<int>(rules.size()); ++i) {
    auto [it, inserted] =
        class_of.emplace(rule_code(rules[i]), static_cast<int>(search.classes.size()));
    if (inserted) {
      search.classes.push_back(rules[i]);
      search.members.emplace_back();
      search.remaining.push_back(0);
    }
    search.members[it->second].push_back(i);
    ++search.remaining[it->second];
  }
  search.total = static_cast<int>(rules.size());

  if (innermost)
    search.run({ *innermost });
  else
    search.run({});
  return search.found;
}

}  // namespace dpoc
