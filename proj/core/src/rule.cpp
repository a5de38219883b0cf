//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "dpoc/rule.h"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dpoc {
namespace {

constexpr char kPairSeparator = '\x1f';

std::string pair_label(const std::optional<Label> &left,
                       const std::optional<Label> &right) {
  std::string out = left.value_or("");
  out.push_back(kPairSeparator);
  out += right.value_or("");
  return out;
}

template <class Pred>
RuleSide make_side(const Rule &r, Pred member, bool use_left) {
  RuleSide side;
  side.rule_to_vertex.assign(r.num_vertices(), -1);
  side.rule_to_edge.assign(r.num_edges(), -1);
  for (int v = 0; v < r.num_vertices(); ++v) {
    const RuleVertex &rv = r.vertices[v];
    if (!member(rv))
      continue;
    side.rule_to_vertex[v] =
        side.graph.add_vertex(use_left ? *rv.left : *rv.right);
    side.vertex_to_rule.push_back(v);
  }
  for (int e = 0; e < r.num_edges(); ++e) {
    const RuleEdge &re = r.edges[e];
    if (!member(re))
      continue;
    side.rule_to_edge[e] = side.graph.add_edge(
        side.rule_to_vertex[re.source], side.rule_to_vertex[re.target],
        use_left ? *re.left : *re.right);
    side.edge_to_rule.push_back(e);
  }
  return side;
}

}  // namespace

int Rule::add_vertex(std::optional<Label> left, std::optional<Label> right) {
  vertices.push_back({ std::move(left), std::move(right) });
  return num_vertices() - 1;
}

int Rule::add_edge(int u, int v, std::optional<Label> left,
                   std::optional<Label> right) {
  edges.push_back({ u, v, std::move(left), std::move(right) });
  return num_edges() - 1;
}

int Rule::find_edge(int u, int v) const {
  for (int e = 0; e < num_edges(); ++e) {
    const RuleEdge &re = edges[e];
    if ((re.source == u && re.target == v) || (re.source == v && re.target == u))
      return e;
  }
  return -1;
}

std::vector<RuleViolation> validate_rule(const Rule &r) {
  using Kind = RuleViolation::Kind;
  std::vector<RuleViolation> out;
  auto report = [&](Kind kind, bool is_edge, int element, std::string msg) {
    out.push_back({ kind, is_edge, element, std::move(msg) });
  };

  if (r.vertices.empty())
    report(Kind::kEmptyRule, false, -1, "empty rule: no vertices");

  for (int v = 0; v < r.num_vertices(); ++v) {
    const RuleVertex &rv = r.vertices[v];
    if (!rv.left && !rv.right)
      report(Kind::kUnlabeledElement, false, v,
             "vertex " + std::to_string(v) + " is in neither side");
    if ((rv.left && rv.left->empty()) || (rv.right && rv.right->empty()))
      report(Kind::kEmptyLabel, false, v,
             "vertex " + std::to_string(v) + " has an empty label");
  }

  std::set<std::pair<int, int>> pairs;
  for (int e = 0; e < r.num_edges(); ++e) {
    const RuleEdge &re = r.edges[e];
    const std::string name = "edge " + std::to_string(e) + " ("
                             + std::to_string(re.source) + ", "
                             + std::to_string(re.target) + ")";
    if (re.source < 0 || re.target < 0 || re.source >= r.num_vertices()
        || re.target >= r.num_vertices()) {
      report(Kind::kBadEndpoint, true, e, name + " references a missing vertex");
      continue;
    }
    if (re.source == re.target)
      report(Kind::kSelfLoop, true, e, name + " is a self-loop");
    if (!re.left && !re.right)
      report(Kind::kUnlabeledElement, true, e, name + " is in neither side");
    if ((re.left && re.left->empty()) || (re.right && re.right->empty()))
      report(Kind::kEmptyLabel, true, e, name + " has an empty label");

    const RuleVertex &a = r.vertices[re.source], &b = r.vertices[re.target];
    if (re.left && (!a.left || !b.left))
      report(Kind::kDanglingEdge, true, e,
             "dangling edge: " + name + " is in the left graph but an endpoint is not");
    if (re.right && (!a.right || !b.right))
      report(Kind::kDanglingEdge, true, e,
             "dangling edge: " + name + " is in the right graph but an endpoint is not");

    auto key = std::minmax(re.source, re.target);
    if (!pairs.insert(key).second)
      report(Kind::kParallelEdge, true, e, "parallel edge: " + name);
  }
  return out;
}

RuleSide left_side(const Rule &r) {
  return make_side(r, [](const auto &x) { return x.in_left(); }, true);
}

RuleSide right_side(const Rule &r) {
  return make_side(r, [](const auto &x) { return x.in_right(); }, false);
}

RuleSide context_side(const Rule &r) {
  return make_side(r, [](const auto &x) { return x.in_context(); }, true);
}

MolGraph merged_graph(const Rule &r) {
  MolGraph g;
  for (const RuleVertex &v: r.vertices)
    g.add_vertex(pair_label(v.left, v.right));
  for (const RuleEdge &e: r.edges)
    g.add_edge(e.source, e.target, pair_label(e.left, e.right));
  return g;
}

CanonicalCode rule_code(const Rule &r) {
  return canonical_code(merged_graph(r));
}

std::string syntactic_key(const Rule &r) {
  std::string out;
  for (const RuleVertex &v: r.vertices) {
    out += pair_label(v.left, v.right);
    out.push_back('\x1e');
  }
  std::vector<std::tuple<int, int, std::string>> edges;
  for (const RuleEdge &e: r.edges) {
    auto [a, b] = std::minmax(e.source, e.target);
    edges.emplace_back(a, b, pair_label(e.left, e.right));
  }
  std::sort(edges.begin(), edges.end());
  for (const auto &[a, b, l]: edges) {
    out += std::to_string(a) + ',' + std::to_string(b) + ':' + l;
    out.push_back('\x1e');
  }
  return out;
}

Rule inverse(const Rule &r) {
  Rule out = r;
  for (RuleVertex &v: out.vertices)
    std::swap(v.left, v.right);
  for (RuleEdge &e: out.edges)
    std::swap(e.left, e.right);
  return out;
}

Rule creation_rule(const MolGraph &g, std::string name) {
  Rule r;
  r.name = std::move(name);
  for (const Label &l: g.labels())
    r.add_vertex(std::nullopt, l);
  for (const Edge &e: g.edges())
    r.add_edge(e.source, e.target, std::nullopt, e.label);
  return r;
}

Rule destruction_rule(const MolGraph &g, std::string name) {
  return inverse(creation_rule(g, std::move(name)));
}

bool conserves_atoms(const Rule &r) {
  return std::all_of(r.vertices.begin(), r.vertices.end(),
                     [](const RuleVertex &v) {
                       return v.left && v.right && *v.left == *v.right;
                     });
}

Rule canonical_rule(const Rule &r) {
  const MolGraph merged = merged_graph(r);
  const std::vector<int> order = canonical_order(merged);
  std::vector<int> position(order.size());
  Rule out;
  out.name = r.name;
  for (std::size_t p = 0; p < order.size(); ++p) {
    position[order[p]] = static_cast<int>(p);
    out.vertices.push_back(r.vertices[order[p]]);
  }
  for (const RuleEdge &e: r.edges) {
    auto [a, b] = std::minmax(position[e.source], position[e.target]);
    out.edges.push_back({ a, b, e.left, e.right });
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const RuleEdge &x, const RuleEdge &y) {
              return std::tie(x.source, x.target) < std::tie(y.source, y.target);
            });
  return out;
}

}  // namespace dpoc
