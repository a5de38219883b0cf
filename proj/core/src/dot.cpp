//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <map>
#include <sstream>
#include <string>

#include "dpoc/io.h"

namespace dpoc {

namespace {

std::string dot_quote(const std::string &s) {
  std::string out = "\"";
  for (const char c: s) {
    if (c == '"' || c == '\\')
      out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

constexpr const char *kChanged = " class=\"changed\" color=\"red\" fontcolor=\"red\" penwidth=2";
constexpr const char *kContext = " class=\"context\"";

}  // namespace

std::string molecular_formula(const MolGraph &g) {
  std::map<std::string, int> counts;
  for (const Label &l: g.labels())
    ++counts[l];
  std::string out;
  auto emit = [&](const std::string &el) {
    auto it = counts.find(el);
    if (it == counts.end())
      return;
    out += el;
    if (it->second > 1)
      out += std::to_string(it->second);
    counts.erase(it);
  };
  if (counts.count("C")) {
    emit("C");
    emit("H");
  }
  while (!counts.empty())
    emit(counts.begin()->first);
  return out;
}

std::string export_dot(const MolGraph &g, const std::string &name) {
  std::ostringstream os;
  os << "graph " << dot_quote(name) << " {\n";
  os << "  node [shape=circle];\n";
  for (int v = 0; v < g.num_vertices(); ++v)
    os << "  v" << v << " [label=" << dot_quote(g.label(v)) << "];\n";
  for (const Edge &e: g.edges()) {
    os << "  v" << e.source << " -- v" << e.target << " [label=" << dot_quote(e.label)
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const Rule &r) {
  std::ostringstream os;
  os << "graph " << dot_quote(r.name.empty() ? "rule" : r.name) << " {\n";
  os << "  node [shape=circle];\n";
  for (const bool left: { true, false }) {
    const char *side = left ? "left" : "right";
    const char prefix = left ? 'l' : 'r';
    os << "  subgraph cluster_" << side << " {\n";
    os << "    label=" << dot_quote(side) << ";\n";
    for (int v = 0; v < r.num_vertices(); ++v) {
      const RuleVertex &x = r.vertices[v];
      const auto &l = left ? x.left : x.right;
      if (!l)
        continue;
      const bool changed = !(x.left && x.right && *x.left == *x.right);
      os << "    " << prefix << v << " [label=" << dot_quote(*l)
         << " xlabel=" << dot_quote(std::to_string(v)) << (changed ? kChanged : kContext)
         << "];\n";
    }
    for (const RuleEdge &e: r.edges) {
      const auto &l = left ? e.left : e.right;
      if (!l)
        continue;
      const bool changed = !(e.left && e.right && *e.left == *e.right);
      os << "    " << prefix << e.source << " -- " << prefix << e.target
         << " [label=" << dot_quote(*l) << (changed ? kChanged : kContext) << "];\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const ReactionNetwork &net) {
  std::ostringstream os;
  os << "digraph network {\n";
  os << "  node [shape=ellipse];\n";
  for (int s = 0; s < static_cast<int>(net.species.size()); ++s) {
    const Species &sp = net.species[s];
    os << "  s" << s << " [label="
       << dot_quote(molecular_formula(sp.graph) + "\n" + sp.code.hex_digest().substr(0, 8))
       << "];\n";
  }
  for (int h = 0; h < static_cast<int>(net.hyperedges.size()); ++h) {
    const Hyperedge &e = net.hyperedges[h];
    const std::string rule = net.rules[e.rule].name;
    os << "  h" << h << " [shape=box label="
       << dot_quote("(" + std::to_string(h + 1) + ", " + rule + ")") << "];\n";
    for (const int s: e.inputs)
      os << "  s" << s << " -> h" << h << ";\n";
    for (const int s: e.outputs)
      os << "  h" << h << " -> s" << s << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dpoc
