//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "dpoc/canonical.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace dpoc {
namespace {

void put_int(std::string &out, std::uint32_t x) {
  out.push_back(static_cast<char>((x >> 24) & 0xff));
  out.push_back(static_cast<char>((x >> 16) & 0xff));
  out.push_back(static_cast<char>((x >> 8) & 0xff));
  out.push_back(static_cast<char>(x & 0xff));
}

void put_str(std::string &out, const std::string &s) {
  put_int(out, static_cast<std::uint32_t>(s.size()));
  out += s;
}

int find_root(std::vector<int> &parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Individualization-refinement over a connected "core" graph whose vertices
// carry integer labels. Keeps the lexicographically smallest leaf code.
// Automorphisms discovered between leaves prune sibling branches that lie in
// the same orbit of the path stabilizer.
class CoreCanonicalizer {
public:
  CoreCanonicalizer(std::vector<std::vector<int>> vlabels,
                    std::vector<std::vector<std::pair<int, int>>> adj,
                    int num_edge_labels)
      : n_(static_cast<int>(vlabels.size())), vlabels_(std::move(vlabels)),
        adj_(std::move(adj)), stride_(num_edge_labels + 1) { }

  // Returns the core vertices in canonical order and the code of that order.
  std::pair<std::vector<int>, std::vector<int>> run() {
    std::vector<int> colors(n_);
    std::vector<int> idx(n_);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return vlabels_[a] < vlabels_[b]; });
    int rank = 0;
    for (int i = 0; i < n_; ++i) {
      if (i > 0 && vlabels_[idx[i]] != vlabels_[idx[i - 1]])
        ++rank;
      colors[idx[i]] = rank;
    }

    std::vector<int> path;
    search(std::move(colors), path);

    std::vector<int> order(n_);
    for (int v = 0; v < n_; ++v)
      order[best_colors_[v]] = v;
    return { std::move(order), std::move(best_code_) };
  }

private:
  static int rerank(std::vector<int> &colors,
                    const std::vector<std::vector<int>> &sig,
                    std::vector<int> &idx) {
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return sig[a] < sig[b]; });
    int rank = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0 && sig[idx[i]] != sig[idx[i - 1]])
        ++rank;
      colors[idx[i]] = rank;
    }
    return idx.empty() ? 0 : rank + 1;
  }

  void refine(std::vector<int> &colors) const {
    std::vector<int> idx(n_);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<int>> sig(n_);

    int count = 0;
    {
      std::vector<int> seen(colors);
      std::sort(seen.begin(), seen.end());
      count = static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
    }
    while (count < n_) {
      for (int v = 0; v < n_; ++v) {
        std::vector<int> &s = sig[v];
        s.clear();
        s.push_back(colors[v]);
        for (auto [u, el]: adj_[v])
          s.push_back(colors[u] * stride_ + el);
        std::sort(s.begin() + 1, s.end());
      }
      const int next = rerank(colors, sig, idx);
      if (next == count)
        break;
      count = next;
    }
  }

  std::vector<int> leaf_code(const std::vector<int> &pos) const {
    std::vector<int> inv(n_);
    for (int v = 0; v < n_; ++v)
      inv[pos[v]] = v;

    std::vector<int> code;
    code.push_back(n_);
    for (int p = 0; p < n_; ++p) {
      const std::vector<int> &l = vlabels_[inv[p]];
      code.push_back(static_cast<int>(l.size()));
      code.insert(code.end(), l.begin(), l.end());
    }
    std::vector<std::tuple<int, int, int>> edges;
    for (int v = 0; v < n_; ++v) {
      for (auto [u, el]: adj_[v]) {
        if (pos[v] < pos[u])
          edges.emplace_back(pos[v], pos[u], el);
      }
    }
    std::sort(edges.begin(), edges.end());
    code.push_back(static_cast<int>(edges.size()));
    for (auto [a, b, el]: edges) {
      code.push_back(a);
      code.push_back(b);
      code.push_back(el);
    }
    return code;
  }

  void record_automorphism(const std::vector<int> &pos,
                           const std::vector<int> &other_pos) {
    std::vector<int> other_inv(n_);
    for (int v = 0; v < n_; ++v)
      other_inv[other_pos[v]] = v;
    std::vector<int> gamma(n_);
    bool identity = true;
    for (int v = 0; v < n_; ++v) {
      gamma[v] = other_inv[pos[v]];
      identity = identity && gamma[v] == v;
    }
    if (!identity)
      generators_.push_back(std::move(gamma));
  }

  void leaf(const std::vector<int> &pos) {
    std::vector<int> code = leaf_code(pos);
    if (first_code_.empty()) {
      first_code_ = code;
      first_colors_ = pos;
      best_code_ = std::move(code);
      best_colors_ = pos;
      return;
    }
    if (code == first_code_) {
      record_automorphism(pos, first_colors_);
      return;
    }
    if (code == best_code_) {
      record_automorphism(pos, best_colors_);
      return;
    }
    if (code < best_code_) {
      best_code_ = std::move(code);
      best_colors_ = pos;
    }
  }

  std::vector<int> stabilizer_orbits(const std::vector<int> &path) const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    for (const std::vector<int> &g: generators_) {
      bool fixes = true;
      for (int p: path) {
        if (g[p] != p) {
          fixes = false;
          break;
        }
      }
      if (!fixes)
        continue;
      for (int v = 0; v < n_; ++v) {
        const int a = find_root(parent, v), b = find_root(parent, g[v]);
        if (a != b)
          parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v)
      parent[v] = find_root(parent, v);
    return parent;
  }

  void search(std::vector<int> colors, std::vector<int> &path) {
    refine(colors);

    std::vector<int> size(n_, 0);
    for (int c: colors)
      ++size[c];
    int target = -1;
    for (int c = 0; c < n_; ++c) {
      if (size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      leaf(colors);
      return;
    }

    std::vector<int> explored;
    for (int w = 0; w < n_; ++w) {
      if (colors[w] != target)
        continue;
      if (!explored.empty() && !generators_.empty()) {
        const std::vector<int> orbit = stabilizer_orbits(path);
        const bool redundant = std::any_of(
            explored.begin(), explored.end(),
            [&](int e) { return orbit[e] == orbit[w]; });
        if (redundant)
          continue;
      }
      explored.push_back(w);

      std::vector<int> child(n_);
      for (int v = 0; v < n_; ++v)
        child[v] = 2 * colors[v] + (v == w ? 0 : 1);
      std::vector<int> sorted(child);
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (int &c: child)
        c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c)
                             - sorted.begin());

      path.push_back(w);
      search(std::move(child), path);
      path.pop_back();
    }
  }

  int n_;
  std::vector<std::vector<int>> vlabels_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  int stride_;

  std::vector<int> first_code_, first_colors_;
  std::vector<int> best_code_, best_colors_;
  std::vector<std::vector<int>> generators_;
};

struct ComponentCanon {
  std::string code;
  std::vector<int> order;
};

// Degree-1 vertices hanging off a vertex of degree >= 2 (explicit hydrogens,
// mostly) are folded into their neighbor's label before the search. They are
// interchangeable whenever their labels agree, so this loses nothing and
// removes most of the symmetry molecules carry.
ComponentCanon canonicalize_component(const MolGraph &c) {
  const int n = c.num_vertices();

  std::vector<std::string> table(c.labels());
  for (const Edge &e: c.edges())
    table.push_back(e.label);
  std::sort(table.begin(), table.end());
  table.erase(std::unique(table.begin(), table.end()), table.end());
  auto id = [&](const std::string &s) {
    return static_cast<int>(std::lower_bound(table.begin(), table.end(), s)
                            - table.begin());
  };

  std::vector<char> absorbed(n, 0);
  for (int v = 0; v < n; ++v) {
    if (c.degree(v) == 1 && c.degree(c.neighbors(v)[0].vertex) >= 2)
      absorbed[v] = 1;
  }

  std::vector<int> core, core_index(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!absorbed[v]) {
      core_index[v] = static_cast<int>(core.size());
      core.push_back(v);
    }
  }

  const int nc = static_cast<int>(core.size());
  std::vector<std::vector<int>> vlabels(nc);
  std::vector<std::vector<std::pair<int, int>>> adj(nc);
  for (int i = 0; i < nc; ++i) {
    const int v = core[i];
    std::vector<std::pair<int, int>> leaves;
    for (const Adjacency &a: c.neighbors(v)) {
      const int el = id(c.edge(a.edge).label);
      if (absorbed[a.vertex])
        leaves.emplace_back(el, id(c.label(a.vertex)));
      else
        adj[i].emplace_back(core_index[a.vertex], el);
    }
    std::sort(leaves.begin(), leaves.end());
    std::vector<int> &l = vlabels[i];
    l.push_back(id(c.label(v)));
    for (auto [el, ll]: leaves) {
      l.push_back(el);
      l.push_back(ll);
    }
  }

  CoreCanonicalizer canon(std::move(vlabels), std::move(adj),
                          static_cast<int>(table.size()));
  auto [core_order, code] = canon.run();

  ComponentCanon out;
  put_int(out.code, static_cast<std::uint32_t>(table.size()));
  for (const std::string &s: table)
    put_str(out.code, s);
  for (int x: code)
    put_int(out.code, static_cast<std::uint32_t>(x));

  std::vector<int> position(n, -1);
  for (int p = 0; p < nc; ++p) {
    out.order.push_back(core[core_order[p]]);
    position[core[core_order[p]]] = p;
  }
  std::vector<std::tuple<int, int, int, int>> leaves;
  for (int v = 0; v < n; ++v) {
    if (absorbed[v]) {
      const Adjacency &a = c.neighbors(v)[0];
      leaves.emplace_back(position[a.vertex], id(c.edge(a.edge).label),
                          id(c.label(v)), v);
    }
  }
  std::sort(leaves.begin(), leaves.end());
  for (auto [p, el, ll, v]: leaves)
    out.order.push_back(v);
  return out;
}

struct GraphCanon {
  CanonicalCode code;
  std::vector<int> order;
};

GraphCanon canonicalize(const MolGraph &g) {
  const ComponentSplit split = split_components(g);
  const int nc = static_cast<int>(split.components.size());

  std::vector<ComponentCanon> parts;
  parts.reserve(nc);
  for (const MolGraph &c: split.components)
    parts.push_back(canonicalize_component(c));

  std::vector<int> idx(nc);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return parts[a].code < parts[b].code;
  });

  GraphCanon out;
  std::string bytes;
  put_int(bytes, static_cast<std::uint32_t>(nc));
  for (int i: idx) {
    put_str(bytes, parts[i].code);
    for (int local: parts[i].order)
      out.order.push_back(split.vertices[i][local]);
  }
  out.code = CanonicalCode(std::move(bytes));
  return out;
}

}  // namespace

std::uint64_t CanonicalCode::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch: bytes_) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string CanonicalCode::hex_digest() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::uint64_t h = hash();
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[h & 0xf];
    h >>= 4;
  }
  return out;
}

CanonicalCode canonical_code(const MolGraph &g) {
  return canonicalize(g).code;
}

CanonicalCode canonical_code(const ComponentMultiset &m) {
  std::vector<std::string> codes;
  codes.reserve(m.components.size());
  for (const MolGraph &c: m.components) {
    // A disconnected member contributes each of its components.
    const ComponentSplit split = split_components(c);
    for (const MolGraph &part: split.components)
      codes.push_back(canonicalize_component(part).code);
  }
  std::sort(codes.begin(), codes.end());

  std::string bytes;
  put_int(bytes, static_cast<std::uint32_t>(codes.size()));
  for (const std::string &s: codes)
    put_str(bytes, s);
  return CanonicalCode(std::move(bytes));
}

std::vector<int> canonical_order(const MolGraph &g) {
  return canonicalize(g).order;
}

MolGraph canonical_form(const MolGraph &g) {
  const std::vector<int> order = canonical_order(g);
  std::vector<int> position(g.num_vertices());
  MolGraph out;
  for (std::size_t p = 0; p < order.size(); ++p) {
    position[order[p]] = static_cast<int>(p);
    out.add_vertex(g.label(order[p]));
  }

  std::vector<std::tuple<int, int, const Label *>> edges;
  for (const Edge &e: g.edges()) {
    int a = position[e.source], b = position[e.target];
    if (a > b)
      std::swap(a, b);
    edges.emplace_back(a, b, &e.label);
  }
  std::sort(edges.begin(), edges.end(), [](const auto &x, const auto &y) {
    return std::tie(std::get<0>(x), std::get<1>(x))
           < std::tie(std::get<0>(y), std::get<1>(y));
  });
  for (auto [a, b, l]: edges)
    out.add_edge(a, b, *l);
  return out;
}

bool is_isomorphic(const ComponentMultiset &a, const ComponentMultiset &b) {
  return canonical_code(a) == canonical_code(b);
}

}  // namespace dpoc
