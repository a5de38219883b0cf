//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "dpoc/chemistry.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dpoc/compose.h"
#include "dpoc/rewrite.h"

namespace dpoc {

const Rule &Ruleset::rule(const std::string &name) const {
  for (const Rule &r: rules) {
    if (r.name == name)
      return r;
  }
  throw std::out_of_range("no rule named " + name);
}

const MolGraph &Ruleset::graph(const std::string &name) const {
  for (const NamedGraph &g: graphs) {
    if (g.name == name)
      return g.graph;
  }
  throw std::out_of_range("no graph named " + name);
}

std::vector<std::string> check_ruleset(const Ruleset &rs) {
  std::vector<std::string> out;
  for (const Rule &r: rs.rules) {
    if (!is_valid_rule(r))
      out.push_back(r.name + ": invalid rule");
    else if (rs.chemical && !conserves_atoms(r))
      out.push_back(r.name + ": does not conserve atoms");
  }
  return out;
}

MolGraph formaldehyde() {
  MolGraph g;
  const int c = g.add_vertex("C");
  const int o = g.add_vertex("O");
  const int h1 = g.add_vertex("H");
  const int h2 = g.add_vertex("H");
  g.add_edge(c, o, "=");
  g.add_edge(c, h1, "-");
  g.add_edge(c, h2, "-");
  return g;
}

MolGraph glycolaldehyde() {
  MolGraph g;
  const int c1 = g.add_vertex("C");
  const int o1 = g.add_vertex("O");
  const int h1 = g.add_vertex("H");
  const int c2 = g.add_vertex("C");
  const int h2 = g.add_vertex("H");
  const int h3 = g.add_vertex("H");
  const int o2 = g.add_vertex("O");
  const int h4 = g.add_vertex("H");
  g.add_edge(c1, o1, "=");
  g.add_edge(c1, h1, "-");
  g.add_edge(c1, c2, "-");
  g.add_edge(c2, h2, "-");
  g.add_edge(c2, h3, "-");
  g.add_edge(c2, o2, "-");
  g.add_edge(o2, h4, "-");
  return g;
}

namespace {

Rule keto_enol_backward() {
  Rule r;
  r.name = "p1";
  const int h = r.add_vertex("H", "H");
  const int o = r.add_vertex("O", "O");
  const int c1 = r.add_vertex("C", "C");
  const int c0 = r.add_vertex("C", "C");
  r.add_edge(h, o, "-", std::nullopt);
  r.add_edge(o, c1, "-", "=");
  r.add_edge(c1, c0, "=", "-");
  r.add_edge(c0, h, std::nullopt, "-");
  return r;
}

Rule aldol_backward(AldolContext context) {
  Rule r;
  r.name = "p3";
  const int h = r.add_vertex("H", "H");
  const int o4 = r.add_vertex("O", "O");
  const int c5 = r.add_vertex("C", "C");
  const int c0 = r.add_vertex("C", "C");
  const int c1 = r.add_vertex("C", "C");
  const int o2 = r.add_vertex("O", "O");
  r.add_edge(h, o4, "-", std::nullopt);
  r.add_edge(o4, c5, "-", "=");
  r.add_edge(c5, c0, "-", std::nullopt);
  r.add_edge(c0, c1, "-", "=");
  r.add_edge(c1, o2, "=", "-");
  r.add_edge(h, o2, std::nullopt, "-");
  if (context == AldolContext::kHydrogens) {
    const int he1 = r.add_vertex("H", "H");
    const int he2 = r.add_vertex("H", "H");
    r.add_edge(he1, c5, "-", "-");
    r.add_edge(he2, c0, "-", "-");
  }
  return r;
}

Rule renamed(Rule r, std::string name) {
  r.name = std::move(name);
  return r;
}

}  // namespace

Ruleset formose_ruleset(AldolContext context) {
  Ruleset rs;
  const Rule p1 = keto_enol_backward();
  const Rule p3 = aldol_backward(context);
  rs.rules.push_back(renamed(inverse(p1), "p0"));
  rs.rules.push_back(p1);
  rs.rules.push_back(renamed(inverse(p3), "p2"));
  rs.rules.push_back(p3);
  rs.graphs.push_back({ "g0", formaldehyde() });
  rs.graphs.push_back({ "g1", glycolaldehyde() });
  rs.chemical = true;
  return rs;
}

int heavy_atom_count(const MolGraph &g) {
  return static_cast<int>(std::count_if(g.labels().begin(), g.labels().end(),
                                        [](const Label &l) { return l != "H"; }));
}

int ReactionNetwork::find(const MolGraph &g) const {
  auto it = index_of.find(canonical_code(g));
  return it == index_of.end() ? -1 : it->second;
}

namespace {

struct RulePlan {
  const Rule *rule;
  int rule_index;
  std::vector<MolGraph> left_components;
};

struct PendingEdge {
  int rule;
  std::vector<int> inputs;
  std::vector<CanonicalCode> output_codes;
  std::vector<MolGraph> outputs;
  Embedding match;
};

// Whether the left components can be distributed over the inputs so that
// every input receives at least one and each fits where it is placed.
bool coverable(const std::vector<std::vector<char>> &fits,
               const std::vector<int> &tuple) {
  const int k = fits.empty() ? 0 : static_cast<int>(fits[0].size());
  const int s = static_cast<int>(tuple.size());
  std::vector<int> assign(k, 0);
  while (true) {
    std::vector<char> hit(s, 0);
    bool ok = true;
    for (int c = 0; c < k && ok; ++c) {
      ok = fits[tuple[assign[c]]][c];
      hit[assign[c]] = 1;
    }
    if (ok && std::all_of(hit.begin(), hit.end(), [](char x) { return x; }))
      return true;
    int c = 0;
    while (c < k && ++assign[c] == s) {
      assign[c] = 0;
      ++c;
    }
    if (c == k)
      return false;
  }
}

}  // namespace

ReactionNetwork expand_network(const std::vector<MolGraph> &seeds,
                               const Ruleset &rs, const ExpansionLimits &limits) {
  if (limits.max_species <= 0 || limits.max_atoms_per_species <= 0
      || limits.max_rounds < 0)
    throw ContractError("expansion limits must be positive");

  ReactionNetwork net;
  net.rules = rs.rules;

  std::vector<RulePlan> plans;
  for (int i = 0; i < static_cast<int>(rs.rules.size()); ++i) {
    const Rule &r = rs.rules[i];
    RulePlan plan{ &r, i, split_components(left_side(r).graph).components };
    if (!plan.left_components.empty())
      plans.push_back(std::move(plan));
  }

  // fits[rule][species][component]
  std::vector<std::vector<std::vector<char>>> fits(plans.size());
  auto add_species = [&](const MolGraph &g, CanonicalCode code, int round) {
    const int idx = static_cast<int>(net.species.size());
    net.index_of.emplace(code, idx);
    net.species.push_back({ g, std::move(code), round });
    for (std::size_t p = 0; p < plans.size(); ++p) {
      std::vector<char> row;
      for (const MolGraph &c: plans[p].left_components)
        row.push_back(find_embedding(c, g).has_value());
      fits[p].push_back(std::move(row));
    }
    return idx;
  };

  std::vector<int> seed_index;
  for (const MolGraph &seed: seeds) {
    CanonicalCode code = canonical_code(seed);
    if (auto it = net.index_of.find(code); it != net.index_of.end())
      seed_index.push_back(it->second);
    else
      seed_index.push_back(add_species(seed, std::move(code), 0));
  }

  std::set<std::tuple<int, std::vector<int>, std::vector<CanonicalCode>>> seen;
  int frontier_begin = 0;
  for (int round = 1; round <= limits.max_rounds; ++round) {
    const int n = static_cast<int>(net.species.size());
    if (frontier_begin >= n)
      break;

    if (round == 1) {
      // influx: the creation rule of each seed, applied to nothing
      for (int idx: seed_index) {
        if (std::any_of(net.hyperedges.begin(), net.hyperedges.end(),
                        [&](const Hyperedge &h) { return h.outputs[0] == idx; }))
          continue;
        net.rules.push_back(creation_rule(net.species[idx].graph, "influx"));
        Hyperedge influx;
        influx.outputs = { idx };
        influx.rule = static_cast<int>(net.rules.size()) - 1;
        influx.round = round;
        net.hyperedges.push_back(std::move(influx));
      }
    }

    std::vector<PendingEdge> pending;
    for (std::size_t p = 0; p < plans.size(); ++p) {
      const RulePlan &plan = plans[p];
      const int k = static_cast<int>(plan.left_components.size());

      std::vector<int> tuple;
      std::function<void(int, int)> visit = [&](int start, int size) {
        if (static_cast<int>(tuple.size()) == size) {
          if (tuple.back() < frontier_begin || !coverable(fits[p], tuple))
            return;
          ComponentMultiset hosts;
          for (int s: tuple)
            hosts.components.push_back(net.species[s].graph);

          for (const Embedding &m: find_matches(*plan.rule, hosts)) {
            if (!check_gluing(*plan.rule, m, hosts))
              continue;
            Derivation d;
            try {
              d = apply_at(*plan.rule, hosts, m);
            } catch (const RewriteError &) {
              continue;
            }
            if (!is_proper(d))
              continue;
            const bool too_big = std::any_of(
                d.outputs.components.begin(), d.outputs.components.end(),
                [&](const MolGraph &g) {
                  return heavy_atom_count(g) > limits.max_atoms_per_species;
                });
            if (too_big)
              continue;

            std::vector<std::pair<CanonicalCode, int>> coded;
            for (int o = 0; o < d.outputs.count(); ++o)
              coded.emplace_back(canonical_code(d.outputs.components[o]), o);
            std::sort(coded.begin(), coded.end());
            PendingEdge edge{ plan.rule_index, tuple, {}, {}, m };
            for (auto &[code, o]: coded) {
              edge.output_codes.push_back(code);
              edge.outputs.push_back(d.outputs.components[o]);
            }
            if (!seen.emplace(edge.rule, edge.inputs, edge.output_codes).second)
              continue;
            pending.push_back(std::move(edge));
          }
          return;
        }
        for (int s = start; s < n; ++s) {
          tuple.push_back(s);
          visit(s, size);
          tuple.pop_back();
        }
      };
      for (int size = 1; size <= k; ++size)
        visit(0, size);
    }

    std::map<CanonicalCode, const MolGraph *> fresh;
    for (const PendingEdge &e: pending) {
      for (std::size_t o = 0; o < e.outputs.size(); ++o) {
        if (!net.index_of.count(e.output_codes[o]))
          fresh.emplace(e.output_codes[o], &e.outputs[o]);
      }
    }
    for (auto &[code, g]: fresh) {
      if (static_cast<int>(net.species.size()) >= limits.max_species)
        break;
      add_species(*g, code, round);
    }

    for (PendingEdge &e: pending) {
      Hyperedge h;
      h.inputs = e.inputs;
      h.rule = e.rule;
      h.round = round;
      h.match = std::move(e.match);
      bool complete = true;
      for (const CanonicalCode &code: e.output_codes) {
        auto it = net.index_of.find(code);
        if (it == net.index_of.end()) {
          complete = false;
          break;
        }
        h.outputs.push_back(it->second);
      }
      if (!complete)
        continue;
      std::sort(h.outputs.begin(), h.outputs.end());
      net.hyperedges.push_back(std::move(h));
    }
    frontier_begin = n;
  }
  return net;
}

UniverseResult composition_universe(const std::vector<Rule> &rules,
                                    const std::vector<MolGraph> &bindables,
                                    const UniverseOptions &options) {
  if (options.max_len < 1)
    throw ContractError("max_len must be at least 1");

  UniverseResult result;
  result.new_at_level.assign(options.max_len + 1, 0);

  // Global dedup over every level, the bound graphs included.
  std::unordered_set<std::string> seen;
  std::vector<Rule> frontier;
  for (std::size_t q = 0; q < bindables.size(); ++q) {
    Rule bound = creation_rule(bindables[q], "g" + std::to_string(q));
    const std::string key =
        options.syntactic ? syntactic_key(bound) : rule_code(bound).bytes();
    if (seen.insert(key).second)
      frontier.push_back(std::move(bound));
  }
  result.new_at_level[0] = static_cast<long long>(frontier.size());

  for (int level = 1; level <= options.max_len && !frontier.empty(); ++level) {
    std::vector<Rule> next;
    auto offer = [&](std::string key, Rule &&c) {
      ++result.compositions;
      if (seen.insert(std::move(key)).second)
        next.push_back(std::move(c));
    };

    for (const Rule &r: frontier) {
      for (const Rule &p: rules) {
        if (options.syntactic) {
          const MatchMatrix mm = build_match_matrix(r, p);
          for (const PartialMatching &mu: enumerate_matchings(mm)) {
            if (std::optional<Rule> c = compose(r, p, mu)) {
              std::string key = syntactic_key(*c);
              offer(std::move(key), std::move(*c));
            }
          }
        } else {
          for (auto &[code, c]: compose_all_coded(r, p))
            offer(code.bytes(), std::move(c));
        }
      }
      if (result.count() + static_cast<long long>(next.size()) > options.max_rules) {
        result.truncated = true;
        break;
      }
    }
    result.new_at_level[level] = static_cast<long long>(next.size());
    for (const Rule &r: next)
      result.rules.push_back(r);
    frontier = std::move(next);
    if (result.truncated)
      break;
  }
  return result;
}

std::optional<PolymerPattern> detect_polymer_pattern(const Rule &r) {
  for (const bool use_left: { true, false }) {
    const RuleSide side = use_left ? left_side(r) : right_side(r);
    const ComponentSplit split = split_components(side.graph);

    std::map<CanonicalCode, std::pair<int, int>> groups;  // code -> (count, first)
    for (int c = 0; c < static_cast<int>(split.components.size()); ++c) {
      auto [it, inserted] =
          groups.emplace(canonical_code(split.components[c]), std::make_pair(0, c));
      ++it->second.first;
    }

    const MolGraph *best = nullptr;
    int best_count = 0;
    for (const auto &[code, entry]: groups) {
      const auto [count, first] = entry;
      if (count < 2)
        continue;
      const MolGraph &g = split.components[first];
      if (!best || g.num_vertices() > best->num_vertices()
          || (g.num_vertices() == best->num_vertices() && count > best_count)) {
        best = &g;
        best_count = count;
      }
    }
    if (best)
      return PolymerPattern{ *best, best_count, use_left };
  }
  return std::nullopt;
}

}  // namespace dpoc
