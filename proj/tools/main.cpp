//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpoc/canonical.h"
#include "dpoc/chemistry.h"
#include "dpoc/compose.h"
#include "dpoc/graph.h"
#include "dpoc/io.h"
#include "dpoc/morphism.h"
#include "dpoc/rewrite.h"
#include "dpoc/rule.h"

namespace fs = std::filesystem;
using namespace dpoc;

namespace {

// exit 1
class DomainError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// exit 2
class UsageError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> rules;
  std::vector<std::string> graphs;
  int max_len = 10;
  int max_atoms = 14;
  int max_species = 1000;
  int max_rounds = 8;
  std::string out;
  std::string format = "gml";
  bool all_matches = false;
  bool proper_only = false;
  bool syntactic = false;
  bool no_alternates = false;
  std::string aldol_context = "hydrogens";
  std::string demo;
};

struct Document {
  std::string name;  // file name inside --out
  std::string text;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string where(const std::string &path, const ParseError &e) {
  return path + ":" + e.what();
}

Rule load_rule(const std::string &path) {
  try {
    Rule r = parse_rule(read_file(path));
    if (r.name.empty())
      r.name = fs::path(path).stem().string();
    return r;
  } catch (const ParseError &e) {
    throw UsageError(where(path, e));
  } catch (const GraphError &e) {
    throw UsageError(path + ": " + e.what());
  }
}

MolGraph load_graph(const std::string &path) {
  try {
    return parse_graph(read_file(path));
  } catch (const ParseError &e) {
    throw UsageError(where(path, e));
  } catch (const GraphError &e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<Rule> load_rules(const Options &o) {
  std::vector<Rule> out;
  for (const std::string &p: o.rules)
    out.push_back(load_rule(p));
  return out;
}

std::vector<MolGraph> load_graphs(const Options &o) {
  std::vector<MolGraph> out;
  for (const std::string &p: o.graphs)
    out.push_back(load_graph(p));
  return out;
}

AldolContext aldol_context(const Options &o) {
  return o.aldol_context == "bare" ? AldolContext::kBare : AldolContext::kHydrogens;
}

bool dot(const Options &o) { return o.format == "dot"; }

std::string extension(const Options &o) { return dot(o) ? ".dot" : ".gml"; }

Document rule_document(const Options &o, const Rule &r) {
  return { rule_code(r).hex_digest() + extension(o),
           dot(o) ? export_dot(r) : serialize_rule(r) };
}

Document graph_document(const Options &o, const MolGraph &g, const CanonicalCode &code) {
  return { code.hex_digest() + extension(o),
           dot(o) ? export_dot(g, code.hex_digest()) : serialize_graph(g) };
}

// Writes every document or none: files go to temporaries first and are renamed
// once all of them exist.
void write_all(const std::string &dir, const std::vector<Document> &docs) {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec)
    throw DomainError("cannot create " + dir + ": " + ec.message());

  std::vector<fs::path> temps;
  std::vector<fs::path> done;
  try {
    for (const Document &d: docs) {
      const fs::path tmp = root / ("." + d.name + ".tmp");
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      temps.push_back(tmp);
      os << d.text;
      os.close();
      if (!os)
        throw DomainError("cannot write " + tmp.string());
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const fs::path target = root / docs[i].name;
      fs::rename(temps[i], target);
      done.push_back(target);
    }
  } catch (...) {
    for (const fs::path &p: temps)
      fs::remove(p, ec);
    for (const fs::path &p: done)
      fs::remove(p, ec);
    throw;
  }
}

// Documents to --out if given, else to stdout.
void emit(const Options &o, const std::vector<Document> &docs) {
  if (o.out.empty()) {
    for (const Document &d: docs)
      std::cout << d.text;
    return;
  }
  write_all(o.out, docs);
  for (const Document &d: docs)
    std::cout << (fs::path(o.out) / d.name).string() << "\n";
}

// Documents to --out only; stdout carries a summary instead.
void emit_files(const Options &o, const std::vector<Document> &docs) {
  if (!o.out.empty())
    write_all(o.out, docs);
}

void need(bool ok, const std::string &what) {
  if (!ok)
    throw UsageError(what);
}

int cmd_apply(const Options &o) {
  need(o.rules.size() == 1, "apply needs exactly one --rule");
  need(!o.graphs.empty(), "apply needs at least one --graph");
  const Rule r = load_rule(o.rules[0]);
  ComponentMultiset hosts{ load_graphs(o) };

  std::map<CanonicalCode, MolGraph> results;
  std::string last_failure = "no match";
  for (const Embedding &m: find_matches(r, hosts)) {
    Derivation d;
    try {
      d = apply_at(r, hosts, m);
    } catch (const RewriteError &e) {
      last_failure = e.what();
      continue;
    }
    if (o.proper_only && !is_proper(d)) {
      last_failure = "no proper derivation";
      continue;
    }
    results.try_emplace(canonical_code(d.outputs), disjoint_union(d.outputs.components).graph);
    if (!o.all_matches)
      break;
  }
  if (results.empty())
    throw DomainError(last_failure);

  std::vector<Document> docs;
  for (const auto &[code, g]: results)
    docs.push_back(graph_document(o, g, code));
  emit(o, docs);
  return 0;
}

int cmd_compose(const Options &o, bool all) {
  need(o.rules.size() == 2, "compose needs exactly two --rule (applied first, then second)");
  const Rule first = load_rule(o.rules[0]);
  const Rule second = load_rule(o.rules[1]);

  std::vector<Rule> out;
  if (all || o.all_matches) {
    out = compose_all(first, second);
    if (out.empty())
      throw DomainError("no valid composition");
  } else {
    std::string why = "no matching between the rules";
    for (const PartialMatching &mu: enumerate_matchings(build_match_matrix(first, second))) {
      if (std::optional<Rule> c = compose(first, second, mu, &why)) {
        out.push_back(std::move(*c));
        break;
      }
    }
    if (out.empty())
      throw DomainError("rejected composition: " + why);
  }

  std::vector<Document> docs;
  for (const Rule &r: out)
    docs.push_back(rule_document(o, r));
  emit(o, docs);
  return 0;
}

int cmd_bind(const Options &o) {
  need(o.rules.size() == 1 && o.graphs.size() == 1, "bind needs one --graph and one --rule");
  const Rule p = load_rule(o.rules[0]);
  const MolGraph g = load_graph(o.graphs[0]);
  std::vector<Rule> out = compose_all(creation_rule(g, fs::path(o.graphs[0]).stem().string()), p);
  if (out.empty())
    throw DomainError("graph does not bind to " + p.name);
  std::vector<Document> docs;
  for (const Rule &r: out)
    docs.push_back(rule_document(o, r));
  emit(o, docs);
  return 0;
}

// --rule outermost-first; each --graph becomes a binding, innermost last.
std::vector<Rule> chain_of(const Options &o) {
  std::vector<Rule> chain = load_rules(o);
  for (std::size_t i = o.graphs.size(); i-- > 0;) {
    const std::string name = fs::path(o.graphs[i]).stem().string();
    chain.push_back(creation_rule(load_graph(o.graphs[i]), name));
  }
  return chain;
}

int cmd_sequence(const Options &o) {
  need(!o.rules.empty(), "sequence needs at least one --rule");
  const std::vector<Rule> out = compose_sequence(chain_of(o));
  if (out.empty())
    throw DomainError("the sequence does not compose");
  std::vector<Document> docs;
  for (const Rule &r: out)
    docs.push_back(rule_document(o, r));
  emit(o, docs);
  return 0;
}

int cmd_orders(const Options &o) {
  need(!o.rules.empty(), "orders needs at least one --rule");
  need(o.graphs.size() <= 1, "orders takes at most one --graph");
  const std::vector<Rule> rules = load_rules(o);
  std::optional<Rule> innermost;
  if (!o.graphs.empty())
    innermost = creation_rule(load_graph(o.graphs[0]), fs::path(o.graphs[0]).stem().string());
  const std::vector<std::vector<int>> orders = find_orders(rules, innermost);
  if (orders.empty())
    throw DomainError("no order composes");
  for (const std::vector<int> &order: orders) {
    std::string line;
    for (const int i: order)
      line += (line.empty() ? "" : " o ") + rules[i].name;
    if (innermost)
      line += " o " + innermost->name;
    std::cout << line << "\n";
  }
  return 0;
}

int cmd_expand(const Options &o) {
  Ruleset rs = formose_ruleset(aldol_context(o));
  if (!o.rules.empty())
    rs.rules = load_rules(o);
  std::vector<MolGraph> seeds = load_graphs(o);
  if (seeds.empty())
    seeds = { rs.graph("g0"), rs.graph("g1") };

  ExpansionLimits limits;
  limits.max_atoms_per_species = o.max_atoms;
  limits.max_species = o.max_species;
  limits.max_rounds = o.max_rounds;
  const ReactionNetwork net = expand_network(seeds, rs, limits);

  std::cout << "species " << net.species.size() << "\n";
  std::cout << "hyperedges " << net.hyperedges.size() << "\n";
  std::vector<Document> docs;
  if (dot(o)) {
    docs.push_back({ "network.dot", export_dot(net) });
  } else {
    for (const Species &s: net.species)
      docs.push_back(graph_document(o, s.graph, s.code));
  }
  emit_files(o, docs);
  return 0;
}

UniverseResult run_universe(const std::vector<Rule> &rules, const std::vector<MolGraph> &bindables,
                            int max_len, bool syntactic) {
  UniverseOptions opts;
  opts.max_len = max_len;
  opts.syntactic = syntactic;
  return composition_universe(rules, bindables, opts);
}

int cmd_universe(const Options &o) {
  need(o.max_len >= 1, "--max-len must be at least 1");
  const Ruleset rs = formose_ruleset(aldol_context(o));
  const std::vector<Rule> rules = o.rules.empty() ? rs.rules : load_rules(o);
  std::vector<MolGraph> bindables = load_graphs(o);
  if (bindables.empty())
    bindables = { rs.graph("g0"), rs.graph("g1") };

  const auto t0 = std::chrono::steady_clock::now();
  const UniverseResult main = run_universe(rules, bindables, o.max_len, o.syntactic);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (main.truncated)
    throw DomainError("rule limit reached; result truncated");
  std::cout << main.count() << "\n";

  if (!o.no_alternates) {
    auto row = [](const std::string &what, long long n) {
      std::cout << "  " << what << ": " << n << "\n";
    };
    std::cout << "dedup " << (o.syntactic ? "syntactic" : "isomorphism")
              << ", k = rules composed after binding, k <= " << o.max_len << "\n";
    std::cout << "  new per level:";
    for (std::size_t k = 1; k < main.new_at_level.size(); ++k)
      std::cout << " " << main.new_at_level[k];
    std::cout << "\n";
    long long upto_prev = 0;
    for (int k = 1; k < o.max_len; ++k)
      upto_prev += main.new_at_level[k];
    row("binding counted as a step, k <= " + std::to_string(o.max_len), upto_prev);
    row("bound graphs included", main.count() + main.new_at_level[0]);
    const UniverseResult longer = run_universe(rules, bindables, o.max_len + 1, o.syntactic);
    row("k <= " + std::to_string(o.max_len + 1), longer.count());
    const UniverseResult other = run_universe(rules, bindables, o.max_len, !o.syntactic);
    row(std::string(o.syntactic ? "isomorphism" : "syntactic") + " dedup", other.count());
    std::cout << "  seconds: " << secs << "\n";
  }

  std::vector<Document> docs;
  for (const Rule &r: main.rules)
    docs.push_back(rule_document(o, r));
  emit_files(o, docs);
  return 0;
}

int carbonyl_components(const MolGraph &g) {
  int n = 0;
  for (const MolGraph &c: connected_components(g).components) {
    for (const Edge &e: c.edges()) {
      const bool co = (c.label(e.source) == "C" && c.label(e.target) == "O")
                      || (c.label(e.source) == "O" && c.label(e.target) == "C");
      if (co && e.label == "=") {
        ++n;
        break;
      }
    }
  }
  return n;
}

int cmd_demo(const Options &o) {
  need(o.demo == "formose", "unknown demo '" + o.demo + "' (available: formose)");
  const Ruleset rs = formose_ruleset(aldol_context(o));
  std::vector<Rule> chain;
  for (const char *name: { "p1", "p3", "p1", "p0", "p2", "p0", "p2", "p0" })
    chain.push_back(rs.rule(name));
  chain.push_back(creation_rule(rs.graph("g1"), "g1"));

  const ComponentMultiset feed{ { rs.graph("g0"), rs.graph("g0") } };
  const ComponentMultiset want{ { rs.graph("g1"), rs.graph("g1") } };
  std::optional<std::vector<Rule>> path;
  for (std::vector<Rule> &p: compose_sequence_traced(chain)) {
    const Rule &meta = p.back();
    if (connected_components(left_side(meta).graph).count() != 2)
      continue;
    for (const Embedding &m: find_matches(meta, feed)) {
      if (!check_gluing(meta, m, feed))
        continue;
      if (is_isomorphic(apply_at(meta, feed, m).outputs, want)) {
        path = std::move(p);
        break;
      }
    }
    if (path)
      break;
  }
  if (!path)
    throw DomainError("no composite of the cycle reproduces 2 g0 + g1 -> 2 g1");

  std::vector<Document> docs;
  for (std::size_t i = 0; i < path->size(); ++i) {
    const Rule &r = (*path)[i];
    docs.push_back(rule_document(o, r));
    std::cout << "row " << i + 1 << "  " << rule_code(r).hex_digest() << "  " << r.name << "\n";
  }
  emit_files(o, docs);

  const Rule &meta = path->back();
  std::cout << carbonyl_components(left_side(meta).graph) << " carbonyl components → "
            << connected_components(right_side(meta).graph).count() << " product components\n";
  return 0;
}

int cmd_canon(const Options &o) {
  need(!o.graphs.empty() || !o.rules.empty(), "canon needs --graph or --rule");
  for (const std::string &p: o.graphs)
    std::cout << canonical_code(load_graph(p)).hex_digest() << "  " << p << "\n";
  for (const std::string &p: o.rules)
    std::cout << rule_code(load_rule(p)).hex_digest() << "  " << p << "\n";
  return 0;
}

void add_common(CLI::App *app, Options &o) {
  app->add_option("--rule", o.rules, "Rule file (repeatable, ordered)");
  app->add_option("--graph", o.graphs, "Graph file (repeatable)");
  app->add_option("--max-len", o.max_len, "Longest composition chain")->check(CLI::PositiveNumber);
  app->add_option("--max-atoms", o.max_atoms, "Non-hydrogen atoms per species")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-species", o.max_species, "Species cap")->check(CLI::PositiveNumber);
  app->add_option("--max-rounds", o.max_rounds, "Expansion rounds")->check(CLI::NonNegativeNumber);
  app->add_option("--out", o.out, "Output directory, one file per result");
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({ "gml", "dot" }));
  app->add_flag("--all-matches", o.all_matches, "Keep every match instead of the first");
  app->add_flag("--proper-only", o.proper_only, "Keep proper derivations only");
  app->add_flag("--syntactic", o.syntactic, "Deduplicate composites syntactically");
  app->add_flag("--no-alternates", o.no_alternates, "Skip the alternate universe counts");
  app->add_option("--aldol-context", o.aldol_context, "Context of the built-in aldol rules")
      ->check(CLI::IsMember({ "hydrogens", "bare" }));
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{ "DPO rule application and composition" };
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char *name;
    const char *help;
  };
  const Command commands[] = {
    { "apply", "Apply one rule to a multiset of graphs" },
    { "compose", "First valid composition of --rule A then --rule B" },
    { "compose-all", "Every composition of --rule A then --rule B" },
    { "bind", "Bind a graph to a rule" },
    { "sequence", "Compose a chain given outermost-first; --graph binds innermost" },
    { "orders", "Orders in which the given rules compose" },
    { "expand", "Expand a reaction network" },
    { "universe", "Count every composite of bounded length" },
    { "demo", "Built-in demonstrations" },
    { "canon", "Print canonical hashes" },
  };
  std::map<std::string, CLI::App *> subs;
  for (const Command &c: commands) {
    CLI::App *sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    subs[c.name] = sub;
  }
  subs["demo"]->add_option("name", o.demo, "Demonstration (formose)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (subs["apply"]->parsed())
      return cmd_apply(o);
    if (subs["compose"]->parsed())
      return cmd_compose(o, false);
    if (subs["compose-all"]->parsed())
      return cmd_compose(o, true);
    if (subs["bind"]->parsed())
      return cmd_bind(o);
    if (subs["sequence"]->parsed())
      return cmd_sequence(o);
    if (subs["orders"]->parsed())
      return cmd_orders(o);
    if (subs["expand"]->parsed())
      return cmd_expand(o);
    if (subs["universe"]->parsed())
      return cmd_universe(o);
    if (subs["demo"]->parsed())
      return cmd_demo(o);
    if (subs["canon"]->parsed())
      return cmd_canon(o);
  } catch (const UsageError &e) {
    std::cerr << "dpoc: " << e.what() << "\n";
    return 2;
  } catch (const ContractError &e) {
    std::cerr << "dpoc: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "dpoc: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
