//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <random>

#include <gtest/gtest.h>

#include "cycle.h"
#include "dpoc/canonical.h"
#include "dpoc/chemistry.h"
#include "dpoc/compose.h"
#include "dpoc/io.h"
#include "oracle.h"

namespace dpoc {
namespace {

int count_of(const std::string &hay, const std::string &needle) {
  int n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1))
    ++n;
  return n;
}

ParseError graph_error(const std::string &doc) {
  try {
    parse_graph(doc);
  } catch (const ParseError &e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << doc;
  return ParseError("", 0, 0);
}

ParseError rule_error(const std::string &doc) {
  try {
    parse_rule(doc);
  } catch (const ParseError &e) {
    return e;
  }
  ADD_FAILURE() << "no error for: " << doc;
  return ParseError("", 0, 0);
}

TEST(ParseGraph, Formaldehyde) {
  const MolGraph g = parse_graph(cycle::read_data("formose/g0.gml"));
  EXPECT_TRUE(oracle::isomorphic(g, oracle::formaldehyde()));
  EXPECT_EQ(molecular_formula(g), "CH2O");
  EXPECT_EQ(molecular_formula(oracle::aldotetrose()), "C4H8O4");
}

TEST(ParseGraph, IdsNeedNotBeContiguous) {
  const MolGraph g = parse_graph(R"(graph [
    # comment line
    node [ id 40 label "O" ]
    node [ id 7 label "C" ]
    edge [ source 40 target 7 label "=" ]
  ])");
  ASSERT_EQ(g.num_vertices(), 2);
  EXPECT_EQ(g.label(0), "C");  // ascending id order
  EXPECT_EQ(g.label(1), "O");
}

TEST(ParseGraph, Escapes) {
  const MolGraph g = parse_graph(R"(graph [ node [ id 0 label "a\"b\\c\x41" ] ])");
  EXPECT_EQ(g.label(0), "a\"b\\cA");
}

TEST(ParseGraph, ErrorsCarryPositions) {
  const ParseError e = graph_error("graph [\n  node [ id 0 label \"C\" ]\n  node [ id 0 label \"O\" ]\n]");
  EXPECT_EQ(e.line(), 3);
  EXPECT_GT(e.column(), 0);
  EXPECT_NE(std::string(e.what()).find("duplicate node id 0"), std::string::npos);
  EXPECT_EQ(std::string(e.what()).rfind("3:", 0), 0u);

  EXPECT_NE(std::string(graph_error("graph [ node [ id 0 label \"C\" ] edge [ source 0 target 1 label \"-\" ] ]").what())
                .find("dangling edge"),
            std::string::npos);
  EXPECT_NE(std::string(graph_error("graph [ node [ id 0 label \"C\" ] node [ id 1 label \"C\" ]\n"
                                    "edge [ source 0 target 1 label \"-\" ]\n"
                                    "edge [ source 1 target 0 label \"=\" ] ]")
                            .what())
                .find("parallel edge"),
            std::string::npos);
  EXPECT_EQ(graph_error("graph [ node [ id 0 label \"C\" ] edge [ source 0 target 0 label \"-\" ] ]").line(), 1);
  graph_error("graph [ node [ id 0 label \"C\" ]");
  graph_error("graph [ node [ id 0 label C ] ]");
  graph_error("graph [ node [ id 0 ] ]");
  graph_error("graph [ node [ id 0 label \"C\" colour \"red\" ] ]");
  graph_error("rule [ ]");
  graph_error("");
  graph_error("graph [ node [ id 0 label \"unterminated ] ]");
}

TEST(ParseRule, KetoEnolFile) {
  const Rule r = parse_rule(cycle::read_data("formose/p1.gml"));
  EXPECT_EQ(r.name, "p1");
  EXPECT_EQ(rule_code(r), rule_code(formose_ruleset().rule("p1")));
}

TEST(ParseRule, LeftAndRightOnSamePairIsARelabel) {
  const Rule r = parse_rule(R"(rule [
    context [ node [ id 0 label "C" ] node [ id 1 label "O" ] ]
    left [ edge [ source 0 target 1 label "-" ] ]
    right [ edge [ source 1 target 0 label "=" ] ]
  ])");
  ASSERT_EQ(r.edges.size(), 1u);
  EXPECT_EQ(r.edges[0].left, "-");
  EXPECT_EQ(r.edges[0].right, "=");
}

TEST(ParseRule, NodeRelabelAndCreation) {
  const Rule r = parse_rule(R"(rule [
    context [ node [ id 0 label "C" ] ]
    left [ node [ id 1 label "X" ] edge [ source 0 target 1 label "-" ] ]
    right [ node [ id 0 label "N" ] node [ id 2 label "Y" ] edge [ source 0 target 2 label "-" ] ]
  ])");
  ASSERT_EQ(r.num_vertices(), 3);
  EXPECT_EQ(r.vertices[0].left, "C");
  EXPECT_EQ(r.vertices[0].right, "N");
  EXPECT_FALSE(r.vertices[1].right.has_value());
  EXPECT_FALSE(r.vertices[2].left.has_value());
}

TEST(ParseRule, DanglingIsRejected) {
  const ParseError e = rule_error(R"(rule [
    left [ node [ id 0 label "C" ] ]
    context [ node [ id 1 label "O" ] ]
    right [ edge [ source 0 target 1 label "-" ] ]
  ])");
  EXPECT_NE(std::string(e.what()).find("dangling edge"), std::string::npos);
  EXPECT_EQ(e.line(), 4);
  rule_error("rule [ ruleID \"a\" ruleID \"b\" ]");
  rule_error("rule [ left [ ] left [ ] ]");
  rule_error("graph [ ]");
}

TEST(RoundTrip, Graphs) {
  std::mt19937 rng(9);
  for (int t = 0; t < 200; ++t) {
    const MolGraph g = oracle::random_graph(rng, 6, 0.4, { "C", "O", "H" }, { "-", "=" });
    const MolGraph back = parse_graph(serialize_graph(g));
    EXPECT_EQ(back, g);
    EXPECT_EQ(canonical_code(back), canonical_code(g));
  }
}

TEST(RoundTrip, Rules) {
  const Ruleset rs = formose_ruleset();
  std::vector<Rule> rules = rs.rules;
  for (const Rule &r: compose_all(rs.rule("p3"), rs.rule("p1")))
    rules.push_back(r);
  for (const Rule &r: bind(rs.graph("g1"), rs.rule("p0")))
    rules.push_back(r);
  for (const Rule &r: rules) {
    const std::string doc = serialize_rule(r);
    EXPECT_TRUE(is_rule_document(doc));
    const Rule back = parse_rule(doc);
    EXPECT_EQ(rule_code(back), rule_code(r)) << doc;
    EXPECT_EQ(back.name, r.name);
  }
  EXPECT_FALSE(is_rule_document(serialize_graph(oracle::formaldehyde())));
}

TEST(RoundTrip, KetoEnolDocumentLayout) {
  const std::string doc = serialize_rule(formose_ruleset().rule("p1"));
  const std::size_t left = doc.find("left ["), context = doc.find("context ["),
                    right = doc.find("right [");
  ASSERT_NE(left, std::string::npos);
  ASSERT_NE(context, std::string::npos);
  ASSERT_NE(right, std::string::npos);
  EXPECT_EQ(count_of(doc.substr(left, context - left), "edge ["), 3);
  EXPECT_EQ(count_of(doc.substr(right), "edge ["), 3);
  EXPECT_EQ(count_of(doc.substr(context, right - context), "node ["), 4);
  EXPECT_EQ(count_of(doc.substr(left, context - left), "node ["), 0);
}

TEST(Dot, KetoEnolRule) {
  const std::string dot = export_dot(formose_ruleset().rule("p1"));
  EXPECT_EQ(count_of(dot, "subgraph cluster_left"), 1);
  EXPECT_EQ(count_of(dot, "subgraph cluster_right"), 1);
  // three bonds change on each side; the atoms stay
  EXPECT_EQ(count_of(dot, "class=\"changed\""), 6);
  EXPECT_EQ(count_of(dot, "class=\"context\""), 8);
}

TEST(Dot, Graph) {
  const std::string dot = export_dot(oracle::formaldehyde(), "g0");
  EXPECT_EQ(dot.rfind("graph \"g0\" {", 0), 0u);
  EXPECT_EQ(count_of(dot, " -- "), 3);
}

TEST(Dot, Networks) {
  const Ruleset rs = formose_ruleset();
  ExpansionLimits none;
  none.max_rounds = 0;
  const std::string lone = export_dot(expand_network({ rs.graph("g0") }, rs, none));
  EXPECT_EQ(count_of(lone, "shape=box"), 0);
  EXPECT_NE(lone.find("CH2O"), std::string::npos);

  ExpansionLimits two;
  two.max_rounds = 2;
  const ReactionNetwork net = expand_network({ rs.graph("g0"), rs.graph("g1") }, rs, two);
  const std::string dot = export_dot(net);
  EXPECT_EQ(count_of(dot, "shape=box"), static_cast<int>(net.hyperedges.size()));
  EXPECT_NE(dot.find("(1, "), std::string::npos);
}

TEST(Dot, CycleSubNetworkHasNineBoxes) {
  const Ruleset rs = formose_ruleset();
  ReactionNetwork net = expand_network({ rs.graph("g0"), rs.graph("g1") }, rs, ExpansionLimits{});
  auto graphs = [&](const std::vector<int> &ids) {
    std::vector<MolGraph> out;
    for (const int i: ids)
      out.push_back(net.species[i].graph);
    return out;
  };
  std::vector<Hyperedge> kept;
  for (const cycle::Step &s: cycle::formose_cycle()) {
    for (const Hyperedge &h: net.hyperedges) {
      const bool rule_ok = s.rule == "influx" ? h.inputs.empty() : net.rules[h.rule].name == s.rule;
      if (rule_ok && oracle::isomorphic(graphs(h.inputs), s.inputs)
          && oracle::isomorphic(graphs(h.outputs), s.outputs)) {
        kept.push_back(h);
        break;
      }
    }
  }
  ASSERT_EQ(kept.size(), 9u);
  net.hyperedges = kept;
  const std::string dot = export_dot(net);
  EXPECT_EQ(count_of(dot, "shape=box"), 9);
  EXPECT_NE(dot.find("(9, p1)"), std::string::npos);
}

}  // namespace
}  // namespace dpoc
