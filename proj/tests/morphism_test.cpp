//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "dpoc/io.h"
#include "dpoc/morphism.h"
#include "dpoc/rule.h"
#include "oracle.h"

namespace dpoc {
namespace {

MolGraph chain(std::initializer_list<const char *> labels, const char *bond = "-") {
  MolGraph g;
  int prev = -1;
  for (const char *l: labels) {
    const int v = g.add_vertex(l);
    if (prev >= 0)
      g.add_edge(prev, v, bond);
    prev = v;
  }
  return g;
}

std::vector<std::vector<int>> maps_of(const std::vector<Embedding> &es) {
  std::vector<std::vector<int>> out;
  for (const Embedding &e: es)
    out.push_back(e.vertex_map);
  return out;
}

TEST(Embeddings, CarbonylIntoFormaldehyde) {
  MolGraph co;
  co.add_edge(co.add_vertex("C"), co.add_vertex("O"), "=");
  EXPECT_EQ(enumerate_embeddings(co, oracle::formaldehyde()).size(), 1u);
  EXPECT_EQ(oracle::embeddings(co, oracle::formaldehyde()).size(), 1u);
  EXPECT_EQ(enumerate_embeddings(co, oracle::glycolaldehyde()).size(), 1u);
  EXPECT_EQ(oracle::embeddings(co, oracle::glycolaldehyde()).size(), 1u);
}

TEST(Embeddings, SingleHydrogen) {
  MolGraph h;
  h.add_vertex("H");
  EXPECT_EQ(enumerate_embeddings(h, oracle::formaldehyde()).size(), 2u);
}

TEST(Embeddings, FlipAutomorphism) {
  const MolGraph cc = chain({ "C", "C" });
  EXPECT_EQ(enumerate_embeddings(cc, cc).size(), 2u);
}

TEST(Embeddings, PatternLargerThanHost) {
  EXPECT_TRUE(enumerate_embeddings(oracle::glycolaldehyde(), oracle::formaldehyde()).empty());
  EXPECT_TRUE(enumerate_component_embeddings(chain({ "C", "C", "C" }), chain({ "C", "C" })).empty());
}

TEST(Embeddings, NonInduced) {
  MolGraph tri;
  for (int i = 0; i < 3; ++i)
    tri.add_vertex("C");
  tri.add_edge(0, 1, "-");
  tri.add_edge(1, 2, "-");
  tri.add_edge(2, 0, "-");
  EXPECT_EQ(enumerate_embeddings(chain({ "C", "C", "C" }), tri).size(), 6u);
}

TEST(Embeddings, SortedAndValid) {
  const MolGraph host = oracle::glyceraldehyde();
  const MolGraph pat = chain({ "C", "O" });
  const std::vector<Embedding> es = enumerate_embeddings(pat, host);
  EXPECT_TRUE(std::is_sorted(es.begin(), es.end()));
  for (const Embedding &e: es)
    EXPECT_TRUE(is_valid_embedding(pat, host, e));
  EXPECT_EQ(maps_of(es), oracle::embeddings(pat, host));
}

TEST(Embeddings, ComponentVersionRequiresConnectedArguments) {
  MolGraph two;
  two.add_vertex("C");
  two.add_vertex("C");
  EXPECT_THROW(enumerate_component_embeddings(two, chain({ "C", "C" })), ContractError);
  EXPECT_THROW(enumerate_component_embeddings(chain({ "C" }), two), ContractError);
}

TEST(Embeddings, TwoRuleExampleCells) {
  const Rule p1 = parse_rule(R"(rule [ context [
      node [ id 0 label "A" ] node [ id 1 label "B" ] node [ id 2 label "B" ]
      node [ id 3 label "C" ] node [ id 4 label "A" ] node [ id 5 label "B" ]
      node [ id 6 label "D" ] node [ id 7 label "D" ] node [ id 8 label "A" ]
      node [ id 9 label "B" ] node [ id 10 label "C" ] ]
    right [ edge [ source 0 target 1 label "-" ] edge [ source 2 target 3 label "-" ]
      edge [ source 4 target 5 label "-" ] edge [ source 5 target 6 label "-" ]
      edge [ source 6 target 7 label "-" ] edge [ source 7 target 8 label "-" ]
      edge [ source 8 target 9 label "-" ] edge [ source 9 target 10 label "-" ] ] ])");
  const ComponentSplit r1 = split_components(right_side(p1).graph);
  ASSERT_EQ(r1.components.size(), 3u);
  const MolGraph ab = chain({ "A", "B" });
  const MolGraph bc = chain({ "B", "C" });
  EXPECT_EQ(enumerate_component_embeddings(ab, r1.components[2]).size(), 2u);
  EXPECT_EQ(enumerate_component_embeddings(ab, r1.components[1]).size(), 0u);
  EXPECT_EQ(oracle::embeddings(ab, r1.components[2]).size(), 2u);
  EXPECT_EQ(oracle::embeddings(bc, r1.components[2]).size(), 1u);
}

TEST(Embeddings, AgreeWithBruteForceOnRandomPairs) {
  std::mt19937 rng(99);
  for (int t = 0; t < 1500; ++t) {
    const int hn = std::uniform_int_distribution<int>(1, 8)(rng);
    const int pn = std::uniform_int_distribution<int>(1, std::min(hn, 4))(rng);
    const MolGraph host = oracle::random_graph(rng, hn, 0.45, { "A", "B" }, { "-", "=" });
    const MolGraph pat = oracle::random_graph(rng, pn, 0.5, { "A", "B" }, { "-", "=" });
    ASSERT_EQ(maps_of(enumerate_embeddings(pat, host)), oracle::embeddings(pat, host))
        << "trial " << t;
  }
}

TEST(Embeddings, UnionCountIsInjectiveProduct) {
  std::mt19937 rng(4);
  for (int t = 0; t < 200; ++t) {
    const MolGraph a = oracle::random_graph(rng, 3, 0.7, { "A", "B" }, { "-" });
    const MolGraph b = oracle::random_graph(rng, 4, 0.6, { "A", "B" }, { "-" });
    const MolGraph parts[] = { a, b };
    const MolGraph host = disjoint_union(parts).graph;
    const MolGraph pat = oracle::random_graph(rng, 3, 0.3, { "A", "B" }, { "-" });
    const ComponentMultiset pc = connected_components(pat);

    // combinations of per-component embeddings into either host component,
    // kept only when globally injective
    std::vector<std::vector<std::vector<int>>> per;
    for (const MolGraph &c: pc.components) {
      std::vector<std::vector<int>> all;
      for (const auto &m: oracle::embeddings(c, host))
        all.push_back(m);
      per.push_back(all);
    }
    std::size_t count = 0;
    std::vector<int> used;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == per.size()) {
        ++count;
        return;
      }
      for (const auto &m: per[i]) {
        if (std::any_of(m.begin(), m.end(),
                        [&](int u) { return std::count(used.begin(), used.end(), u) > 0; }))
          continue;
        used.insert(used.end(), m.begin(), m.end());
        rec(i + 1);
        used.resize(used.size() - m.size());
      }
    };
    rec(0);
    EXPECT_EQ(enumerate_embeddings(pat, host).size(), count);
  }
}

}  // namespace
}  // namespace dpoc
