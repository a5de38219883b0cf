//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "dpoc/canonical.h"
#include "oracle.h"

namespace dpoc {
namespace {

MolGraph shuffled(const MolGraph &g, std::mt19937 &rng) {
  std::vector<int> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return permute_vertices(g, perm);
}

MolGraph cycle(int n, const char *label = "C") {
  MolGraph g;
  for (int i = 0; i < n; ++i)
    g.add_vertex(label);
  for (int i = 0; i < n; ++i)
    g.add_edge(i, (i + 1) % n, "-");
  return g;
}

MolGraph disjoint(const MolGraph &a, const MolGraph &b) {
  const MolGraph parts[] = { a, b };
  return disjoint_union(parts).graph;
}

TEST(CanonicalCode, InvariantUnderRenumbering) {
  std::mt19937 rng(11);
  const MolGraph corpus[] = { oracle::formaldehyde(), oracle::glycolaldehyde(),
                              oracle::glyceraldehyde(), oracle::tetrulose(),
                              oracle::aldotetrose(), cycle(6) };
  for (const MolGraph &g: corpus) {
    const CanonicalCode c = canonical_code(g);
    for (int t = 0; t < 20; ++t)
      EXPECT_EQ(canonical_code(shuffled(g, rng)), c);
  }
}

TEST(CanonicalCode, DistinguishesIsomers) {
  // same formula C4H8O4, different structures
  EXPECT_NE(canonical_code(oracle::tetrulose()), canonical_code(oracle::aldotetrose()));
  EXPECT_NE(canonical_code(oracle::tetrulose()), canonical_code(oracle::tetrulose_enol()));
  EXPECT_NE(canonical_code(oracle::glycolaldehyde()), canonical_code(oracle::ethenediol()));
}

TEST(CanonicalCode, RegularGraphsThatRefinementAloneCannotSplit) {
  EXPECT_NE(canonical_code(cycle(6)), canonical_code(disjoint(cycle(3), cycle(3))));
  EXPECT_NE(canonical_code(cycle(8)), canonical_code(disjoint(cycle(4), cycle(4))));
  EXPECT_NE(canonical_code(cycle(8)), canonical_code(disjoint(cycle(3), cycle(5))));

  // 3-cube vs. the Wagner graph: both 3-regular on 8 vertices
  MolGraph cube;
  for (int i = 0; i < 8; ++i)
    cube.add_vertex("C");
  for (int i = 0; i < 8; ++i) {
    for (int b = 1; b <= 4; b <<= 1) {
      if (i < (i ^ b))
        cube.add_edge(i, i ^ b, "-");
    }
  }
  MolGraph wagner = cycle(8);  // cycle plus long diagonals
  for (int i = 0; i < 4; ++i)
    wagner.add_edge(i, i + 4, "-");
  EXPECT_EQ(oracle::isomorphic(cube, wagner), canonical_code(cube) == canonical_code(wagner));
  EXPECT_FALSE(oracle::isomorphic(cube, wagner));

  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    EXPECT_EQ(canonical_code(shuffled(cube, rng)), canonical_code(cube));
    EXPECT_EQ(canonical_code(shuffled(wagner, rng)), canonical_code(wagner));
  }
}

TEST(CanonicalCode, AgreesWithBruteForceOnRandomGraphs) {
  std::mt19937 rng(5);
  int iso = 0;
  for (int t = 0; t < 3000; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 7)(rng);
    const MolGraph a = oracle::random_graph(rng, n, 0.4, { "A", "B" }, { "-", "=" });
    const MolGraph b = t % 3 == 0 ? shuffled(a, rng)
                                  : oracle::random_graph(rng, n, 0.4, { "A", "B" }, { "-", "=" });
    const bool same = oracle::isomorphic(a, b);
    iso += same;
    ASSERT_EQ(canonical_code(a) == canonical_code(b), same) << "trial " << t;
    ASSERT_EQ(is_isomorphic(a, b), same) << "trial " << t;
  }
  EXPECT_GT(iso, 1000);
}

TEST(CanonicalCode, UnlabelledRandomGraphsUpToSeven) {
  std::mt19937 rng(17);
  for (int t = 0; t < 2000; ++t) {
    const MolGraph a = oracle::random_graph(rng, 7, 0.5, { "X" }, { "-" });
    const MolGraph b = oracle::random_graph(rng, 7, 0.5, { "X" }, { "-" });
    ASSERT_EQ(canonical_code(a) == canonical_code(b), oracle::isomorphic(a, b)) << t;
  }
}

TEST(CanonicalCode, MultisetMatchesUnion) {
  const ComponentMultiset m{ { oracle::glycolaldehyde(), oracle::formaldehyde() } };
  const ComponentMultiset swapped{ { oracle::formaldehyde(), oracle::glycolaldehyde() } };
  EXPECT_EQ(canonical_code(m), canonical_code(swapped));
  EXPECT_EQ(canonical_code(m), canonical_code(disjoint_union(m.components).graph));
  EXPECT_TRUE(is_isomorphic(m, swapped));
}

TEST(CanonicalCode, HexDigest) {
  const std::string hex = canonical_code(oracle::formaldehyde()).hex_digest();
  EXPECT_EQ(hex.size(), 16u);
  EXPECT_TRUE(std::all_of(hex.begin(), hex.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  }));
  EXPECT_EQ(CanonicalCode("").hash(), 0xcbf29ce484222325ull);
}

TEST(CanonicalForm, IdenticalForIsomorphicGraphs) {
  std::mt19937 rng(23);
  const MolGraph g = oracle::aldotetrose();
  const MolGraph f = canonical_form(g);
  for (int t = 0; t < 10; ++t)
    EXPECT_EQ(canonical_form(shuffled(g, rng)), f);
  const std::vector<int> order = canonical_order(g);
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < g.num_vertices(); ++i)
    EXPECT_EQ(sorted[i], i);
}

}  // namespace
}  // namespace dpoc
