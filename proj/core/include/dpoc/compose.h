//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef DPOC_COMPOSE_H_
#define DPOC_COMPOSE_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpoc/canonical.h"
#include "dpoc/graph.h"
#include "dpoc/morphism.h"
#include "dpoc/rule.h"

namespace dpoc {

/**
 * Component-wise embeddings of the left graph of the second rule (rows) into
 * the right graph of the first rule (columns). Every row additionally owns one
 * implicit entry in a virtual column meaning "leave this component unmatched".
 *
 * Rows and columns are numbered by smallest rule-vertex index.
 */
struct MatchMatrix {
  RuleSide first_right;   // R of the first rule
  RuleSide second_left;   // L of the second rule
  ComponentSplit columns; // components of first_right.graph
  ComponentSplit rows;    // components of second_left.graph

  // cells[row][column]: embeddings of rows.components[row] into
  // columns.components[column], in component-local indices.
  std::vector<std::vector<std::vector<Embedding>>> cells;

  int num_rows() const { return static_cast<int>(cells.size()); }
  int num_columns() const { return static_cast<int>(columns.components.size()); }

  /// Number of non-virtual entries in a cell.
  int count(int row, int column) const {
    return static_cast<int>(cells[row][column].size());
  }
};

/// Entry chosen in one row; column == kVirtual marks the unmatched entry.
struct Selection {
  static constexpr int kVirtual = -1;

  int column = kVirtual;
  int entry = 0;

  bool is_virtual() const { return column == kVirtual; }
  bool operator==(const Selection &) const = default;
};

/**
 * A matching mu between R of the first rule and L of the second, given as a
 * relation on merged-rule indices: vertex_mu[v] is the first-rule vertex that
 * second-rule vertex v is identified with, or -1.
 */
struct PartialMatching {
  std::vector<Selection> selections;
  std::vector<int> vertex_mu;
  std::vector<int> edge_mu;

  bool is_full() const;
};

struct MatchingStats {
  long long raw_selections = 0;     // product over rows of (entries + 1)
  long long all_virtual = 0;        // excluded: nothing matched
  long long overlapping = 0;        // rejected: not disjoint within a column
  long long valid = 0;
};

MatchMatrix build_match_matrix(const Rule &first, const Rule &second);

/**
 * Every valid selection of one entry per row. The first row varies fastest,
 * entries within a row ordered by column then embedding, virtual last.
 */
std::vector<PartialMatching> enumerate_matchings(const MatchMatrix &mm,
                                                 MatchingStats *stats = nullptr);

/// Builds the PartialMatching for one explicit selection, or nullopt if the
/// selection is all-virtual or not disjoint.
std::optional<PartialMatching> matching_from_selection(
    const MatchMatrix &mm, const std::vector<Selection> &selections);

/**
 * The composite second o_mu first: the first rule is applied, then the second.
 * Returns nullopt (and sets *why) when the matching is rejected: the second
 * rule would create an edge that the first one leaves in place, or removes a
 * vertex that keeps edges.
 */
std::optional<Rule> compose(const Rule &first, const Rule &second,
                            const PartialMatching &mu, std::string *why = nullptr);

struct ComposeStats {
  MatchingStats matchings;
  long long rejected = 0;
  long long duplicates = 0;
};

/// All compositions over every matching, deduplicated by rule_code and
/// sorted by it.
std::vector<Rule> compose_all(const Rule &first, const Rule &second,
                              ComposeStats *stats = nullptr);

/// compose_all with the rule codes it already computed, in code order.
std::vector<std::pair<CanonicalCode, Rule>> compose_all_coded(
    const Rule &first, const Rule &second, ComposeStats *stats = nullptr);

/// Binds g to p: compose_all((empty, empty, g), p).
std::vector<Rule> bind(const MolGraph &g, const Rule &p);

/// The rule (g, empty, empty).
Rule unbind(const MolGraph &g);

/**
 * Folds a chain written outermost-first, rules = [p_k, ..., p_1], evaluated
 * p_1 first. Each step branches over compose_all; the result is the set of
 * end composites, deduplicated and sorted by rule_code.
 */
std::vector<Rule> compose_sequence(const std::vector<Rule> &rules);

/**
 * compose_sequence, keeping for each end composite one chain of intermediate
 * composites that leads to it: path[0] is the innermost rule and path.back()
 * the composite itself. Of several chains the one through the smallest codes
 * is kept.
 */
std::vector<std::vector<Rule>> compose_sequence_traced(const std::vector<Rule> &rules);

/**
 * Orderings (outermost-first, as indices into rules) under which
 * compose_sequence is non-empty. Identical rules are not permuted among
 * themselves. When innermost is given, that rule is held fixed at the
 * innermost position and is not part of the returned index lists.
 */
std::vector<std::vector<int>> find_orders(const std::vector<Rule> &rules,
                                          const std::optional<Rule> &innermost = std::nullopt);

}  // namespace dpoc

#endif  // DPOC_COMPOSE_H_
