//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef DPOC_IO_H_
#define DPOC_IO_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "dpoc/chemistry.h"
#include "dpoc/graph.h"
#include "dpoc/rule.h"

namespace dpoc {

/// Malformed document. line and column are 1-based; 0 when not applicable.
class ParseError: public std::runtime_error {
public:
  ParseError(const std::string &what, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/**
 * Reads `graph [ node [ id 0 label "C" ] edge [ source 0 target 1 label "-" ] ]`.
 * Vertices are numbered in ascending id order. `#` starts a line comment.
 */
MolGraph parse_graph(std::string_view doc);

/// Writes vertices as ids 0..n-1, in index order.
std::string serialize_graph(const MolGraph &g);

/**
 * Reads `rule [ ruleID "name" left [ ... ] context [ ... ] right [ ... ] ]`.
 *
 * An element listed in context is on both sides; a same-id entry in left or
 * right overrides that side's label. An element in left only is deleted and
 * one in right only is created. A left edge and a right edge on the same pair
 * form a single relabelled context edge.
 */
Rule parse_rule(std::string_view doc);

std::string serialize_rule(const Rule &r);

/// True when the first keyword of the document is `rule`.
bool is_rule_document(std::string_view doc);

std::string export_dot(const MolGraph &g, const std::string &name = "G");

/**
 * Left and right graphs as two clusters. Elements the rule deletes, creates
 * or relabels carry class="changed" and a red pen; context is plain.
 */
std::string export_dot(const Rule &r);

/// Species as ellipses, hyperedges as boxes labelled "(i, rule)", 1-based.
std::string export_dot(const ReactionNetwork &net);

/// Hill-order formula, e.g. "CH2O".
std::string molecular_formula(const MolGraph &g);

}  // namespace dpoc

#endif  // DPOC_IO_H_
