//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef DPOC_CANONICAL_H_
#define DPOC_CANONICAL_H_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dpoc/graph.h"

namespace dpoc {

/// Byte string equal for two graphs iff they are label-isomorphic.
class CanonicalCode {
public:
  CanonicalCode() = default;
  explicit CanonicalCode(std::string bytes): bytes_(std::move(bytes)) { }

  const std::string &bytes() const { return bytes_; }

  /// 64-bit FNV-1a of the bytes; stable across platforms.
  std::uint64_t hash() const;

  /// hash() as 16 lowercase hex digits.
  std::string hex_digest() const;

  auto operator<=>(const CanonicalCode &) const = default;

private:
  std::string bytes_;
};

struct CanonicalCodeHash {
  std::size_t operator()(const CanonicalCode &c) const {
    return static_cast<std::size_t>(c.hash());
  }
};

CanonicalCode canonical_code(const MolGraph &g);

/// Code of the multiset of components; equals canonical_code of their union.
CanonicalCode canonical_code(const ComponentMultiset &m);

/**
 * Vertices of g in canonical order: order[i] is the vertex placed at
 * position i. Two isomorphic graphs reordered this way become identical up
 * to the order of interchangeable (automorphic) vertices.
 */
std::vector<int> canonical_order(const MolGraph &g);

/// g renumbered by canonical_order, with edges sorted by endpoint positions.
MolGraph canonical_form(const MolGraph &g);

/// Label-preserving isomorphism test by direct search (independent of codes).
bool is_isomorphic(const MolGraph &g, const MolGraph &h);

/// Multiset equality up to per-component isomorphism.
bool is_isomorphic(const ComponentMultiset &a, const ComponentMultiset &b);

}  // namespace dpoc

#endif  // DPOC_CANONICAL_H_
