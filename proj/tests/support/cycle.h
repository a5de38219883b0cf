//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

// The autocatalytic formose cycle written out as elementary steps, plus a
// step-by-step replay that uses only the oracle.

#ifndef DPOC_TESTS_CYCLE_H_
#define DPOC_TESTS_CYCLE_H_

#include <string>
#include <vector>

#include "dpoc/chemistry.h"

namespace dpoc::cycle {

struct Step {
  std::string rule;  // "influx" for the formaldehyde supply
  std::vector<MolGraph> inputs;
  std::vector<MolGraph> outputs;
};

/// Influx of formaldehyde followed by the eight rule steps turning one
/// glycolaldehyde and two formaldehyde into two glycolaldehyde.
std::vector<Step> formose_cycle();

/// Replays every rule step of formose_cycle with oracle::embeddings and
/// oracle::rewrite. Returns an empty string on success, else the first
/// failing step.
std::string replay_with_oracle(const Ruleset &rs);

/// Reads a file below the data directory.
std::string read_data(const std::string &relative);

}  // namespace dpoc::cycle

#endif  // DPOC_TESTS_CYCLE_H_
