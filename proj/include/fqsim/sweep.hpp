#pragma once

// Batch experiments over a Cartesian range of (q, k, r, seed). Each run
// draws a seeded random E, runs a finder and emits one JSON line; a final
// summary line counts outcomes. Lines are written in run order regardless
// of the number of workers.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fqsim/serialize.hpp"

namespace fqsim {

enum class SweepMode { similar, det_similar };

struct SweepConfig {
  SweepMode mode = SweepMode::similar;
  std::vector<std::uint64_t> qs;
  std::size_t d = 2;
  std::vector<std::size_t> ks;
  /// Empty: every nonzero square (similar) or d-th power (det_similar).
  std::vector<std::int64_t> rs;
  std::uint64_t seeds = 1;
  std::uint64_t seed_base = 0;
  /// Set size; defaults to the smallest size meeting the threshold.
  std::optional<std::uint64_t> size;
  std::string edges = "simplex";
  unsigned jobs = 1;
  std::uint64_t enumeration_cap = kEnumerationCap;
  bool timing = true;
};

struct SweepSummary {
  std::uint64_t runs = 0;
  std::uint64_t witnesses = 0;
  /// InsufficientIntersection on sets below the threshold (allowed).
  std::uint64_t below_threshold_misses = 0;
  /// Threshold met but no verified witness: should never happen.
  std::uint64_t violations = 0;
  std::uint64_t errors = 0;

  bool passed() const noexcept { return violations == 0 && errors == 0; }
};

json to_json(const SweepSummary& s);

/// Nonzero elements of (F_q)^m in increasing order.
std::vector<FieldElement> nonzero_mth_powers(PrimeField field, std::uint64_t m);

SweepSummary run_sweep(const SweepConfig& config, std::ostream& out);

}  // namespace fqsim
