#pragma once

// max_g |H ∩ gE| over an explicit group, the |H||E|/|X| lower bound and the
// exact double count sum_g |H ∩ gE| = |G||H||E|/|X| for transitive actions.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fqsim/groups.hpp"

namespace fqsim {

/// Nonnegative rational in lowest terms, den > 0.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t num, std::uint64_t den);
  /// value <= n, compared exactly.
  bool at_most(std::uint64_t n) const noexcept;
  bool is_integer() const noexcept { return den == 1; }
  bool operator==(const Rational&) const = default;
};

struct IntersectionReport {
  GroupElement best_g;
  std::uint64_t best_count = 0;
  Rational bound;
  std::uint64_t double_count_total = 0;
  bool transitive = false;
  std::uint64_t group_order = 0;
  std::uint64_t space_size = 0;
  /// count value -> number of group elements attaining it
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::vector<std::string> warnings;

  bool bound_holds() const noexcept { return bound.at_most(best_count); }
};

struct DoubleCountCheck {
  std::uint64_t total = 0;
  Rational expected;
  /// False when the action is not transitive; `equal` is then meaningless.
  bool applicable = false;
  bool equal = false;
};

struct ScanOptions {
  unsigned jobs = 1;
};

/// |H ∩ gE|.
std::uint64_t intersect_count(const GroupElement& g, const PointSet& e, const PointSet& h);

/// |H ∩ gE| for every g, in the group's canonical element order.
std::vector<std::uint64_t> intersection_counts(const FiniteGroup& group, const Space& space,
                                               const PointSet& e, const PointSet& h,
                                               const ScanOptions& options = {});

/// Exact maximum over the whole group; ties go to the canonically smallest g.
IntersectionReport max_intersection(const FiniteGroup& group, const Space& space, const PointSet& e,
                                    const PointSet& h, const ScanOptions& options = {});

DoubleCountCheck double_count_check(const FiniteGroup& group, const Space& space, const PointSet& e,
                                    const PointSet& h, const ScanOptions& options = {});

/// count(a) = |{(x, y) in E x H : y - x = a}| = |H ∩ (E + a)|, indexed by
/// the base-q encoding of a. O(|E||H| + q^d).
std::vector<std::uint64_t> translation_counts_fast(const PointSet& e, const PointSet& h);

/// Same contract as max_intersection over the translation group on F_q^d.
IntersectionReport max_translation_intersection_fast(const PointSet& e, const PointSet& h);

}  // namespace fqsim
