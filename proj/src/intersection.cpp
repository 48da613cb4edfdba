#include "fqsim/intersection.hpp"

#include <numeric>

#include "fqsim/parallel.hpp"

namespace fqsim {

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(Errc::division_by_zero, "rational with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

bool Rational::at_most(std::uint64_t n) const noexcept {
  return static_cast<unsigned __int128>(num) <= static_cast<unsigned __int128>(n) * den;
}

namespace {

void require_same_ambient(const PointSet& a, const PointSet& b) {
  if (a.field() != b.field() || a.dim() != b.dim()) {
    throw Error(Errc::space_mismatch, "point sets live in different spaces F_" +
                                          std::to_string(a.field().order()) + "^" +
                                          std::to_string(a.dim()) + " and F_" +
                                          std::to_string(b.field().order()) + "^" +
                                          std::to_string(b.dim()));
  }
}

void require_subsets(const FiniteGroup& group, const Space& space, const PointSet& e,
                     const PointSet& h) {
  group.require_acts_on(space);
  if (!space.contains_all(e) || !space.contains_all(h)) {
    throw Error(Errc::space_mismatch, "E and H must be subsets of the " + space.describe() + " space");
  }
}

// |H||E| / |X|; an empty space only admits empty sets, bound 0.
Rational intersection_bound(const PointSet& e, const PointSet& h, std::uint64_t space_size) {
  if (space_size == 0) return Rational{};
  return Rational::make(std::uint64_t{e.size()} * h.size(), space_size);
}

template <class ElementAt>
IntersectionReport report_from_counts(const std::vector<std::uint64_t>& counts, ElementAt element_at,
                                      const PointSet& e, const PointSet& h, std::uint64_t space_size,
                                      bool transitive) {
  std::size_t best = 0;
  std::uint64_t total = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;  // strict: keeps the smallest maximizer
    total += counts[i];
    ++histogram[counts[i]];
  }
  IntersectionReport report{
      .best_g = element_at(best),
      .best_count = counts.empty() ? 0 : counts[best],
      .bound = intersection_bound(e, h, space_size),
      .double_count_total = total,
      .transitive = transitive,
      .group_order = counts.size(),
      .space_size = space_size,
      .histogram = std::move(histogram),
      .warnings = {},
  };
  if (e.empty() || h.empty()) report.warnings.push_back("E or H is empty; the bound is vacuous");
  return report;
}

}  // namespace

std::uint64_t intersect_count(const GroupElement& g, const PointSet& e, const PointSet& h) {
  require_same_ambient(e, h);
  if (g.field() != e.field() || g.dim() != e.dim()) {
    throw Error(Errc::space_mismatch, "group element and point sets live in different spaces");
  }
  std::uint64_t count = 0;
  for (const auto& x : e) count += h.contains(g.act(x)) ? 1 : 0;
  return count;
}

std::vector<std::uint64_t> intersection_counts(const FiniteGroup& group, const Space& space,
                                               const PointSet& e, const PointSet& h,
                                               const ScanOptions& options) {
  require_subsets(group, space, e, h);
  const IndexMask in_h(h);
  std::vector<std::uint64_t> counts(group.size(), 0);
  parallel_chunks(group.size(), options.jobs, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const GroupElement& g = group[i];
      std::uint64_t c = 0;
      for (const auto& x : e) c += in_h.test(g.act(x).encode()) ? 1 : 0;
      counts[i] = c;
    }
  });
  return counts;
}

IntersectionReport max_intersection(const FiniteGroup& group, const Space& space, const PointSet& e,
                                    const PointSet& h, const ScanOptions& options) {
  const auto counts = intersection_counts(group, space, e, h, options);
  return report_from_counts(
      counts, [&](std::size_t i) { return group[i]; }, e, h, space.size(),
      is_transitive(group, space));
}

DoubleCountCheck double_count_check(const FiniteGroup& group, const Space& space, const PointSet& e,
                                    const PointSet& h, const ScanOptions& options) {
  const auto counts = intersection_counts(group, space, e, h, options);
  DoubleCountCheck check;
  check.total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  check.applicable = is_transitive(group, space);
  if (space.size() > 0) {
    check.expected = Rational::make(std::uint64_t{group.size()} * e.size() * h.size(), space.size());
  }
  check.equal = check.expected.is_integer() && check.expected.num == check.total;
  return check;
}

std::vector<std::uint64_t> translation_counts_fast(const PointSet& e, const PointSet& h) {
  require_same_ambient(e, h);
  std::vector<std::uint64_t> counts(checked_space_size(e.field(), e.dim()), 0);
  for (const auto& y : h) {
    for (const auto& x : e) ++counts[(y - x).encode()];
  }
  return counts;
}

IntersectionReport max_translation_intersection_fast(const PointSet& e, const PointSet& h) {
  const auto counts = translation_counts_fast(e, h);
  const PrimeField f = e.field();
  const std::size_t d = e.dim();
  return report_from_counts(
      counts, [&](std::size_t i) { return GroupElement::translation(Vector::decode(f, d, i)); }, e,
      h, counts.size(), true);
}

}  // namespace fqsim
