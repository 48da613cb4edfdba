#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fqsim/intersection.hpp"
#include "oracles.hpp"

using namespace fqsim;

namespace {

Vector vec(PrimeField f, std::vector<std::uint32_t> c) { return Vector(f, std::move(c)); }

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an fqsim::Error");
  return Errc::invalid_argument;
}

PointSet random_subset(const PointSet& universe, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(0.5);
  std::vector<Vector> pts;
  for (const auto& p : universe)
    if (keep(rng)) pts.push_back(p);
  return PointSet(universe.field(), universe.dim(), std::move(pts));
}

PointSet subset_from_mask(const PointSet& universe, std::uint64_t mask) {
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (mask >> i & 1) pts.push_back(universe[i]);
  return PointSet(universe.field(), universe.dim(), std::move(pts));
}

std::vector<oracle::Coords> raw(const PointSet& s) {
  std::vector<oracle::Coords> out;
  for (const auto& p : s) out.emplace_back(p.coords().begin(), p.coords().end());
  return out;
}

}  // namespace

TEST_CASE("Rational") {
  const Rational r = Rational::make(4, 6);
  CHECK(r.num == 2);
  CHECK(r.den == 3);
  CHECK(r.at_most(1));
  CHECK_FALSE(r.at_most(0));
  CHECK(Rational::make(9, 3).is_integer());
  CHECK(Rational::make(0, 7) == Rational{0, 1});
}

TEST_CASE("intersect_count examples") {
  const PrimeField f3 = make_field(3);
  const PointSet e(f3, 1, {vec(f3, {0}), vec(f3, {1})});
  CHECK(intersect_count(GroupElement::translation(vec(f3, {0})), e, e) == 2);
  CHECK(intersect_count(GroupElement::translation(vec(f3, {1})), e, e) == 1);
  const PointSet other(f3, 1, {vec(f3, {2})});
  CHECK(intersect_count(GroupElement::translation(vec(f3, {0})), e, other) == 0);
  const PointSet plane(f3, 2, {vec(f3, {0, 0})});
  CHECK(error_code([&] { intersect_count(GroupElement::translation(vec(f3, {0})), e, plane); }) ==
        Errc::space_mismatch);
}

TEST_CASE("max_intersection on F_3 with E = H = {0, 1}") {
  const PrimeField f3 = make_field(3);
  const FiniteGroup g = translations(f3, 1);
  const Space x = Space::full(f3, 1);
  const PointSet e(f3, 1, {vec(f3, {0}), vec(f3, {1})});
  CHECK(intersection_counts(g, x, e, e) == std::vector<std::uint64_t>{2, 1, 1});
  const auto report = max_intersection(g, x, e, e);
  CHECK(report.best_count == 2);
  CHECK(report.best_g.is_identity());
  CHECK(report.bound == Rational{4, 3});
  CHECK(report.bound_holds());
  CHECK(report.double_count_total == 4);
  CHECK(report.transitive);
  CHECK(report.histogram == std::map<std::uint64_t, std::uint64_t>{{1, 2}, {2, 1}});

  const auto dc = double_count_check(g, x, e, e);
  CHECK(dc.applicable);
  CHECK(dc.equal);
  CHECK(dc.total == 4);
  CHECK(dc.expected == Rational{4, 1});
}

TEST_CASE("equality case E = H = X") {
  for (std::uint64_t q : {3, 5}) {
    const PrimeField f = make_field(q);
    const Space x = Space::punctured(f, 2);
    const auto report = max_intersection(special_linear_group(f, 2), x, x.elements(), x.elements());
    CHECK(report.best_count == x.size());
    CHECK(report.bound == Rational{x.size(), 1});
  }
}

TEST_CASE("empty sets are a degenerate success") {
  const PrimeField f = make_field(5);
  const Space x = Space::full(f, 2);
  const PointSet empty(f, 2);
  const auto report = max_intersection(translations(f, 2), x, empty, x.elements());
  CHECK(report.best_count == 0);
  CHECK(report.bound == Rational{0, 1});
  CHECK(report.bound_holds());
  CHECK_FALSE(report.warnings.empty());
  const auto dc = double_count_check(translations(f, 2), x, empty, empty);
  CHECK(dc.total == 0);
  CHECK(dc.equal);
}

TEST_CASE("SL_2(F_3) double count on a single point") {
  const PrimeField f3 = make_field(3);
  const Space x = Space::punctured(f3, 2);
  const PointSet e(f3, 2, {vec(f3, {1, 0})});
  const auto dc = double_count_check(special_linear_group(f3, 2), x, e, e);
  CHECK(dc.applicable);
  CHECK(dc.total == 3);
  CHECK(dc.equal);
}

TEST_CASE("non-transitive actions report not-applicable") {
  const PrimeField f3 = make_field(3);
  const Space x = Space::full(f3, 2);
  const PointSet origin(f3, 2, {Vector::zero(f3, 2)});
  const auto dc = double_count_check(special_linear_group(f3, 2), x, origin, origin);
  CHECK_FALSE(dc.applicable);
  // Every element fixes the origin: 24 != 24 / 9.
  CHECK(dc.total == 24);
  CHECK_FALSE(dc.equal);
}

TEST_CASE("sets outside the space are rejected") {
  const PrimeField f3 = make_field(3);
  const Space x = Space::punctured(f3, 2);
  const PointSet with_origin(f3, 2, {Vector::zero(f3, 2)});
  CHECK(error_code([&] { max_intersection(special_linear_group(f3, 2), x, with_origin, with_origin); }) ==
        Errc::space_mismatch);
}

TEST_CASE("bound and double count over all subset pairs, |X| <= 8") {
  for (std::uint64_t q : {3, 5}) {
    const PrimeField f = make_field(q);
    const FiniteGroup g = translations(f, 1);
    const Space x = Space::full(f, 1);
    for (std::uint64_t me = 0; me < (1u << x.size()); ++me)
      for (std::uint64_t mh = 0; mh < (1u << x.size()); ++mh) {
        const PointSet e = subset_from_mask(x.elements(), me), h = subset_from_mask(x.elements(), mh);
        const auto report = max_intersection(g, x, e, h);
        CHECK(report.bound_holds());
        CHECK(double_count_check(g, x, e, h).equal);
      }
  }
  // SL_2(F_3) on the punctured plane (|X| = 8); subsample H to keep this quick.
  const PrimeField f3 = make_field(3);
  const FiniteGroup sl = special_linear_group(f3, 2);
  const Space x = Space::punctured(f3, 2);
  for (std::uint64_t me = 0; me < 256; ++me)
    for (std::uint64_t mh = 0; mh < 256; mh += 7) {
      const PointSet e = subset_from_mask(x.elements(), me), h = subset_from_mask(x.elements(), mh);
      const auto report = max_intersection(sl, x, e, h);
      CHECK(report.bound_holds());
      CHECK(report.double_count_total == sl.size() * e.size() * h.size() / x.size());
      // The maximum is at least the average.
      CHECK(report.best_count * sl.size() >= report.double_count_total);
    }
}

TEST_CASE("fast translation kernel matches the naive scan and the oracle") {
  std::mt19937_64 rng(2024);
  for (std::uint64_t q : {2, 3, 5, 7}) {
    const PrimeField f = make_field(q);
    for (std::size_t d = 1; d <= 2; ++d) {
      const FiniteGroup g = translations(f, d);
      const Space x = Space::full(f, d);
      for (int trial = 0; trial < 25; ++trial) {
        const PointSet e = random_subset(x.elements(), rng), h = random_subset(x.elements(), rng);
        const auto fast = translation_counts_fast(e, h);
        CHECK(fast == intersection_counts(g, x, e, h));
        CHECK(fast == oracle::translation_counts(raw(e), raw(h), q, d));
        const auto a = max_translation_intersection_fast(e, h);
        const auto b = max_intersection(g, x, e, h);
        CHECK(a.best_g == b.best_g);
        CHECK(a.best_count == b.best_count);
        CHECK(a.bound == b.bound);
        CHECK(a.double_count_total == b.double_count_total);
        CHECK(a.histogram == b.histogram);
      }
    }
  }
}

TEST_CASE("fast kernel edge cases") {
  const PrimeField f = make_field(7);
  const PointSet single(f, 2, {vec(f, {3, 4})});
  const auto r = max_translation_intersection_fast(single, single);
  CHECK(r.best_g.is_identity());
  CHECK(r.best_count == 1);

  const Vector a0 = vec(f, {2, 5});
  const PointSet e(f, 2, {vec(f, {0, 0}), vec(f, {1, 3}), vec(f, {6, 6}), vec(f, {4, 1})});
  std::vector<Vector> shifted;
  for (const auto& p : e) shifted.push_back(p + a0);
  const auto t = max_translation_intersection_fast(e, PointSet(f, 2, shifted));
  CHECK(t.best_count == e.size());
  CHECK(t.best_g == GroupElement::translation(a0));

  CHECK(error_code([&] { translation_counts_fast(e, PointSet(make_field(5), 2)); }) ==
        Errc::space_mismatch);
}

TEST_CASE("parallel scans are schedule independent") {
  std::mt19937_64 rng(5);
  const PrimeField f = make_field(7);
  const FiniteGroup sl = special_linear_group(f, 2);
  const Space x = Space::punctured(f, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const PointSet e = random_subset(x.elements(), rng), h = random_subset(x.elements(), rng);
    const auto serial = max_intersection(sl, x, e, h, {1});
    for (unsigned jobs : {2u, 3u, 8u, 1000u}) {
      const auto par = max_intersection(sl, x, e, h, {jobs});
      CHECK(par.best_g == serial.best_g);
      CHECK(par.best_count == serial.best_count);
      CHECK(par.histogram == serial.histogram);
    }
  }
}
