#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fqsim/pointset_io.hpp"
#include "fqsim/serialize.hpp"
#include "fqsim/sweep.hpp"

using namespace fqsim;

namespace {

Vector vec(PrimeField f, std::vector<std::uint32_t> c) { return Vector(f, std::move(c)); }

ParsedPointSet parse(const std::string& text) {
  std::istringstream in(text);
  return parse_pointset(in);
}

template <class Fn>
std::pair<Errc, std::size_t> parse_failure(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return {e.code(), e.line()};
  }
  FAIL("expected a ParseError");
  return {Errc::invalid_argument, 0};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string strip_timing(const std::string& payload) {
  std::string out;
  for (const auto& line : lines_of(payload)) {
    json j = json::parse(line);
    j.erase("timing_ms");
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("parse point sets") {
  const auto p = parse("q=5 d=2\n0,0\n1,2\n");
  const PrimeField f = make_field(5);
  CHECK(p.points.size() == 2);
  CHECK(p.points.field() == f);
  CHECK(p.points.contains(vec(f, {1, 2})));
  CHECK(p.warnings.empty());

  const auto c = parse("# header follows\n\n  q=3 d=1  # trailing\n2\n# skip\n 0 \n");
  CHECK(c.points.size() == 2);
  CHECK(c.points[0] == vec(make_field(3), {0}));

  const auto dup = parse("q=5 d=2\n1,2\n0,0\n1,2\n");
  CHECK(dup.points.size() == 2);
  CHECK(dup.warnings.size() == 1);

  CHECK(parse("q=7 d=3\n").points.empty());
  // Header keys may come in either order.
  CHECK(parse("d=2 q=5\n1,1\n").points.dim() == 2);
}

TEST_CASE("parse errors") {
  CHECK(parse_failure([] { parse("q=5 d=2\n0,0\n7,1\n"); }) == std::pair{Errc::header_mismatch, std::size_t{3}});
  CHECK(parse_failure([] { parse("q=5 d=2\n0,0,0\n"); }).first == Errc::parse_error);
  CHECK(parse_failure([] { parse("q=5 d=2\n0,x\n"); }).first == Errc::parse_error);
  CHECK(parse_failure([] { parse("q=5 d=2\n-1,0\n"); }).first != Errc::invalid_argument);
  CHECK(parse_failure([] { parse("q=5 e=2\n"); }).first == Errc::parse_error);
  CHECK(parse_failure([] { parse("q=6 d=2\n"); }).first == Errc::not_prime);
  CHECK(parse_failure([] { parse("q=5 d=0\n"); }).first == Errc::parse_error);
  CHECK(parse_failure([] { parse("# only comments\n"); }).first == Errc::parse_error);
}

TEST_CASE("format and parse round trip") {
  const PrimeField f = make_field(7);
  const PointSet s = random_pointset(f, 3, 40, 9);
  const auto back = parse(format_pointset(s));
  CHECK(back.points == s);
  CHECK(format_pointset(back.points) == format_pointset(s));
}

TEST_CASE("edge list files") {
  std::istringstream in("# triangle minus one side\n1,2\n2,3\n");
  CHECK(parse_edges(in, 2) == EdgeSet(2, {{1, 2}, {2, 3}}));
  std::istringstream bad("1,5\n");
  CHECK_THROWS_AS(parse_edges(bad, 2), Error);
  std::istringstream junk("1;2\n");
  CHECK_THROWS_AS(parse_edges(junk, 2), Error);
}

TEST_CASE("SplitMix64 reference values") {
  // Published outputs for seed 1234567.
  SplitMix64 g(1234567);
  CHECK(g.next() == 6457827717110365317ULL);
  CHECK(g.next() == 3203168211198807973ULL);
  CHECK(g.next() == 9817491932198370423ULL);
}

TEST_CASE("random point sets") {
  const PrimeField f = make_field(5);
  CHECK(random_pointset(f, 2, 25, 1) == PointSet::full_space(f, 2));
  CHECK(random_pointset(f, 2, 25, 777) == PointSet::full_space(f, 2));
  CHECK(random_pointset(f, 2, 8, 1) == random_pointset(f, 2, 8, 1));
  CHECK(random_pointset(f, 2, 8, 1) != random_pointset(f, 2, 8, 2));
  CHECK(random_pointset(f, 2, 8, 1).size() == 8);
  CHECK(random_pointset(f, 2, 0, 1).empty());
  const PointSet punct = random_pointset(f, 2, 24, 3, true);
  CHECK(punct.size() == 24);
  CHECK_FALSE(punct.contains_origin());
  CHECK_THROWS_AS(random_pointset(f, 2, 26, 1), Error);
  CHECK_THROWS_AS(random_pointset(f, 2, 25, 1, true), Error);
  try {
    random_pointset(f, 2, 26, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_many);
  }
  // Pinned against an independent reimplementation of the documented shuffle.
  CHECK(random_pointset(f, 2, 3, 42).points() ==
        std::vector<Vector>{vec(f, {1, 4}), vec(f, {2, 3}), vec(f, {4, 0})});
  const PrimeField f7 = make_field(7);
  CHECK(random_pointset(f7, 2, 4, 2024, true).points() ==
        std::vector<Vector>{vec(f7, {1, 3}), vec(f7, {4, 1}), vec(f7, {5, 3}), vec(f7, {5, 5})});
}

TEST_CASE("random point sets are roughly uniform") {
  const PrimeField f = make_field(3);
  std::vector<int> hits(9, 0);
  for (std::uint64_t seed = 0; seed < 900; ++seed)
    for (const auto& p : random_pointset(f, 2, 3, seed)) ++hits[p.encode()];
  // Expected 300 each.
  for (int h : hits) {
    CHECK(h > 230);
    CHECK(h < 370);
  }
}

TEST_CASE("digests") {
  CHECK(sha256_digest("") == "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_digest("abc") == "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto path = std::filesystem::temp_directory_path() / "fqsim_digest_test.txt";
  {
    std::ofstream(path) << "abc";
  }
  CHECK(file_digest(path) == sha256_digest("abc"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_file(path), Error);
}

TEST_CASE("JSON forms") {
  const PrimeField f = make_field(5);
  CHECK(to_json(vec(f, {1, 2})) == json::array({1, 2}));
  const json t = to_json(GroupElement::translation(vec(f, {3, 4})));
  CHECK(t["kind"] == "translation");
  CHECK(group_element_from_json(f, t) == GroupElement::translation(vec(f, {3, 4})));
  const auto m = GroupElement::special_linear(Matrix(f, 2, {1, 1, 0, 1}));
  CHECK(group_element_from_json(f, to_json(m)) == m);
  CHECK_THROWS_AS(vector_from_json(f, json::parse("[1, \"a\"]")), Error);
  CHECK_THROWS_AS(similarity_witness_from_json(json::parse("{\"q\": 5}")), Error);

  const Space x = Space::full(f, 1);
  const PointSet e(f, 1, {vec(f, {0}), vec(f, {1})});
  const json rep = to_json(max_intersection(translations(f, 1), x, e, e));
  for (const char* key : {"best_g", "best_count", "bound_num", "bound_den", "double_count_total", "transitive"})
    CHECK(rep.contains(key));
  CHECK(rep["bound_num"] == 4);
  CHECK(rep["bound_den"] == 5);

  const json err = error_to_json(InsufficientIntersection(2, 3));
  CHECK(err["code"] == "InsufficientIntersection");
  CHECK(err["best_count"] == 2);
  CHECK(err["needed"] == 3);
  CHECK(error_to_json(ParseError(Errc::header_mismatch, 4, "x"))["line"] == 4);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(Errc::insufficient_intersection) == 1);
  CHECK(exit_code_for(Errc::verification_failed) == 2);
  CHECK(exit_code_for(Errc::parse_error) == 3);
  CHECK(exit_code_for(Errc::not_a_square) == 3);
  CHECK(exit_code_for(Errc::enumeration_cap_exceeded) == 4);
  CHECK(exit_code_for(Errc::scan_cap_exceeded) == 4);
}

TEST_CASE("sweep line count and validity") {
  SweepConfig config;
  config.qs = {3, 5};
  config.ks = {1, 2};
  config.seeds = 10;
  std::ostringstream out;
  const auto summary = run_sweep(config, out);
  // Nonzero squares: one in F_3, two in F_5.
  const auto lines = lines_of(out.str());
  CHECK(lines.size() == 10 * 2 * (1 + 2) + 1);
  CHECK(summary.runs == 60);
  CHECK(summary.witnesses == 60);
  CHECK(summary.passed());
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    const json j = json::parse(lines[i]);
    CHECK(j["outcome"]["status"] == "witness");
    CHECK(j["threshold_met"] == true);
    CHECK(j["input_digests"]["set"].get<std::string>().starts_with("sha256:"));
    const auto w = similarity_witness_from_json(j["outcome"]["witness"]);
    CHECK(verify_similarity(w).ok);
  }
  CHECK(json::parse(lines.back())["summary"]["runs"] == 60);
}

TEST_CASE("sweep below threshold and with errors") {
  SweepConfig config;
  config.qs = {7};
  config.ks = {3};
  config.rs = {1, 3};
  config.size = 3;
  config.seeds = 2;
  config.timing = false;
  std::ostringstream out;
  const auto summary = run_sweep(config, out);
  CHECK(summary.runs == 4);
  // r = 3 is not a square mod 7.
  CHECK(summary.errors == 2);
  CHECK(summary.below_threshold_misses == 2);
  CHECK(summary.violations == 0);
  CHECK_FALSE(summary.passed());
  const auto lines = lines_of(out.str());
  CHECK(json::parse(lines[2])["outcome"]["error"]["code"] == "NotASquare");
  CHECK(json::parse(lines[0])["outcome"]["error"]["code"] == "InsufficientIntersection");
}

TEST_CASE("det sweep") {
  SweepConfig config;
  config.mode = SweepMode::det_similar;
  config.qs = {3, 5};
  config.ks = {2, 3};
  config.seeds = 3;
  config.timing = false;
  std::ostringstream out;
  const auto summary = run_sweep(config, out);
  CHECK(summary.runs == 3 * 2 * (1 + 2));
  CHECK(summary.witnesses == summary.runs);
  for (const auto& line : lines_of(out.str())) {
    const json j = json::parse(line);
    if (j.contains("summary")) continue;
    CHECK(verify_det_similarity(det_witness_from_json(j["outcome"]["witness"])).ok);
  }
}

TEST_CASE("sweep output does not depend on the worker count") {
  SweepConfig config;
  config.qs = {5, 7};
  config.ks = {1, 3};
  config.seeds = 6;
  std::ostringstream one, many;
  config.jobs = 1;
  run_sweep(config, one);
  config.jobs = 8;
  run_sweep(config, many);
  CHECK(strip_timing(one.str()) == strip_timing(many.str()));
  config.timing = false;
  std::ostringstream a, b;
  config.jobs = 3;
  run_sweep(config, a);
  run_sweep(config, b);
  CHECK(a.str() == b.str());
}
