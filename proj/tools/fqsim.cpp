// fqsim command-line driver. Every subcommand prints one JSON report on
// stdout (sweep prints JSON lines) and exits with the code from
// exit_code_for on failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fqsim/configurations.hpp"
#include "fqsim/pointset_io.hpp"
#include "fqsim/serialize.hpp"
#include "fqsim/sweep.hpp"

using namespace fqsim;

namespace {

using Clock = std::chrono::steady_clock;

// Upper limit on |X| for --exhaustive-subsets: 4^|X| subset pairs.
constexpr std::size_t kExhaustiveLimit = 10;

struct Report {
  std::string command;
  json config = json::object();
  json outcome = json::object();
  json input_digests = json::object();
  Clock::time_point start = Clock::now();

  json finish() const {
    const std::chrono::duration<double, std::milli> ms = Clock::now() - start;
    return {{"command", command},     {"config", config},           {"outcome", outcome},
            {"input_digests", input_digests}, {"version", kLibraryVersion}, {"timing_ms", ms.count()}};
  }
};

void emit(const json& j) { std::cout << j.dump(2) << std::endl; }

struct SetSource {
  std::string file;
  std::optional<std::uint64_t> random;
  std::uint64_t seed = 0;
};

PointSet load_set(const std::string& path, PrimeField field, std::size_t dim, Report& report,
                  const std::string& digest_key) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  ParsedPointSet parsed = parse_pointset(in);
  if (parsed.points.field() != field || parsed.points.dim() != dim) {
    throw Error(Errc::header_mismatch,
                path + " declares q=" + std::to_string(parsed.points.field().order()) + " d=" +
                    std::to_string(parsed.points.dim()) + " but the command uses q=" +
                    std::to_string(field.order()) + " d=" + std::to_string(dim));
  }
  for (const auto& w : parsed.warnings) {
    report.outcome["warnings"].push_back(path + ": " + w);
  }
  report.input_digests[digest_key] = sha256_digest(text);
  return std::move(parsed.points);
}

PointSet resolve_set(const SetSource& src, PrimeField field, std::size_t dim, bool exclude_origin,
                     std::uint64_t cap, Report& report) {
  if (!src.file.empty()) return load_set(src.file, field, dim, report, "set");
  if (!src.random) throw Error(Errc::invalid_argument, "one of --set or --random is required");
  PointSet e = random_pointset(field, dim, *src.random, src.seed, exclude_origin, cap);
  report.input_digests["set"] = sha256_digest(format_pointset(e));
  return e;
}

EdgeSet resolve_edges(const std::string& arg, std::size_t k, Report& report) {
  constexpr std::string_view prefix = "pairs:";
  if (arg.starts_with(prefix)) {
    const std::string path = arg.substr(prefix.size());
    const std::string text = read_file(path);
    std::istringstream in(text);
    report.input_digests["edges"] = sha256_digest(text);
    return parse_edges(in, k);
  }
  return EdgeSet::preset(arg, k);
}

json threshold_json(const SimilarityThreshold& t, std::uint64_t n) {
  return {{"k_plus_1", t.k_plus_1}, {"q_pow_d", t.q_pow_d}, {"min_size", t.min_size}, {"met", t.met_by(n)}};
}

// Witness objects from a bare witness, a report, a JSON array, or JSON lines.
std::vector<json> collect_witnesses(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<json> docs;
  try {
    docs.push_back(json::parse(text));
  } catch (const json::exception&) {
    std::istringstream in(text);
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        docs.push_back(json::parse(line));
      } catch (const json::exception& e) {
        throw ParseError(Errc::parse_error, line_no, e.what());
      }
    }
  }
  std::vector<json> out;
  auto visit = [&](const json& j, auto&& self) -> void {
    if (j.is_array()) {
      for (const auto& x : j) self(x, self);
    } else if (j.is_object() && j.contains("type")) {
      out.push_back(j);
    } else if (j.is_object() && j.contains("outcome") && j["outcome"].contains("witness")) {
      out.push_back(j["outcome"]["witness"]);
    }
  };
  for (const auto& d : docs) visit(d, visit);
  if (out.empty()) throw Error(Errc::parse_error, path + " contains no witness");
  return out;
}

// Returns the exit code.
int verify_only(const std::string& path, const std::string& expected_type, const PointSet* e,
                Report& report) {
  report.input_digests["witnesses"] = file_digest(path);
  bool all_ok = true;
  json results = json::array();
  for (const auto& w : collect_witnesses(path)) {
    const std::string type = w.at("type").get<std::string>();
    if (type != expected_type) {
      throw Error(Errc::invalid_argument, "expected " + expected_type + " witnesses, found " + type);
    }
    const Verification v = type == "similarity" ? verify_similarity(similarity_witness_from_json(w), e)
                                                : verify_det_similarity(det_witness_from_json(w), e);
    all_ok = all_ok && v.ok;
    results.push_back(to_json(v));
  }
  report.outcome["status"] = all_ok ? "verified" : "rejected";
  report.outcome["results"] = results;
  return all_ok ? 0 : 2;
}

struct Common {
  std::uint64_t q = 0;
  std::size_t d = 0;
  std::uint64_t cap = kEnumerationCap;
  unsigned jobs = 1;
};

void add_qd(CLI::App* cmd, Common& c, bool required = true) {
  auto* q = cmd->add_option("--q", c.q, "Field order (odd prime for most commands)");
  auto* d = cmd->add_option("--d", c.d, "Dimension")->check(CLI::PositiveNumber);
  if (required) {
    q->required();
    d->required();
  }
  cmd->add_option("--cap", c.cap, "Enumeration cap")->check(CLI::PositiveNumber);
}

void add_jobs(CLI::App* cmd, Common& c) {
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

Space default_space(GroupKind kind, PrimeField f, std::size_t d, const std::optional<std::int64_t>& radius,
                    std::uint64_t cap) {
  if (radius) return Space::sphere(f, d, f.element(*radius), cap);
  switch (kind) {
    case GroupKind::translations: return Space::full(f, d, cap);
    case GroupKind::special_linear: return Space::punctured(f, d, cap);
    case GroupKind::orthogonal: break;
  }
  return Space::full(f, d, cap);
}

PointSet subset_from_mask(const PointSet& universe, std::uint64_t mask) {
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (mask >> i & 1) pts.push_back(universe[i]);
  return PointSet(universe.field(), universe.dim(), std::move(pts));
}

json exhaustive_subsets(const FiniteGroup& g, const Space& x, unsigned jobs, bool& ok) {
  const PointSet& all = x.elements();
  if (all.size() > kExhaustiveLimit) {
    throw Error(Errc::enumeration_cap_exceeded, "--exhaustive-subsets needs |X| <= " +
                                                    std::to_string(kExhaustiveLimit) + ", got " +
                                                    std::to_string(all.size()));
  }
  const bool transitive = is_transitive(g, x);
  std::uint64_t pairs = 0, bound_violations = 0, double_count_mismatches = 0;
  const std::uint64_t n = std::uint64_t{1} << all.size();
  for (std::uint64_t me = 0; me < n; ++me) {
    const PointSet e = subset_from_mask(all, me);
    for (std::uint64_t mh = 0; mh < n; ++mh) {
      const PointSet h = subset_from_mask(all, mh);
      const auto counts = intersection_counts(g, x, e, h, {jobs});
      std::uint64_t best = 0, total = 0;
      for (auto c : counts) {
        best = std::max(best, c);
        total += c;
      }
      ++pairs;
      const Rational bound = Rational::make(e.size() * h.size(), x.size());
      if (transitive && !bound.at_most(best)) ++bound_violations;
      if (transitive && Rational{total, 1} != Rational::make(g.size() * e.size() * h.size(), x.size())) {
        ++double_count_mismatches;
      }
    }
  }
  ok = bound_violations == 0 && double_count_mismatches == 0;
  return {{"pairs", pairs},
          {"transitive", transitive},
          {"bound_violations", bound_violations},
          {"double_count_mismatches", double_count_mismatches}};
}

int run_enumerate(const Common& c, const std::string& kind_name, const std::optional<std::int64_t>& radius,
                  bool dump, Report& report) {
  const PrimeField f = make_field(c.q);
  const GroupKind kind = parse_group_kind(kind_name);
  report.config = {{"kind", kind_name}, {"q", c.q}, {"d", c.d}, {"cap", c.cap}};
  if (radius) report.config["radius"] = *radius;
  const FiniteGroup g = make_group(kind, f, c.d, c.cap);

  std::vector<Space> spaces{Space::full(f, c.d, c.cap), Space::punctured(f, c.d, c.cap)};
  if (radius) spaces.push_back(Space::sphere(f, c.d, f.element(*radius), c.cap));
  json transitivity = json::object();
  for (const auto& s : spaces) {
    transitivity[s.describe()] = g.acts_on(s) ? json(is_transitive(g, s)) : json(nullptr);
  }
  report.outcome = {{"status", "ok"}, {"order", g.size()}, {"transitive", transitivity}};
  if (dump) {
    json elems = json::array();
    for (const auto& e : g.elements()) elems.push_back(to_json(e));
    report.outcome["elements"] = elems;
  }
  return 0;
}

struct BoundArgs {
  std::string group = "translations";
  std::string set_e, set_h;
  std::optional<std::int64_t> radius;
  bool exhaustive = false;
  bool histogram = false;
};

int run_verify_bound(const Common& c, const BoundArgs& a, Report& report) {
  const PrimeField f = make_field(c.q);
  const GroupKind kind = parse_group_kind(a.group);
  report.config = {{"group", a.group}, {"q", c.q}, {"d", c.d}, {"exhaustive_subsets", a.exhaustive},
                   {"jobs", c.jobs}, {"cap", c.cap}};
  if (a.radius) report.config["radius"] = *a.radius;
  const FiniteGroup g = make_group(kind, f, c.d, c.cap);
  const Space x = default_space(kind, f, c.d, a.radius, c.cap);
  g.require_acts_on(x);
  report.config["space"] = x.describe();

  bool ok = true;
  report.outcome["status"] = "ok";
  if (!a.set_e.empty() || !a.set_h.empty()) {
    if (a.set_e.empty() || a.set_h.empty()) {
      throw Error(Errc::invalid_argument, "--set-e and --set-h must be given together");
    }
    const PointSet e = load_set(a.set_e, f, c.d, report, "set_e");
    const PointSet h = load_set(a.set_h, f, c.d, report, "set_h");
    const IntersectionReport rep = kind == GroupKind::translations
                                       ? (x.kind() == SpaceKind::full ? max_translation_intersection_fast(e, h)
                                                                      : max_intersection(g, x, e, h, {c.jobs}))
                                       : max_intersection(g, x, e, h, {c.jobs});
    const DoubleCountCheck dc = double_count_check(g, x, e, h, {c.jobs});
    report.outcome["intersection"] = to_json(rep, a.histogram);
    report.outcome["double_count"] = to_json(dc);
    if (rep.transitive && !rep.bound_holds()) ok = false;
    if (dc.applicable && !dc.equal) ok = false;
  } else if (!a.exhaustive) {
    throw Error(Errc::invalid_argument, "give --set-e and --set-h, or --exhaustive-subsets");
  }
  if (a.exhaustive) {
    bool ex_ok = true;
    report.outcome["exhaustive_subsets"] = exhaustive_subsets(g, x, c.jobs, ex_ok);
    ok = ok && ex_ok;
  }
  if (!ok) report.outcome["status"] = "violation";
  return ok ? 0 : 2;
}

struct FindArgs {
  std::optional<std::int64_t> r;
  std::optional<std::size_t> k;
  std::string edges = "simplex";
  SetSource source;
  std::string verify_file;
};

int run_find_similar(const Common& c, const FindArgs& a, Report& report, bool det) {
  const std::string type = det ? "det-similarity" : "similarity";
  if (!a.verify_file.empty()) {
    report.config = {{"verify_only", a.verify_file}};
    std::optional<PointSet> e;
    if (!a.source.file.empty()) {
      if (c.q == 0 || c.d == 0) throw Error(Errc::invalid_argument, "--set needs --q and --d");
      e = load_set(a.source.file, make_field(c.q), c.d, report, "set");
    }
    return verify_only(a.verify_file, type, e ? &*e : nullptr, report);
  }
  if (c.q == 0 || c.d == 0 || !a.r || !a.k) {
    throw Error(Errc::invalid_argument, "--q, --d, --r and --k are required");
  }
  const PrimeField f = make_field(c.q);
  report.config = {{"q", c.q}, {"d", c.d}, {"r", *a.r}, {"k", *a.k}, {"cap", c.cap}};
  if (!det) report.config["edges"] = a.edges;
  if (a.source.file.empty()) {
    report.config["random"] = a.source.random ? json(*a.source.random) : json(nullptr);
    report.config["seed"] = a.source.seed;
  } else {
    report.config["set"] = a.source.file;
  }
  if (det) report.config["jobs"] = c.jobs;

  const PointSet e = resolve_set(a.source, f, c.d, det, c.cap, report);
  const SimilarityThreshold t = similarity_threshold(f, c.d, *a.k);
  report.outcome["threshold"] = threshold_json(t, e.size());
  if (!t.met_by(e.size())) {
    report.outcome["warnings"].push_back("|E| = " + std::to_string(e.size()) +
                                         " is below the threshold " + std::to_string(t.min_size));
  }
  const FieldElement r = f.element(*a.r);
  if (det) {
    const auto w = find_det_similar(e, r, *a.k, {c.cap, c.jobs});
    report.outcome["witness"] = to_json(w);
  } else {
    const auto w = find_similar_config(e, r, *a.k, resolve_edges(a.edges, *a.k, report));
    report.outcome["witness"] = to_json(w);
  }
  report.outcome["status"] = "witness";
  return 0;
}

struct SphereArgs {
  std::int64_t radius = 1;
  std::size_t k = 1;
  std::string set_e, set_h;
};

int run_sphere(const Common& c, const SphereArgs& a, Report& report) {
  const PrimeField f = make_field(c.q);
  report.config = {{"q", c.q}, {"d", c.d}, {"radius", a.radius}, {"k", a.k}, {"jobs", c.jobs}, {"cap", c.cap}};
  const FieldElement radius = f.element(a.radius);
  const PointSet s = sphere(f, c.d, radius, c.cap);
  PointSet e = s, h = s;
  if (!a.set_e.empty()) e = load_set(a.set_e, f, c.d, report, "set_e");
  if (!a.set_h.empty()) h = load_set(a.set_h, f, c.d, report, "set_h");
  const SphereReport rep = sphere_experiment(f, c.d, radius, e, h, a.k, {c.cap, c.jobs});
  report.outcome = to_json(rep);
  report.outcome["status"] = rep.conclusion_held ? "ok" : "violation";
  return rep.conclusion_held ? 0 : 2;
}

struct SweepArgs {
  std::string mode = "similar";
  std::vector<std::uint64_t> qs;
  std::vector<std::size_t> ks;
  std::vector<std::int64_t> rs;
  std::uint64_t seeds = 1;
  std::uint64_t seed_base = 0;
  std::optional<std::uint64_t> size;
  std::string edges = "simplex";
  std::string out;
  bool no_timing = false;
};

int run_sweep_cmd(const Common& c, const SweepArgs& a) {
  SweepConfig config;
  if (a.mode == "similar") {
    config.mode = SweepMode::similar;
  } else if (a.mode == "det-similar") {
    config.mode = SweepMode::det_similar;
  } else {
    throw Error(Errc::invalid_argument, "--mode must be similar or det-similar");
  }
  config.qs = a.qs;
  config.d = c.d;
  config.ks = a.ks;
  config.rs = a.rs;
  config.seeds = a.seeds;
  config.seed_base = a.seed_base;
  config.size = a.size;
  config.edges = a.edges;
  config.jobs = c.jobs;
  config.enumeration_cap = c.cap;
  config.timing = !a.no_timing;
  for (auto q : config.qs) make_field(q);

  SweepSummary summary;
  if (a.out.empty()) {
    summary = run_sweep(config, std::cout);
  } else {
    std::ofstream out(a.out, std::ios::app);
    if (!out) throw Error(Errc::io_error, "cannot open " + a.out);
    summary = run_sweep(config, out);
  }
  if (summary.violations > 0) return 2;
  if (summary.errors > 0) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field point configurations: intersection bounds and similar configurations"};
  app.set_version_flag("--version", std::string(kLibraryVersion));
  app.require_subcommand(1);

  Common common;

  auto* enumerate = app.add_subcommand("enumerate-group", "Enumerate a group and report transitivity");
  std::string kind;
  std::optional<std::int64_t> enum_radius;
  bool dump = false;
  enumerate->add_option("--kind", kind, "translations | orthogonal | special-linear")->required();
  add_qd(enumerate, common);
  enumerate->add_option("--radius", enum_radius, "Also report transitivity on this sphere");
  enumerate->add_flag("--dump", dump, "Print every element");

  auto* bound = app.add_subcommand("verify-bound", "Check max |H ∩ gE| >= |E||H|/|X| and the double count");
  BoundArgs bargs;
  bound->add_option("--group", bargs.group, "translations | orthogonal | special-linear")->required();
  add_qd(bound, common);
  add_jobs(bound, common);
  bound->add_option("--set-e", bargs.set_e, "Point-set file for E");
  bound->add_option("--set-h", bargs.set_h, "Point-set file for H");
  bound->add_option("--radius", bargs.radius, "Act on the sphere of this radius");
  bound->add_flag("--exhaustive-subsets", bargs.exhaustive, "Check every subset pair of X");
  bound->add_flag("--histogram", bargs.histogram, "Include the count histogram");

  FindArgs fargs, dargs;
  auto add_find = [&](CLI::App* cmd, FindArgs& a) {
    add_qd(cmd, common, false);
    cmd->add_option("--r", a.r, "Dilation");
    cmd->add_option("--k", a.k, "Configuration has k+1 points");
    auto* set = cmd->add_option("--set", a.source.file, "Point-set file");
    auto* random = cmd->add_option("--random", a.source.random, "Draw N random points");
    set->excludes(random);
    cmd->add_option("--seed", a.source.seed, "Seed for --random");
    cmd->add_option("--verify-only", a.verify_file, "Re-verify witnesses from a JSON or JSON-lines file");
  };
  auto* similar = app.add_subcommand("find-similar", "Find r-similar (k+1)-point configurations");
  add_find(similar, fargs);
  similar->add_option("--edges", fargs.edges, "simplex | cycle | path | star | pairs:FILE");

  auto* det = app.add_subcommand("find-det-similar", "Find determinant-similar configurations");
  add_find(det, dargs);
  add_jobs(det, common);

  auto* sph = app.add_subcommand("sphere-experiment", "O_d acting on a sphere");
  SphereArgs sargs;
  add_qd(sph, common);
  add_jobs(sph, common);
  sph->add_option("--radius", sargs.radius, "Sphere radius")->required();
  sph->add_option("--k", sargs.k, "Target k+1 points")->required();
  sph->add_option("--set-e", sargs.set_e, "Point-set file for E (default: whole sphere)");
  sph->add_option("--set-h", sargs.set_h, "Point-set file for H (default: whole sphere)");

  auto* sweep = app.add_subcommand("sweep", "Batch of seeded runs, one JSON line each");
  SweepArgs wargs;
  common.d = 2;
  sweep->add_option("--mode", wargs.mode, "similar | det-similar");
  sweep->add_option("--q", wargs.qs, "Field orders")->required()->delimiter(',');
  sweep->add_option("--d", common.d, "Dimension")->check(CLI::PositiveNumber);
  sweep->add_option("--k", wargs.ks, "Values of k")->required()->delimiter(',');
  sweep->add_option("--r", wargs.rs, "Dilations (default: all nonzero squares or d-th powers)")->delimiter(',');
  sweep->add_option("--seeds", wargs.seeds, "Seeds per cell");
  sweep->add_option("--seed-base", wargs.seed_base, "First seed");
  sweep->add_option("--size", wargs.size, "Set size (default: smallest size meeting the threshold)");
  sweep->add_option("--edges", wargs.edges, "Edge preset");
  sweep->add_option("--out", wargs.out, "Append JSON lines to this file");
  sweep->add_option("--cap", common.cap, "Enumeration cap")->check(CLI::PositiveNumber);
  sweep->add_flag("--no-timing", wargs.no_timing, "Omit timing_ms");
  add_jobs(sweep, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit({{"error", {{"code", "UsageError"}, {"message", e.what()}}}});
    return 3;
  }

  Report report;
  report.command = app.get_subcommands().front()->get_name();
  try {
    int code = 0;
    if (*enumerate) {
      code = run_enumerate(common, kind, enum_radius, dump, report);
    } else if (*bound) {
      code = run_verify_bound(common, bargs, report);
    } else if (*similar) {
      code = run_find_similar(common, fargs, report, false);
    } else if (*det) {
      code = run_find_similar(common, dargs, report, true);
    } else if (*sph) {
      code = run_sphere(common, sargs, report);
    } else if (*sweep) {
      return run_sweep_cmd(common, wargs);
    }
    emit(report.finish());
    return code;
  } catch (const Error& e) {
    report.outcome = {{"status", "error"}, {"error", error_to_json(e)}};
    emit(report.finish());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report.outcome = {{"status", "error"}, {"error", error_to_json(e)}};
    emit(report.finish());
    return 3;
  }
}
