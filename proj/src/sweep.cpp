#include "fqsim/sweep.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <ostream>
#include <thread>

#include "fqsim/pointset_io.hpp"

namespace fqsim {

json to_json(const SweepSummary& s) {
  return {{"summary",
           {{"runs", s.runs},
            {"witnesses", s.witnesses},
            {"below_threshold_misses", s.below_threshold_misses},
            {"violations", s.violations},
            {"errors", s.errors},
            {"passed", s.passed()}}}};
}

std::vector<FieldElement> nonzero_mth_powers(PrimeField field, std::uint64_t m) {
  std::vector<FieldElement> out;
  for (std::uint32_t v = 1; v < field.order(); ++v) {
    FieldElement a(field, v);
    if (is_mth_power(a, m)) out.push_back(a);
  }
  return out;
}

namespace {

struct Run {
  std::uint64_t q;
  std::size_t k;
  std::int64_t r;
  std::uint64_t seed;
};

enum class Outcome { witness, miss, violation, error };

struct RunResult {
  std::string line;
  Outcome outcome;
};

RunResult execute(const SweepConfig& config, const Run& run) {
  const auto start = std::chrono::steady_clock::now();
  const bool det = config.mode == SweepMode::det_similar;
  json line = {{"run",
                {{"mode", det ? "det-similar" : "similar"},
                 {"q", run.q},
                 {"d", config.d},
                 {"k", run.k},
                 {"r", run.r},
                 {"seed", run.seed}}}};
  Outcome outcome = Outcome::error;
  bool threshold_met = false;
  try {
    const PrimeField f = PrimeField::make(run.q);
    const SimilarityThreshold threshold = similarity_threshold(f, config.d, run.k);
    const std::uint64_t n = config.size.value_or(threshold.min_size);
    threshold_met = threshold.met_by(n);
    line["run"]["size"] = n;
    if (!det) line["run"]["edges"] = config.edges;

    const PointSet e = random_pointset(f, config.d, n, run.seed, det, config.enumeration_cap);
    line["input_digests"] = {{"set", sha256_digest(format_pointset(e))}};
    const FieldElement r = f.element(run.r);
    if (det) {
      const auto w = find_det_similar(e, r, run.k, {config.enumeration_cap, 1});
      line["outcome"] = {{"status", "witness"}, {"witness", to_json(w)}};
    } else {
      const auto w = find_similar_config(e, r, run.k, EdgeSet::preset(config.edges, run.k));
      line["outcome"] = {{"status", "witness"}, {"witness", to_json(w)}};
    }
    outcome = Outcome::witness;
  } catch (const InsufficientIntersection& ex) {
    line["outcome"] = {{"status", "error"}, {"error", error_to_json(ex)}};
    outcome = threshold_met ? Outcome::violation : Outcome::miss;
  } catch (const Error& ex) {
    line["outcome"] = {{"status", "error"}, {"error", error_to_json(ex)}};
    outcome = ex.code() == Errc::verification_failed ? Outcome::violation : Outcome::error;
  } catch (const std::exception& ex) {
    line["outcome"] = {{"status", "error"}, {"error", error_to_json(ex)}};
  }
  line["threshold_met"] = threshold_met;
  line["version"] = kLibraryVersion;
  if (config.timing) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    line["timing_ms"] = ms.count();
  }
  return {line.dump(), outcome};
}

std::vector<Run> expand(const SweepConfig& config) {
  std::vector<Run> runs;
  for (auto q : config.qs) {
    const PrimeField f = PrimeField::make(q);
    std::vector<std::int64_t> rs = config.rs;
    if (rs.empty()) {
      const std::uint64_t m = config.mode == SweepMode::similar ? 2 : config.d;
      for (const auto& r : nonzero_mth_powers(f, m)) rs.push_back(r.value());
    }
    for (auto k : config.ks)
      for (auto r : rs)
        for (std::uint64_t s = 0; s < config.seeds; ++s) runs.push_back({q, k, r, config.seed_base + s});
  }
  return runs;
}

}  // namespace

SweepSummary run_sweep(const SweepConfig& config, std::ostream& out) {
  const std::vector<Run> runs = expand(config);
  std::vector<std::optional<RunResult>> results(runs.size());
  std::atomic<std::size_t> next{0};
  std::mutex emit_mutex;
  std::size_t emitted = 0;
  SweepSummary summary;

  // Workers claim runs dynamically; whoever completes the lowest pending
  // index flushes the ready prefix so output order is the run order.
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= runs.size()) return;
      RunResult result = execute(config, runs[i]);
      std::lock_guard lock(emit_mutex);
      results[i] = std::move(result);
      while (emitted < runs.size() && results[emitted]) {
        const RunResult& r = *results[emitted];
        out << r.line << '\n';
        out.flush();
        ++summary.runs;
        switch (r.outcome) {
          case Outcome::witness: ++summary.witnesses; break;
          case Outcome::miss: ++summary.below_threshold_misses; break;
          case Outcome::violation: ++summary.violations; break;
          case Outcome::error: ++summary.errors; break;
        }
        results[emitted].reset();
        ++emitted;
      }
    }
  };

  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  out << to_json(summary).dump() << '\n';
  out.flush();
  return summary;
}

}  // namespace fqsim
