#pragma once

// Point-set text format, seeded point-set generation and input digests.
//
//   # comment
//   q=5 d=2
//   0,0
//   1,2
//
// The first non-comment line is the header; every following non-comment
// line holds d comma-separated integers in [0, q).

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fqsim/configurations.hpp"

namespace fqsim {

struct ParsedPointSet {
  PointSet points;
  std::vector<std::string> warnings;
};

ParsedPointSet parse_pointset(std::istream& in);
ParsedPointSet parse_pointset_file(const std::filesystem::path& path);
/// Canonical text form; parse_pointset(format_pointset(s)) == s.
std::string format_pointset(const PointSet& set);

/// Edge list, one "i,j" pair per line (1-based), '#' comments.
EdgeSet parse_edges(std::istream& in, std::size_t k);
EdgeSet parse_edges_file(const std::filesystem::path& path, std::size_t k);

/// SplitMix64: state += 0x9e3779b97f4a7c15, then the standard
/// xor-shift-multiply finalizer on the new state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() noexcept;

 private:
  std::uint64_t state_;
};

/// n distinct points, uniformly without replacement. Indices 0..N-1 of the
/// base-q encoding (1..N-1 when the origin is excluded) are permuted by a
/// partial Fisher-Yates shuffle: step i swaps slot i with slot
/// i + next() % (M - i), M being the number of candidates. Platform
/// independent for a given (q, d, n, seed, exclude_origin).
PointSet random_pointset(PrimeField field, std::size_t dim, std::uint64_t n, std::uint64_t seed,
                         bool exclude_origin = false, std::uint64_t cap = kEnumerationCap);

/// "sha256:<hex>".
std::string sha256_digest(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace fqsim
