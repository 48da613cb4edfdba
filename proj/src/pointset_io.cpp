#include "fqsim/pointset_io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace fqsim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// "q=5 d=2", tolerant of extra whitespace around tokens.
std::pair<std::uint64_t, std::uint64_t> parse_header(std::string_view line, std::size_t line_no) {
  std::int64_t q = -1, d = -1;
  std::istringstream tokens{std::string(line)};
  std::string tok;
  while (tokens >> tok) {
    const auto eq = tok.find('=');
    std::int64_t value = 0;
    if (eq == std::string::npos || !parse_int(std::string_view(tok).substr(eq + 1), value)) {
      throw ParseError(Errc::parse_error, line_no, "malformed header token '" + tok + "'");
    }
    const std::string key = tok.substr(0, eq);
    if (key == "q") {
      q = value;
    } else if (key == "d") {
      d = value;
    } else {
      throw ParseError(Errc::parse_error, line_no, "unknown header key '" + key + "'");
    }
  }
  if (q < 2 || d < 1) {
    throw ParseError(Errc::parse_error, line_no, "header must be 'q=<prime> d=<positive int>'");
  }
  return {static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(d)};
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return in;
}

}  // namespace

ParsedPointSet parse_pointset(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<PrimeField> field;
  std::size_t dim = 0;
  std::vector<Vector> pts;
  std::set<Vector> seen;
  std::vector<std::string> warnings;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_comment(raw);
    if (line.empty()) continue;
    if (!field) {
      const auto [q, d] = parse_header(line, line_no);
      try {
        field = PrimeField::make(q);
      } catch (const Error& e) {
        throw ParseError(e.code(), line_no, e.what());
      }
      dim = d;
      continue;
    }
    const auto parts = split(line, ',');
    if (parts.size() != dim) {
      throw ParseError(Errc::parse_error, line_no,
                       "expected " + std::to_string(dim) + " coordinates, got " +
                           std::to_string(parts.size()));
    }
    std::vector<std::uint32_t> coords;
    coords.reserve(dim);
    for (auto part : parts) {
      std::int64_t v = 0;
      if (!parse_int(part, v)) {
        throw ParseError(Errc::parse_error, line_no, "'" + std::string(trim(part)) + "' is not an integer");
      }
      if (v < 0 || v >= static_cast<std::int64_t>(field->order())) {
        throw ParseError(Errc::header_mismatch, line_no,
                         "coordinate " + std::to_string(v) + " outside [0, " +
                             std::to_string(field->order()) + ")");
      }
      coords.push_back(static_cast<std::uint32_t>(v));
    }
    Vector v(*field, std::move(coords));
    if (!seen.insert(v).second) {
      warnings.push_back("duplicate point at line " + std::to_string(line_no) + " ignored");
      continue;
    }
    pts.push_back(std::move(v));
  }
  if (!field) throw ParseError(Errc::parse_error, line_no, "missing 'q=<int> d=<int>' header");
  return {PointSet(*field, dim, std::move(pts)), std::move(warnings)};
}

ParsedPointSet parse_pointset_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_pointset(in);
}

std::string format_pointset(const PointSet& set) {
  std::ostringstream out;
  out << "q=" << set.field().order() << " d=" << set.dim() << "\n";
  for (const auto& p : set) {
    for (std::size_t i = 0; i < p.dim(); ++i) out << (i ? "," : "") << p.coords()[i];
    out << "\n";
  }
  return out.str();
}

EdgeSet parse_edges(std::istream& in, std::size_t k) {
  std::string raw;
  std::size_t line_no = 0;
  std::vector<EdgeSet::Edge> edges;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_comment(raw);
    if (line.empty()) continue;
    const auto parts = split(line, ',');
    std::int64_t i = 0, j = 0;
    if (parts.size() != 2 || !parse_int(parts[0], i) || !parse_int(parts[1], j) || i < 1 || j < 1) {
      throw ParseError(Errc::parse_error, line_no, "expected an edge 'i,j' with 1-based indices");
    }
    edges.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return EdgeSet(k, std::move(edges));
}

EdgeSet parse_edges_file(const std::filesystem::path& path, std::size_t k) {
  auto in = open_input(path);
  return parse_edges(in, k);
}

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PointSet random_pointset(PrimeField field, std::size_t dim, std::uint64_t n, std::uint64_t seed,
                         bool exclude_origin, std::uint64_t cap) {
  const std::uint64_t total = checked_space_size(field, dim, cap);
  const std::uint64_t offset = exclude_origin ? 1 : 0;
  const std::uint64_t candidates = total - offset;
  if (n > candidates) {
    throw Error(Errc::too_many, "cannot draw " + std::to_string(n) + " distinct points from " +
                                    std::to_string(candidates));
  }
  SplitMix64 rng(seed);
  std::unordered_map<std::uint64_t, std::uint64_t> slots;
  auto slot = [&](std::uint64_t i) {
    const auto it = slots.find(i);
    return it == slots.end() ? i : it->second;
  };
  std::vector<Vector> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + rng.next() % (candidates - i);
    const std::uint64_t picked = slot(j);
    slots[j] = slot(i);
    pts.push_back(Vector::decode(field, dim, picked + offset));
  }
  return PointSet(field, dim, std::move(pts));
}

std::string sha256_digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::io_error, "sha256 digest failed");
  }
  std::ostringstream hex;
  hex << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
  return hex.str();
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string file_digest(const std::filesystem::path& path) { return sha256_digest(read_file(path)); }

}  // namespace fqsim
