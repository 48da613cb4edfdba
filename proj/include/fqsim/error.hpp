#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fqsim {

enum class Errc {
  invalid_argument,
  not_prime,
  too_large,
  division_by_zero,
  field_mismatch,
  even_field_unsupported,
  no_root,
  scan_cap_exceeded,
  dimension_mismatch,
  enumeration_cap_exceeded,
  not_in_space,
  space_mismatch,
  not_a_square,
  zero_dilation,
  insufficient_intersection,
  verification_failed,
  not_a_dth_power,
  origin_in_set,
  not_on_sphere,
  parse_error,
  header_mismatch,
  too_many,
  io_error,
};

/// Stable CamelCase name used in machine-readable error objects.
std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by the configuration finders when no group element reaches k+1
/// common points.
class InsufficientIntersection : public Error {
 public:
  InsufficientIntersection(std::uint64_t best_count, std::uint64_t needed)
      : Error(Errc::insufficient_intersection,
              "best intersection " + std::to_string(best_count) + " is below the required " +
                  std::to_string(needed)),
        best_count_(best_count),
        needed_(needed) {}
  std::uint64_t best_count() const noexcept { return best_count_; }
  std::uint64_t needed() const noexcept { return needed_; }

 private:
  std::uint64_t best_count_;
  std::uint64_t needed_;
};

class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t line, const std::string& reason)
      : Error(code, "line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fqsim
