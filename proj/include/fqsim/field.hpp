#pragma once

// Prime-field arithmetic and the residue/root machinery used by the
// similarity constructions. Elements carry their modulus so that mixing
// fields is caught at the operation instead of silently reducing.

#include <compare>
#include <cstdint>
#include <optional>

#include "fqsim/error.hpp"

namespace fqsim {

class FieldElement;

class PrimeField {
 public:
  /// Validates q (deterministic primality, q < 2^32).
  static PrimeField make(std::uint64_t q);

  std::uint32_t order() const noexcept { return q_; }
  bool is_odd() const noexcept { return q_ != 2; }

  FieldElement element(std::int64_t value) const;
  FieldElement zero() const;
  FieldElement one() const;

  /// Smallest quadratic nonresidue; q must be odd.
  FieldElement smallest_nonresidue() const;

  auto operator<=>(const PrimeField&) const = default;

 private:
  explicit PrimeField(std::uint32_t q) : q_(q) {}
  std::uint32_t q_;
};

inline PrimeField make_field(std::uint64_t q) { return PrimeField::make(q); }

bool is_prime(std::uint64_t n) noexcept;

class FieldElement {
 public:
  FieldElement(PrimeField field, std::uint64_t value)
      : field_(field), value_(static_cast<std::uint32_t>(value % field.order())) {}

  std::uint32_t value() const noexcept { return value_; }
  PrimeField field() const noexcept { return field_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator-() const;
  FieldElement inverse() const;

  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b);
  friend FieldElement operator*(FieldElement a, FieldElement b);
  friend FieldElement operator/(FieldElement a, FieldElement b);

  FieldElement& operator+=(FieldElement b) { return *this = *this + b; }
  FieldElement& operator-=(FieldElement b) { return *this = *this - b; }
  FieldElement& operator*=(FieldElement b) { return *this = *this * b; }

  // Ordered by field, then canonical representative.
  auto operator<=>(const FieldElement&) const = default;

 private:
  PrimeField field_;
  std::uint32_t value_;
};

enum class ArithOp { add, sub, mul, div };

FieldElement arith(FieldElement a, FieldElement b, ArithOp op);

/// a^e by square-and-multiply; 0^0 = 1.
FieldElement pow(FieldElement a, std::uint64_t e);

/// Membership in (F_q)^m = {b^m}. Requires odd q.
bool is_mth_power(FieldElement a, std::uint64_t m);

/// Smaller of the two square roots (Tonelli-Shanks), absent for nonsquares.
std::optional<FieldElement> sqrt(FieldElement a);

inline constexpr std::uint64_t kRootScanCap = 1'000'000;

/// Smallest x with x^m = a. Throws NoRoot when a is not an m-th power and
/// ScanCapExceeded when the exhaustive path would need q > scan_cap.
FieldElement mth_root(FieldElement a, std::uint64_t m, std::uint64_t scan_cap = kRootScanCap);

void require_same_field(FieldElement a, FieldElement b);

}  // namespace fqsim
