#include "fqsim/field.hpp"

#include <numeric>
#include <string>
#include <utility>

namespace fqsim {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::not_prime: return "NotPrime";
    case Errc::too_large: return "TooLarge";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::even_field_unsupported: return "EvenFieldUnsupported";
    case Errc::no_root: return "NoRoot";
    case Errc::scan_cap_exceeded: return "ScanCapExceeded";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::enumeration_cap_exceeded: return "EnumerationCapExceeded";
    case Errc::not_in_space: return "NotInSpace";
    case Errc::space_mismatch: return "SpaceMismatch";
    case Errc::not_a_square: return "NotASquare";
    case Errc::zero_dilation: return "ZeroDilation";
    case Errc::insufficient_intersection: return "InsufficientIntersection";
    case Errc::verification_failed: return "VerificationFailed";
    case Errc::not_a_dth_power: return "NotADthPower";
    case Errc::origin_in_set: return "OriginInSet";
    case Errc::not_on_sphere: return "NotOnSphere";
    case Errc::parse_error: return "ParseError";
    case Errc::header_mismatch: return "HeaderMismatch";
    case Errc::too_many: return "TooMany";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t p = 3; p * p <= n; p += 2) {
    if (n % p == 0) return false;
  }
  return true;
}

PrimeField PrimeField::make(std::uint64_t q) {
  if (q >= (std::uint64_t{1} << 32)) {
    throw Error(Errc::too_large, "field order " + std::to_string(q) + " must be below 2^32");
  }
  if (!is_prime(q)) {
    throw Error(Errc::not_prime, std::to_string(q) + " is not prime");
  }
  return PrimeField(static_cast<std::uint32_t>(q));
}

FieldElement PrimeField::element(std::int64_t value) const {
  std::int64_t r = value % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return FieldElement(*this, static_cast<std::uint64_t>(r));
}

FieldElement PrimeField::zero() const { return FieldElement(*this, 0); }
FieldElement PrimeField::one() const { return FieldElement(*this, 1); }

namespace {

void require_odd(PrimeField f) {
  if (!f.is_odd()) {
    throw Error(Errc::even_field_unsupported, "residue and root operations need odd q");
  }
}

bool euler_is_square(FieldElement a) {
  if (a.is_zero()) return true;
  return pow(a, (a.field().order() - 1) / 2).value() == 1;
}

}  // namespace

FieldElement PrimeField::smallest_nonresidue() const {
  require_odd(*this);
  for (std::uint32_t c = 2; c < q_; ++c) {
    FieldElement e(*this, c);
    if (!euler_is_square(e)) return e;
  }
  // Unreachable for odd primes: exactly (q-1)/2 nonzero nonresidues exist.
  throw Error(Errc::invalid_argument, "no nonresidue found");
}

void require_same_field(FieldElement a, FieldElement b) {
  if (a.field() != b.field()) {
    throw Error(Errc::field_mismatch, "operands from F_" + std::to_string(a.field().order()) +
                                          " and F_" + std::to_string(b.field().order()));
  }
}

FieldElement FieldElement::operator-() const {
  return FieldElement(field_, value_ == 0 ? 0 : field_.order() - value_);
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw Error(Errc::division_by_zero, "zero has no inverse");
  // Extended Euclid on (value, q).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = field_.order(), new_r = value_;
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  return field_.element(t);
}

FieldElement operator+(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return FieldElement(a.field_, std::uint64_t{a.value_} + b.value_);
}

FieldElement operator-(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return FieldElement(a.field_, std::uint64_t{a.value_} + a.field_.order() - b.value_);
}

FieldElement operator*(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  return FieldElement(a.field_, std::uint64_t{a.value_} * b.value_);
}

FieldElement operator/(FieldElement a, FieldElement b) {
  require_same_field(a, b);
  if (b.is_zero()) throw Error(Errc::division_by_zero, "division by zero");
  return a * b.inverse();
}

FieldElement arith(FieldElement a, FieldElement b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw Error(Errc::invalid_argument, "unknown arithmetic op");
}

FieldElement pow(FieldElement a, std::uint64_t e) {
  FieldElement result = a.field().one();
  FieldElement base = a;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool is_mth_power(FieldElement a, std::uint64_t m) {
  require_odd(a.field());
  if (m == 0) throw Error(Errc::invalid_argument, "m must be positive");
  if (a.is_zero()) return true;
  const std::uint64_t qm1 = a.field().order() - 1;
  const std::uint64_t g = std::gcd(m, qm1);
  return pow(a, qm1 / g).value() == 1;
}

std::optional<FieldElement> sqrt(FieldElement a) {
  const PrimeField f = a.field();
  require_odd(f);
  if (a.is_zero()) return a;
  if (!euler_is_square(a)) return std::nullopt;

  const std::uint64_t q = f.order();
  // q - 1 = odd * 2^s
  std::uint64_t odd = q - 1;
  unsigned s = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }

  FieldElement z = pow(f.smallest_nonresidue(), odd);
  FieldElement x = pow(a, (odd + 1) / 2);
  FieldElement t = pow(a, odd);
  unsigned m = s;
  while (t.value() != 1) {
    unsigned i = 0;
    FieldElement t2 = t;
    while (t2.value() != 1) {
      t2 *= t2;
      ++i;
    }
    FieldElement b = z;
    for (unsigned j = 0; j + i + 1 < m; ++j) b *= b;
    x *= b;
    z = b * b;
    t *= z;
    m = i;
  }
  const FieldElement other = -x;
  return other.value() < x.value() ? other : x;
}

FieldElement mth_root(FieldElement a, std::uint64_t m, std::uint64_t scan_cap) {
  const PrimeField f = a.field();
  require_odd(f);
  if (m == 0) throw Error(Errc::invalid_argument, "m must be positive");
  if (!is_mth_power(a, m)) {
    throw Error(Errc::no_root, std::to_string(a.value()) + " is not a " + std::to_string(m) +
                                   "-th power in F_" + std::to_string(f.order()));
  }
  if (a.is_zero()) return a;

  const std::uint64_t qm1 = f.order() - 1;
  if (std::gcd(m, qm1) == 1) {
    // x -> x^m is a bijection on F_q^*, inverted by the exponent m^{-1} mod (q-1).
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(qm1), new_r = static_cast<std::int64_t>(m % qm1);
    while (new_r != 0) {
      const std::int64_t quot = r / new_r;
      t = std::exchange(new_t, t - quot * new_t);
      r = std::exchange(new_r, r - quot * new_r);
    }
    std::int64_t inv = t % static_cast<std::int64_t>(qm1);
    if (inv < 0) inv += static_cast<std::int64_t>(qm1);
    return pow(a, static_cast<std::uint64_t>(inv));
  }
  if (m == 2) return *sqrt(a);

  if (f.order() > scan_cap) {
    throw Error(Errc::scan_cap_exceeded, "root scan over F_" + std::to_string(f.order()) +
                                             " exceeds cap " + std::to_string(scan_cap));
  }
  for (std::uint32_t x = 1; x < f.order(); ++x) {
    FieldElement candidate(f, x);
    if (pow(candidate, m) == a) return candidate;
  }
  throw Error(Errc::no_root, "no root found");
}

}  // namespace fqsim
