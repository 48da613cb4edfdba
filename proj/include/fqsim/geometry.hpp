#pragma once

// Vectors, point sets and square matrices over F_q^d, together with the
// sum-of-squares form ||x|| = x_1^2 + ... + x_d^2 and determinants.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "fqsim/field.hpp"

namespace fqsim {

inline constexpr std::uint64_t kEnumerationCap = 100'000'000;

/// q^d, throwing EnumerationCapExceeded when it exceeds cap.
std::uint64_t checked_space_size(PrimeField field, std::size_t dim, std::uint64_t cap = kEnumerationCap);

class Vector {
 public:
  Vector(PrimeField field, std::vector<std::uint32_t> coords);
  static Vector zero(PrimeField field, std::size_t dim);
  /// Inverse of encode(): coordinate 0 is the most significant base-q digit.
  static Vector decode(PrimeField field, std::size_t dim, std::uint64_t index);

  std::size_t dim() const noexcept { return coords_.size(); }
  PrimeField field() const noexcept { return field_; }
  FieldElement operator[](std::size_t i) const { return FieldElement(field_, coords_[i]); }
  std::span<const std::uint32_t> coords() const noexcept { return coords_; }
  bool is_zero() const noexcept;

  /// Base-q index; monotone in the lexicographic order.
  std::uint64_t encode() const noexcept;

  // Lexicographic on canonical representatives.
  auto operator<=>(const Vector&) const = default;

 private:
  PrimeField field_;
  std::vector<std::uint32_t> coords_;
};

void require_compatible(const Vector& a, const Vector& b);

FieldElement norm(const Vector& v);
FieldElement dot(const Vector& a, const Vector& b);
Vector scale(FieldElement c, const Vector& v);
Vector translate(const Vector& v, const Vector& a);
Vector difference(const Vector& v, const Vector& w);

inline Vector operator+(const Vector& v, const Vector& a) { return translate(v, a); }
inline Vector operator-(const Vector& v, const Vector& w) { return difference(v, w); }
inline Vector operator*(FieldElement c, const Vector& v) { return scale(c, v); }

/// Strictly sorted, duplicate-free subset of F_q^d.
class PointSet {
 public:
  PointSet(PrimeField field, std::size_t dim);
  PointSet(PrimeField field, std::size_t dim, std::vector<Vector> points);
  static PointSet full_space(PrimeField field, std::size_t dim, std::uint64_t cap = kEnumerationCap);

  PrimeField field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  bool contains(const Vector& v) const;
  bool contains_origin() const;

  const Vector& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }
  const std::vector<Vector>& points() const noexcept { return points_; }

  bool operator==(const PointSet&) const = default;

 private:
  PrimeField field_;
  std::size_t dim_;
  std::vector<Vector> points_;
};

/// Membership bitmap over base-q indices, for the scan kernels.
class IndexMask {
 public:
  explicit IndexMask(const PointSet& set);
  bool test(std::uint64_t index) const { return bits_[index] != 0; }

 private:
  std::vector<std::uint8_t> bits_;
};

class Matrix {
 public:
  /// Row-major entries, n*n of them.
  Matrix(PrimeField field, std::size_t n, std::vector<std::uint32_t> entries);
  static Matrix identity(PrimeField field, std::size_t n);
  static Matrix from_columns(std::span<const Vector> columns);
  static Matrix from_rows(std::span<const Vector> rows);

  std::size_t size() const noexcept { return n_; }
  PrimeField field() const noexcept { return field_; }
  FieldElement at(std::size_t row, std::size_t col) const {
    return FieldElement(field_, entries_[row * n_ + col]);
  }
  std::span<const std::uint32_t> entries() const noexcept { return entries_; }
  Vector column(std::size_t col) const;
  Matrix transpose() const;
  bool is_identity() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);

  auto operator<=>(const Matrix&) const = default;

 private:
  PrimeField field_;
  std::size_t n_;
  std::vector<std::uint32_t> entries_;
};

Vector apply(const Matrix& m, const Vector& v);

/// Gaussian elimination with a search for nonzero pivots.
FieldElement determinant(const Matrix& m);
/// Laplace expansion along the first row. Exponential; kept as an
/// independent cross-check for small d.
FieldElement determinant_by_cofactors(const Matrix& m);
/// Determinant of the matrix whose columns are the given vectors, in order.
FieldElement det_of_columns(std::span<const Vector> columns);

/// Gauss-Jordan inverse; throws DivisionByZero for singular input.
Matrix inverse(const Matrix& m);

/// {x in F_q^d : ||x|| = radius}, by full enumeration.
PointSet sphere(PrimeField field, std::size_t dim, FieldElement radius,
                std::uint64_t cap = kEnumerationCap);

/// ||x_i - x_j|| for i < j in dictionary order on (i, j).
std::vector<FieldElement> pair_norms(std::span<const Vector> tuple);

}  // namespace fqsim
