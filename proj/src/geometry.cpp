#include "fqsim/geometry.hpp"

#include <algorithm>
#include <string>

namespace fqsim {

std::uint64_t checked_space_size(PrimeField field, std::size_t dim, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (size > cap / field.order()) {
      throw Error(Errc::enumeration_cap_exceeded,
                  std::to_string(field.order()) + "^" + std::to_string(dim) + " exceeds cap " +
                      std::to_string(cap));
    }
    size *= field.order();
  }
  return size;
}

Vector::Vector(PrimeField field, std::vector<std::uint32_t> coords)
    : field_(field), coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(Errc::dimension_mismatch, "vectors need d >= 1");
  for (auto c : coords_) {
    if (c >= field.order()) {
      throw Error(Errc::invalid_argument, "coordinate " + std::to_string(c) + " outside [0, " +
                                              std::to_string(field.order()) + ")");
    }
  }
}

Vector Vector::zero(PrimeField field, std::size_t dim) {
  return Vector(field, std::vector<std::uint32_t>(dim, 0));
}

Vector Vector::decode(PrimeField field, std::size_t dim, std::uint64_t index) {
  std::vector<std::uint32_t> coords(dim);
  for (std::size_t i = dim; i-- > 0;) {
    coords[i] = static_cast<std::uint32_t>(index % field.order());
    index /= field.order();
  }
  return Vector(field, std::move(coords));
}

bool Vector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
}

std::uint64_t Vector::encode() const noexcept {
  std::uint64_t index = 0;
  for (auto c : coords_) index = index * field_.order() + c;
  return index;
}

void require_compatible(const Vector& a, const Vector& b) {
  if (a.field() != b.field()) {
    throw Error(Errc::field_mismatch, "vectors over F_" + std::to_string(a.field().order()) +
                                          " and F_" + std::to_string(b.field().order()));
  }
  if (a.dim() != b.dim()) {
    throw Error(Errc::dimension_mismatch, "dimensions " + std::to_string(a.dim()) + " and " +
                                              std::to_string(b.dim()));
  }
}

FieldElement dot(const Vector& a, const Vector& b) {
  require_compatible(a, b);
  const std::uint64_t q = a.field().order();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    acc = (acc + std::uint64_t{a.coords()[i]} * b.coords()[i]) % q;
  }
  return FieldElement(a.field(), acc);
}

FieldElement norm(const Vector& v) { return dot(v, v); }

Vector scale(FieldElement c, const Vector& v) {
  if (c.field() != v.field()) throw Error(Errc::field_mismatch, "scalar and vector fields differ");
  const std::uint64_t q = v.field().order();
  std::vector<std::uint32_t> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out[i] = static_cast<std::uint32_t>(std::uint64_t{c.value()} * v.coords()[i] % q);
  }
  return Vector(v.field(), std::move(out));
}

Vector translate(const Vector& v, const Vector& a) {
  require_compatible(v, a);
  const std::uint64_t q = v.field().order();
  std::vector<std::uint32_t> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out[i] = static_cast<std::uint32_t>((std::uint64_t{v.coords()[i]} + a.coords()[i]) % q);
  }
  return Vector(v.field(), std::move(out));
}

Vector difference(const Vector& v, const Vector& w) {
  require_compatible(v, w);
  const std::uint64_t q = v.field().order();
  std::vector<std::uint32_t> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out[i] = static_cast<std::uint32_t>((std::uint64_t{v.coords()[i]} + q - w.coords()[i]) % q);
  }
  return Vector(v.field(), std::move(out));
}

PointSet::PointSet(PrimeField field, std::size_t dim) : field_(field), dim_(dim) {
  if (dim == 0) throw Error(Errc::dimension_mismatch, "point sets need d >= 1");
}

PointSet::PointSet(PrimeField field, std::size_t dim, std::vector<Vector> points)
    : PointSet(field, dim) {
  for (const auto& p : points) {
    if (p.field() != field) throw Error(Errc::field_mismatch, "point over a different field");
    if (p.dim() != dim) throw Error(Errc::dimension_mismatch, "point of the wrong dimension");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::move(points);
}

PointSet PointSet::full_space(PrimeField field, std::size_t dim, std::uint64_t cap) {
  const std::uint64_t n = checked_space_size(field, dim, cap);
  PointSet out(field, dim);
  out.points_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.points_.push_back(Vector::decode(field, dim, i));
  return out;
}

bool PointSet::contains(const Vector& v) const {
  return std::binary_search(points_.begin(), points_.end(), v);
}

bool PointSet::contains_origin() const {
  return !points_.empty() && points_.front().is_zero();
}

IndexMask::IndexMask(const PointSet& set)
    : bits_(checked_space_size(set.field(), set.dim()), 0) {
  for (const auto& p : set) bits_[p.encode()] = 1;
}

Matrix::Matrix(PrimeField field, std::size_t n, std::vector<std::uint32_t> entries)
    : field_(field), n_(n), entries_(std::move(entries)) {
  if (n == 0 || entries_.size() != n * n) {
    throw Error(Errc::dimension_mismatch, "matrix needs n*n entries with n >= 1");
  }
  for (auto e : entries_) {
    if (e >= field.order()) throw Error(Errc::invalid_argument, "matrix entry out of range");
  }
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
  std::vector<std::uint32_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return Matrix(field, n, std::move(e));
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
  return from_rows(columns).transpose();
}

Matrix Matrix::from_rows(std::span<const Vector> rows) {
  if (rows.empty()) throw Error(Errc::dimension_mismatch, "no vectors given");
  const std::size_t n = rows.size();
  std::vector<std::uint32_t> e;
  e.reserve(n * n);
  for (const auto& r : rows) {
    require_compatible(r, rows.front());
    if (r.dim() != n) {
      throw Error(Errc::dimension_mismatch, "need exactly d vectors of dimension d");
    }
    e.insert(e.end(), r.coords().begin(), r.coords().end());
  }
  return Matrix(rows.front().field(), n, std::move(e));
}

Vector Matrix::column(std::size_t col) const {
  std::vector<std::uint32_t> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = entries_[i * n_ + col];
  return Vector(field_, std::move(c));
}

Matrix Matrix::transpose() const {
  std::vector<std::uint32_t> t(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t[j * n_ + i] = entries_[i * n_ + j];
  return Matrix(field_, n_, std::move(t));
}

bool Matrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (entries_[i * n_ + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.field_ != b.field_) throw Error(Errc::field_mismatch, "matrix fields differ");
  if (a.n_ != b.n_) throw Error(Errc::dimension_mismatch, "matrix sizes differ");
  const std::size_t n = a.n_;
  const std::uint64_t q = a.field_.order();
  std::vector<std::uint32_t> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        acc = (acc + std::uint64_t{a.entries_[i * n + k]} * b.entries_[k * n + j]) % q;
      }
      c[i * n + j] = static_cast<std::uint32_t>(acc);
    }
  }
  return Matrix(a.field_, n, std::move(c));
}

Vector apply(const Matrix& m, const Vector& v) {
  if (m.field() != v.field()) throw Error(Errc::field_mismatch, "matrix and vector fields differ");
  if (m.size() != v.dim()) throw Error(Errc::dimension_mismatch, "matrix/vector size mismatch");
  const std::size_t n = m.size();
  const std::uint64_t q = v.field().order();
  const auto e = m.entries();
  const auto x = v.coords();
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < n; ++k) acc = (acc + std::uint64_t{e[i * n + k]} * x[k]) % q;
    out[i] = static_cast<std::uint32_t>(acc);
  }
  return Vector(v.field(), std::move(out));
}

FieldElement determinant(const Matrix& m) {
  const PrimeField f = m.field();
  const std::size_t n = m.size();
  std::vector<FieldElement> a;
  a.reserve(n * n);
  for (auto e : m.entries()) a.emplace_back(f, e);

  FieldElement det = f.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col].is_zero()) ++pivot;
    if (pivot == n) return f.zero();
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      det = -det;
    }
    const FieldElement p = a[col * n + col];
    det *= p;
    const FieldElement p_inv = p.inverse();
    for (std::size_t row = col + 1; row < n; ++row) {
      const FieldElement factor = a[row * n + col] * p_inv;
      if (factor.is_zero()) continue;
      for (std::size_t j = col; j < n; ++j) a[row * n + j] -= factor * a[col * n + j];
    }
  }
  return det;
}

namespace {

FieldElement cofactor_expand(PrimeField f, const std::vector<std::uint32_t>& e, std::size_t n) {
  if (n == 1) return FieldElement(f, e[0]);
  FieldElement total = f.zero();
  std::vector<std::uint32_t> minor((n - 1) * (n - 1));
  for (std::size_t col = 0; col < n; ++col) {
    if (e[col] == 0) continue;
    std::size_t k = 0;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) minor[k++] = e[i * n + j];
    const FieldElement term = FieldElement(f, e[col]) * cofactor_expand(f, minor, n - 1);
    total = (col % 2 == 0) ? total + term : total - term;
  }
  return total;
}

}  // namespace

FieldElement determinant_by_cofactors(const Matrix& m) {
  return cofactor_expand(m.field(), {m.entries().begin(), m.entries().end()}, m.size());
}

FieldElement det_of_columns(std::span<const Vector> columns) {
  if (columns.empty()) throw Error(Errc::dimension_mismatch, "no columns given");
  if (columns.size() != columns.front().dim()) {
    throw Error(Errc::dimension_mismatch, "need exactly d vectors of dimension d");
  }
  // det(M) = det(M^T), so the rows can be used directly.
  return determinant(Matrix::from_rows(columns));
}

Matrix inverse(const Matrix& m) {
  const PrimeField f = m.field();
  const std::size_t n = m.size();
  std::vector<FieldElement> a, inv;
  for (auto e : m.entries()) a.emplace_back(f, e);
  const Matrix id = Matrix::identity(f, n);
  for (auto e : id.entries()) inv.emplace_back(f, e);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col].is_zero()) ++pivot;
    if (pivot == n) throw Error(Errc::division_by_zero, "matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a[pivot * n + j], a[col * n + j]);
      std::swap(inv[pivot * n + j], inv[col * n + j]);
    }
    const FieldElement p_inv = a[col * n + col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col * n + j] *= p_inv;
      inv[col * n + j] *= p_inv;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const FieldElement factor = a[row * n + col];
      if (factor.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[row * n + j] -= factor * a[col * n + j];
        inv[row * n + j] -= factor * inv[col * n + j];
      }
    }
  }
  std::vector<std::uint32_t> out;
  out.reserve(n * n);
  for (const auto& e : inv) out.push_back(e.value());
  return Matrix(f, n, std::move(out));
}

PointSet sphere(PrimeField field, std::size_t dim, FieldElement radius, std::uint64_t cap) {
  if (radius.field() != field) throw Error(Errc::field_mismatch, "radius over a different field");
  const std::uint64_t n = checked_space_size(field, dim, cap);
  std::vector<Vector> pts;
  for (std::uint64_t i = 0; i < n; ++i) {
    Vector v = Vector::decode(field, dim, i);
    if (norm(v) == radius) pts.push_back(std::move(v));
  }
  // Decoding in index order already yields sorted output.
  return PointSet(field, dim, std::move(pts));
}

std::vector<FieldElement> pair_norms(std::span<const Vector> tuple) {
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) out.push_back(norm(tuple[i] - tuple[j]));
  }
  return out;
}

}  // namespace fqsim
