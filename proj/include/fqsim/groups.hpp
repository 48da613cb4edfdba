#pragma once

// Explicit finite groups acting on explicit finite spaces. Groups are
// stored as canonically sorted element lists; every scan over a group
// visits elements in that order so results never depend on scheduling.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fqsim/geometry.hpp"

namespace fqsim {

enum class SpaceKind { full, punctured, sphere };

class Space {
 public:
  static Space full(PrimeField field, std::size_t dim, std::uint64_t cap = kEnumerationCap);
  /// F_q^d without the origin.
  static Space punctured(PrimeField field, std::size_t dim, std::uint64_t cap = kEnumerationCap);
  static Space sphere(PrimeField field, std::size_t dim, FieldElement radius,
                      std::uint64_t cap = kEnumerationCap);

  SpaceKind kind() const noexcept { return kind_; }
  PrimeField field() const noexcept { return elements_.field(); }
  std::size_t dim() const noexcept { return elements_.dim(); }
  const std::optional<FieldElement>& radius() const noexcept { return radius_; }
  const PointSet& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(const Vector& v) const;
  bool contains_all(const PointSet& set) const;
  std::string describe() const;

 private:
  Space(SpaceKind kind, PointSet elements, std::optional<FieldElement> radius)
      : kind_(kind), elements_(std::move(elements)), radius_(radius) {}

  SpaceKind kind_;
  PointSet elements_;
  std::optional<FieldElement> radius_;
};

enum class GroupKind { translations, orthogonal, special_linear };

std::string_view group_kind_name(GroupKind kind) noexcept;
GroupKind parse_group_kind(std::string_view name);

class GroupElement {
 public:
  static GroupElement translation(Vector offset);
  /// Throws InvalidArgument unless M^T M = I.
  static GroupElement orthogonal(Matrix m);
  /// Throws InvalidArgument unless det M = 1.
  static GroupElement special_linear(Matrix m);

  GroupKind kind() const noexcept { return kind_; }
  PrimeField field() const;
  std::size_t dim() const;
  /// Translation offset; only valid for translations.
  const Vector& offset() const { return std::get<Vector>(data_); }
  /// Linear part; only valid for orthogonal and special-linear elements.
  const Matrix& matrix() const { return std::get<Matrix>(data_); }

  Vector act(const Vector& x) const;
  /// (this o other)(x) = this(other(x)).
  GroupElement compose(const GroupElement& other) const;
  GroupElement inverse() const;
  bool is_identity() const;

  // By kind, then lexicographically on serialized entries.
  auto operator<=>(const GroupElement&) const = default;

 private:
  GroupElement(GroupKind kind, std::variant<Vector, Matrix> data)
      : kind_(kind), data_(std::move(data)) {}

  GroupKind kind_;
  std::variant<Vector, Matrix> data_;
};

class FiniteGroup {
 public:
  FiniteGroup(GroupKind kind, PrimeField field, std::size_t dim, std::vector<GroupElement> elements);

  GroupKind kind() const noexcept { return kind_; }
  PrimeField field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
  bool contains(const GroupElement& g) const;
  GroupElement identity() const;

  /// Whether the space is invariant under this kind of action (and matches
  /// q and d). Translations need the full space; linear groups fix the
  /// origin, so they also act on the punctured space and, when orthogonal,
  /// on spheres.
  bool acts_on(const Space& space) const;
  void require_acts_on(const Space& space) const;

 private:
  GroupKind kind_;
  PrimeField field_;
  std::size_t dim_;
  std::vector<GroupElement> elements_;
};

FiniteGroup translations(PrimeField field, std::size_t dim, std::uint64_t cap = kEnumerationCap);
/// Backtracking over mutually orthogonal unit-norm columns; cap bounds the
/// number of candidate columns examined.
FiniteGroup orthogonal_group(PrimeField field, std::size_t dim, std::uint64_t cap = kEnumerationCap);
/// Scan of all q^{d^2} matrices filtered by det = 1.
FiniteGroup special_linear_group(PrimeField field, std::size_t dim,
                                 std::uint64_t cap = kEnumerationCap);
FiniteGroup make_group(GroupKind kind, PrimeField field, std::size_t dim,
                       std::uint64_t cap = kEnumerationCap);

PointSet orbit(const FiniteGroup& group, const Space& space, const Vector& x);
std::vector<GroupElement> stabilizer(const FiniteGroup& group, const Space& space, const Vector& x);
std::vector<GroupElement> transporter(const FiniteGroup& group, const Space& space, const Vector& x,
                                      const Vector& y);
/// Orbit of the smallest space element equals the whole space. Empty
/// spaces are reported as not transitive.
bool is_transitive(const FiniteGroup& group, const Space& space);

}  // namespace fqsim
