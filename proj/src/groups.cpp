#include "fqsim/groups.hpp"

#include <algorithm>

namespace fqsim {

Space Space::full(PrimeField field, std::size_t dim, std::uint64_t cap) {
  return Space(SpaceKind::full, PointSet::full_space(field, dim, cap), std::nullopt);
}

Space Space::punctured(PrimeField field, std::size_t dim, std::uint64_t cap) {
  std::vector<Vector> pts = PointSet::full_space(field, dim, cap).points();
  pts.erase(pts.begin());  // the origin has index 0
  return Space(SpaceKind::punctured, PointSet(field, dim, std::move(pts)), std::nullopt);
}

Space Space::sphere(PrimeField field, std::size_t dim, FieldElement radius, std::uint64_t cap) {
  return Space(SpaceKind::sphere, fqsim::sphere(field, dim, radius, cap), radius);
}

bool Space::contains(const Vector& v) const { return elements_.contains(v); }

bool Space::contains_all(const PointSet& set) const {
  if (set.field() != field() || set.dim() != dim()) return false;
  return std::all_of(set.begin(), set.end(), [&](const Vector& v) { return contains(v); });
}

std::string Space::describe() const {
  switch (kind_) {
    case SpaceKind::full: return "full";
    case SpaceKind::punctured: return "punctured";
    case SpaceKind::sphere: return "sphere(radius=" + std::to_string(radius_->value()) + ")";
  }
  return "?";
}

std::string_view group_kind_name(GroupKind kind) noexcept {
  switch (kind) {
    case GroupKind::translations: return "translations";
    case GroupKind::orthogonal: return "orthogonal";
    case GroupKind::special_linear: return "special-linear";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view name) {
  if (name == "translations" || name == "translation") return GroupKind::translations;
  if (name == "orthogonal") return GroupKind::orthogonal;
  if (name == "special-linear") return GroupKind::special_linear;
  throw Error(Errc::invalid_argument, "unknown group kind '" + std::string(name) + "'");
}

GroupElement GroupElement::translation(Vector offset) {
  return GroupElement(GroupKind::translations, std::move(offset));
}

GroupElement GroupElement::orthogonal(Matrix m) {
  if (!(m.transpose() * m).is_identity()) {
    throw Error(Errc::invalid_argument, "matrix is not orthogonal");
  }
  return GroupElement(GroupKind::orthogonal, std::move(m));
}

GroupElement GroupElement::special_linear(Matrix m) {
  if (determinant(m).value() != 1) {
    throw Error(Errc::invalid_argument, "matrix does not have determinant 1");
  }
  return GroupElement(GroupKind::special_linear, std::move(m));
}

PrimeField GroupElement::field() const {
  return kind_ == GroupKind::translations ? offset().field() : matrix().field();
}

std::size_t GroupElement::dim() const {
  return kind_ == GroupKind::translations ? offset().dim() : matrix().size();
}

Vector GroupElement::act(const Vector& x) const {
  return kind_ == GroupKind::translations ? x + offset() : apply(matrix(), x);
}

GroupElement GroupElement::compose(const GroupElement& other) const {
  if (kind_ != other.kind_) throw Error(Errc::invalid_argument, "composing different group kinds");
  if (kind_ == GroupKind::translations) return translation(offset() + other.offset());
  return GroupElement(kind_, matrix() * other.matrix());
}

GroupElement GroupElement::inverse() const {
  switch (kind_) {
    case GroupKind::translations: return translation(Vector::zero(field(), dim()) - offset());
    case GroupKind::orthogonal: return GroupElement(kind_, matrix().transpose());
    case GroupKind::special_linear: return GroupElement(kind_, fqsim::inverse(matrix()));
  }
  throw Error(Errc::invalid_argument, "unknown group kind");
}

bool GroupElement::is_identity() const {
  return kind_ == GroupKind::translations ? offset().is_zero() : matrix().is_identity();
}

FiniteGroup::FiniteGroup(GroupKind kind, PrimeField field, std::size_t dim,
                         std::vector<GroupElement> elements)
    : kind_(kind), field_(field), dim_(dim), elements_(std::move(elements)) {
  for (const auto& g : elements_) {
    if (g.kind() != kind || g.field() != field || g.dim() != dim) {
      throw Error(Errc::invalid_argument, "group element does not belong to this family");
    }
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FiniteGroup::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

GroupElement FiniteGroup::identity() const {
  if (kind_ == GroupKind::translations) return GroupElement::translation(Vector::zero(field_, dim_));
  Matrix id = Matrix::identity(field_, dim_);
  return kind_ == GroupKind::orthogonal ? GroupElement::orthogonal(id)
                                        : GroupElement::special_linear(id);
}

bool FiniteGroup::acts_on(const Space& space) const {
  if (space.field() != field_ || space.dim() != dim_) return false;
  switch (kind_) {
    case GroupKind::translations: return space.kind() == SpaceKind::full;
    case GroupKind::special_linear: return space.kind() != SpaceKind::sphere;
    case GroupKind::orthogonal: return true;
  }
  return false;
}

void FiniteGroup::require_acts_on(const Space& space) const {
  if (!acts_on(space)) {
    throw Error(Errc::space_mismatch, std::string(group_kind_name(kind_)) + " over F_" +
                                          std::to_string(field_.order()) + "^" +
                                          std::to_string(dim_) + " does not act on the " +
                                          space.describe() + " space over F_" +
                                          std::to_string(space.field().order()) + "^" +
                                          std::to_string(space.dim()));
  }
}

FiniteGroup translations(PrimeField field, std::size_t dim, std::uint64_t cap) {
  const std::uint64_t n = checked_space_size(field, dim, cap);
  std::vector<GroupElement> elems;
  elems.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    elems.push_back(GroupElement::translation(Vector::decode(field, dim, i)));
  }
  return FiniteGroup(GroupKind::translations, field, dim, std::move(elems));
}

namespace {

void extend_orthonormal(const std::vector<Vector>& units, std::vector<Vector>& columns,
                        std::size_t dim, std::uint64_t& budget, std::uint64_t cap,
                        std::vector<GroupElement>& out) {
  if (columns.size() == dim) {
    out.push_back(GroupElement::orthogonal(Matrix::from_columns(columns)));
    return;
  }
  for (const auto& u : units) {
    if (++budget > cap) {
      throw Error(Errc::enumeration_cap_exceeded, "orthogonal group search exceeds cap " +
                                                      std::to_string(cap));
    }
    const bool orthogonal_to_all = std::all_of(
        columns.begin(), columns.end(), [&](const Vector& c) { return dot(c, u).is_zero(); });
    if (!orthogonal_to_all) continue;
    columns.push_back(u);
    extend_orthonormal(units, columns, dim, budget, cap, out);
    columns.pop_back();
  }
}

}  // namespace

FiniteGroup orthogonal_group(PrimeField field, std::size_t dim, std::uint64_t cap) {
  const std::uint64_t n = checked_space_size(field, dim, cap);
  std::vector<Vector> units;
  for (std::uint64_t i = 0; i < n; ++i) {
    Vector v = Vector::decode(field, dim, i);
    if (norm(v).value() == 1) units.push_back(std::move(v));
  }
  std::uint64_t budget = n;
  std::vector<Vector> columns;
  std::vector<GroupElement> elems;
  extend_orthonormal(units, columns, dim, budget, cap, elems);
  return FiniteGroup(GroupKind::orthogonal, field, dim, std::move(elems));
}

FiniteGroup special_linear_group(PrimeField field, std::size_t dim, std::uint64_t cap) {
  const std::uint64_t total = checked_space_size(field, dim * dim, cap);
  const std::uint64_t q = field.order();
  std::vector<GroupElement> elems;
  std::vector<std::uint32_t> entries(dim * dim, 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t rest = i;
    for (std::size_t k = entries.size(); k-- > 0;) {
      entries[k] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    bool unit_det;
    if (dim == 2) {
      const std::uint64_t ad = std::uint64_t{entries[0]} * entries[3] % q;
      const std::uint64_t bc = std::uint64_t{entries[1]} * entries[2] % q;
      unit_det = (ad + q - bc) % q == 1 % q;
    } else {
      unit_det = determinant(Matrix(field, dim, entries)).value() == 1 % q;
    }
    if (unit_det) elems.push_back(GroupElement::special_linear(Matrix(field, dim, entries)));
  }
  return FiniteGroup(GroupKind::special_linear, field, dim, std::move(elems));
}

FiniteGroup make_group(GroupKind kind, PrimeField field, std::size_t dim, std::uint64_t cap) {
  switch (kind) {
    case GroupKind::translations: return translations(field, dim, cap);
    case GroupKind::orthogonal: return orthogonal_group(field, dim, cap);
    case GroupKind::special_linear: return special_linear_group(field, dim, cap);
  }
  throw Error(Errc::invalid_argument, "unknown group kind");
}

namespace {

void require_member(const Space& space, const Vector& x) {
  if (!space.contains(x)) throw Error(Errc::not_in_space, "point is not in the " + space.describe() + " space");
}

}  // namespace

PointSet orbit(const FiniteGroup& group, const Space& space, const Vector& x) {
  group.require_acts_on(space);
  require_member(space, x);
  std::vector<Vector> pts;
  pts.reserve(group.size());
  for (const auto& g : group.elements()) pts.push_back(g.act(x));
  return PointSet(space.field(), space.dim(), std::move(pts));
}

std::vector<GroupElement> stabilizer(const FiniteGroup& group, const Space& space, const Vector& x) {
  return transporter(group, space, x, x);
}

std::vector<GroupElement> transporter(const FiniteGroup& group, const Space& space, const Vector& x,
                                      const Vector& y) {
  group.require_acts_on(space);
  require_member(space, x);
  require_member(space, y);
  std::vector<GroupElement> out;
  for (const auto& g : group.elements()) {
    if (g.act(x) == y) out.push_back(g);
  }
  return out;
}

bool is_transitive(const FiniteGroup& group, const Space& space) {
  group.require_acts_on(space);
  if (space.size() == 0) return false;
  return orbit(group, space, space.elements()[0]).size() == space.size();
}

}  // namespace fqsim
