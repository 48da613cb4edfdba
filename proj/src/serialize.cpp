#include "fqsim/serialize.hpp"

namespace fqsim {

json to_json(const Vector& v) { return json(std::vector<std::uint32_t>(v.coords().begin(), v.coords().end())); }

json to_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

json to_json(const PointSet& set) { return to_json(set.points()); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    rows.push_back(std::vector<std::uint32_t>(m.entries().begin() + i * m.size(),
                                              m.entries().begin() + (i + 1) * m.size()));
  }
  return rows;
}

json to_json(const GroupElement& g) {
  if (g.kind() == GroupKind::translations) return {{"kind", "translation"}, {"a", to_json(g.offset())}};
  return {{"kind", group_kind_name(g.kind())}, {"matrix", to_json(g.matrix())}};
}

json to_json(const IntersectionReport& report, bool with_histogram) {
  json out = {
      {"best_g", to_json(report.best_g)},
      {"best_count", report.best_count},
      {"bound_num", report.bound.num},
      {"bound_den", report.bound.den},
      {"double_count_total", report.double_count_total},
      {"transitive", report.transitive},
      {"group_order", report.group_order},
      {"space_size", report.space_size},
      {"bound_holds", report.bound_holds()},
      {"warnings", report.warnings},
  };
  if (with_histogram) {
    json h = json::object();
    for (const auto& [count, freq] : report.histogram) h[std::to_string(count)] = freq;
    out["histogram"] = std::move(h);
  }
  return out;
}

json to_json(const DoubleCountCheck& check) {
  return {{"total", check.total},
          {"expected_num", check.expected.num},
          {"expected_den", check.expected.den},
          {"applicable", check.applicable},
          {"equal", check.equal}};
}

json to_json(const SimilarityWitness& w) {
  json edges = json::array();
  for (const auto& [i, j] : w.edges.edges()) edges.push_back({i, j});
  return {
      {"type", "similarity"},
      {"q", w.r.field().order()},
      {"d", w.a.dim()},
      {"k", w.edges.k()},
      {"r", w.r.value()},
      {"sqrt_r", w.sqrt_r.value()},
      {"a", to_json(w.a)},
      {"xs", to_json(w.xs)},
      {"ys", to_json(w.ys)},
      {"zs", to_json(w.zs)},
      {"edges", std::move(edges)},
      {"verified", w.verified},
      {"best_count", w.best_count},
      {"bound_num", w.bound.num},
      {"bound_den", w.bound.den},
  };
}

json to_json(const DetSimilarityWitness& w) {
  return {
      {"type", "det-similarity"},
      {"q", w.r.field().order()},
      {"d", w.g.dim()},
      {"k", w.xs.empty() ? 0 : w.xs.size() - 1},
      {"r", w.r.value()},
      {"rho", w.rho.value()},
      {"g", to_json(w.g)},
      {"xs", to_json(w.xs)},
      {"ys", to_json(w.ys)},
      {"zs", to_json(w.zs)},
      {"verified", w.verified},
      {"best_count", w.best_count},
      {"bound_num", w.bound.num},
      {"bound_den", w.bound.den},
  };
}

json to_json(const SphereReport& report) {
  json out = to_json(report.intersection);
  out["sphere_size"] = report.sphere_size;
  out["k"] = report.k;
  out["hypothesis_met"] = report.hypothesis_met;
  out["nominal_hypothesis_met"] = report.nominal_hypothesis_met;
  out["conclusion_held"] = report.conclusion_held;
  return out;
}

json to_json(const Verification& v) { return {{"ok", v.ok}, {"reasons", v.reasons}}; }

namespace {

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("malformed witness JSON: ") + e.what());
  }
}

}  // namespace

Vector vector_from_json(PrimeField field, const json& j) {
  return guarded([&] {
    if (!j.is_array()) throw Error(Errc::parse_error, "vector must be a JSON array");
    std::vector<std::uint32_t> coords;
    for (const auto& c : j) {
      const auto value = c.get<std::int64_t>();
      if (value < 0 || value >= static_cast<std::int64_t>(field.order())) {
        throw Error(Errc::invalid_argument, "coordinate " + std::to_string(value) + " out of range");
      }
      coords.push_back(static_cast<std::uint32_t>(value));
    }
    return Vector(field, std::move(coords));
  });
}

namespace {

std::vector<Vector> vectors_from_json(PrimeField field, const json& j) {
  std::vector<Vector> out;
  for (const auto& v : j) out.push_back(vector_from_json(field, v));
  return out;
}

Matrix matrix_from_json(PrimeField field, const json& rows) {
  std::vector<std::uint32_t> entries;
  for (const auto& row : rows) {
    for (const auto& e : row) entries.push_back(static_cast<std::uint32_t>(e.get<std::uint64_t>()));
  }
  return Matrix(field, rows.size(), std::move(entries));
}

}  // namespace

GroupElement group_element_from_json(PrimeField field, const json& j) {
  return guarded([&] {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "translation") return GroupElement::translation(vector_from_json(field, j.at("a")));
    const Matrix m = matrix_from_json(field, j.at("matrix"));
    return parse_group_kind(kind) == GroupKind::orthogonal ? GroupElement::orthogonal(m)
                                                           : GroupElement::special_linear(m);
  });
}

SimilarityWitness similarity_witness_from_json(const json& j) {
  return guarded([&] {
    const PrimeField f = PrimeField::make(j.at("q").get<std::uint64_t>());
    std::vector<EdgeSet::Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    return SimilarityWitness{
        FieldElement(f, j.at("r").get<std::uint64_t>()),
        FieldElement(f, j.at("sqrt_r").get<std::uint64_t>()),
        vector_from_json(f, j.at("a")),
        vectors_from_json(f, j.at("xs")),
        vectors_from_json(f, j.at("ys")),
        vectors_from_json(f, j.at("zs")),
        EdgeSet(j.at("k").get<std::size_t>(), std::move(edges)),
        j.value("verified", false),
        j.value("best_count", std::uint64_t{0}),
        Rational{j.value("bound_num", std::uint64_t{0}), j.value("bound_den", std::uint64_t{1})},
    };
  });
}

DetSimilarityWitness det_witness_from_json(const json& j) {
  return guarded([&] {
    const PrimeField f = PrimeField::make(j.at("q").get<std::uint64_t>());
    return DetSimilarityWitness{
        FieldElement(f, j.at("r").get<std::uint64_t>()),
        FieldElement(f, j.at("rho").get<std::uint64_t>()),
        group_element_from_json(f, j.at("g")),
        vectors_from_json(f, j.at("xs")),
        vectors_from_json(f, j.at("ys")),
        vectors_from_json(f, j.at("zs")),
        j.value("verified", false),
        j.value("best_count", std::uint64_t{0}),
        Rational{j.value("bound_num", std::uint64_t{0}), j.value("bound_den", std::uint64_t{1})},
    };
  });
}

json error_to_json(const std::exception& e) {
  json out;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    out["code"] = errc_name(err->code());
  } else {
    out["code"] = "Internal";
  }
  out["message"] = e.what();
  if (const auto* ins = dynamic_cast<const InsufficientIntersection*>(&e)) {
    out["best_count"] = ins->best_count();
    out["needed"] = ins->needed();
  }
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) out["line"] = pe->line();
  return out;
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::insufficient_intersection: return 1;
    case Errc::verification_failed: return 2;
    case Errc::enumeration_cap_exceeded:
    case Errc::scan_cap_exceeded: return 4;
    default: return 3;
  }
}

}  // namespace fqsim
