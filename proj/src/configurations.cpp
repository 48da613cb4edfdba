#include "fqsim/configurations.hpp"

#include <algorithm>

namespace fqsim {

EdgeSet::EdgeSet(std::size_t k, std::vector<Edge> edges) : k_(k), edges_(std::move(edges)) {
  if (k == 0) throw Error(Errc::invalid_argument, "edge sets need k >= 1");
  if (edges_.empty()) throw Error(Errc::invalid_argument, "edge set must be nonempty");
  for (const auto& [i, j] : edges_) {
    if (!(1 <= i && i < j && j <= k + 1)) {
      throw Error(Errc::invalid_argument, "edge (" + std::to_string(i) + "," + std::to_string(j) +
                                              ") outside 1 <= i < j <= " + std::to_string(k + 1));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

EdgeSet EdgeSet::simplex(std::size_t k) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= k + 1; ++i)
    for (std::size_t j = i + 1; j <= k + 1; ++j) e.emplace_back(i, j);
  return EdgeSet(k, std::move(e));
}

EdgeSet EdgeSet::cycle(std::size_t k) {
  if (k < 2) throw Error(Errc::invalid_argument, "a cycle needs k >= 2");
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= k; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(1, k + 1);
  return EdgeSet(k, std::move(e));
}

EdgeSet EdgeSet::path(std::size_t k) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= k; ++i) e.emplace_back(i, i + 1);
  return EdgeSet(k, std::move(e));
}

EdgeSet EdgeSet::star(std::size_t k) {
  std::vector<Edge> e;
  for (std::size_t j = 2; j <= k + 1; ++j) e.emplace_back(1, j);
  return EdgeSet(k, std::move(e));
}

EdgeSet EdgeSet::preset(std::string_view name, std::size_t k) {
  if (name == "simplex") return simplex(k);
  if (name == "cycle") return cycle(k);
  if (name == "path") return path(k);
  if (name == "star") return star(k);
  throw Error(Errc::invalid_argument, "unknown edge preset '" + std::string(name) + "'");
}

bool SimilarityThreshold::met_by(std::uint64_t set_size) const noexcept {
  using u128 = unsigned __int128;
  return u128{set_size} * set_size >= u128{k_plus_1} * q_pow_d;
}

SimilarityThreshold similarity_threshold(PrimeField field, std::size_t dim, std::size_t k) {
  std::uint64_t q_pow_d = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (q_pow_d > UINT64_MAX / field.order()) throw Error(Errc::too_large, "q^d overflows");
    q_pow_d *= field.order();
  }
  SimilarityThreshold t{k + 1, q_pow_d, 0};
  // Integer square root of (k+1) q^d, rounded up.
  std::uint64_t lo = 0, hi = UINT64_MAX;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (t.met_by(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  t.min_size = lo;
  return t;
}

namespace {

std::string edge_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void check_distinct(const std::vector<Vector>& pts, const char* name, Verification& v) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) {
        v.fail(std::string("distinctness: ") + name + edge_name(i + 1, j + 1) + " coincide");
      }
    }
  }
}

void check_membership(const std::vector<Vector>& pts, const char* name, const PointSet* e,
                      Verification& v) {
  if (e == nullptr) return;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!e->contains(pts[i])) v.fail(std::string(name) + std::to_string(i + 1) + " is not in E");
  }
}

}  // namespace

Verification verify_similarity(const SimilarityWitness& w, const PointSet* e) {
  Verification v;
  try {
    const std::size_t n = w.edges.k() + 1;
    if (w.xs.size() != n || w.ys.size() != n || w.zs.size() != n) {
      v.fail("tuple sizes do not equal k+1 = " + std::to_string(n));
      return v;
    }
    if (w.r.is_zero()) v.fail("r is zero");
    if (w.sqrt_r * w.sqrt_r != w.r) v.fail("sqrt_r does not square to r");
    for (std::size_t i = 0; i < n; ++i) {
      if (w.zs[i] != scale(w.sqrt_r, w.xs[i])) v.fail("z" + std::to_string(i + 1) + " != sqrt_r * x" + std::to_string(i + 1));
      if (w.zs[i] != w.ys[i] + w.a) v.fail("z" + std::to_string(i + 1) + " != y" + std::to_string(i + 1) + " + a");
    }
    check_distinct(w.xs, "x", v);
    check_distinct(w.ys, "y", v);
    for (const auto& [i, j] : w.edges.edges()) {
      const FieldElement lhs = norm(w.ys[i - 1] - w.ys[j - 1]);
      const FieldElement rhs = w.r * norm(w.xs[i - 1] - w.xs[j - 1]);
      if (lhs != rhs) v.fail("norm relation violated at edge " + edge_name(i, j));
    }
    check_membership(w.xs, "x", e, v);
    check_membership(w.ys, "y", e, v);
  } catch (const Error& err) {
    v.fail(std::string("malformed witness: ") + err.what());
  }
  return v;
}

SimilarityWitness find_similar_config(const PointSet& e, FieldElement r, std::size_t k,
                                      const EdgeSet& edges) {
  if (r.field() != e.field()) throw Error(Errc::field_mismatch, "r and E use different fields");
  if (k == 0) throw Error(Errc::invalid_argument, "k must be at least 1");
  if (edges.k() != k) throw Error(Errc::invalid_argument, "edge set was built for a different k");
  if (r.is_zero()) throw Error(Errc::zero_dilation, "r must be nonzero");
  const auto root = sqrt(r);
  if (!root) {
    throw Error(Errc::not_a_square, std::to_string(r.value()) + " is not a square in F_" +
                                        std::to_string(r.field().order()));
  }
  const FieldElement s = *root;

  std::vector<Vector> scaled;
  scaled.reserve(e.size());
  for (const auto& x : e) scaled.push_back(scale(s, x));
  const PointSet h(e.field(), e.dim(), std::move(scaled));

  const IntersectionReport report = max_translation_intersection_fast(e, h);
  if (report.best_count < k + 1) throw InsufficientIntersection(report.best_count, k + 1);

  const Vector a = report.best_g.offset();
  std::vector<Vector> zs;
  for (const auto& z : h) {
    if (zs.size() == k + 1) break;
    if (e.contains(z - a)) zs.push_back(z);
  }

  const FieldElement s_inv = s.inverse();
  std::vector<Vector> xs, ys;
  for (const auto& z : zs) {
    xs.push_back(scale(s_inv, z));
    ys.push_back(z - a);
  }
  SimilarityWitness w{r, s, a, std::move(xs), std::move(ys), std::move(zs), edges, false,
                      report.best_count, report.bound};
  const Verification check = verify_similarity(w, &e);
  if (!check.ok) {
    throw Error(Errc::verification_failed, "similarity witness failed: " + check.reasons.front());
  }
  w.verified = true;
  return w;
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (m > n) return out;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t pos = m;
    while (pos > 0 && idx[pos - 1] == n - m + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < m; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

Verification verify_det_similarity(const DetSimilarityWitness& w, const PointSet* e) {
  Verification v;
  try {
    const std::size_t n = w.xs.size();
    const std::size_t d = w.g.dim();
    if (w.ys.size() != n || w.zs.size() != n) {
      v.fail("tuple sizes differ");
      return v;
    }
    if (n < d + 1) v.fail("need at least d+1 points");
    if (w.g.kind() != GroupKind::special_linear || determinant(w.g.matrix()).value() != 1) {
      v.fail("g is not in SL_d");
    }
    if (w.r.is_zero()) v.fail("r is zero");
    if (pow(w.rho, d) != w.r) v.fail("rho^d != r");
    for (std::size_t i = 0; i < n; ++i) {
      if (w.zs[i] != scale(w.rho, w.ys[i])) v.fail("z" + std::to_string(i + 1) + " != rho * y" + std::to_string(i + 1));
      if (w.zs[i] != w.g.act(w.xs[i])) v.fail("z" + std::to_string(i + 1) + " != g x" + std::to_string(i + 1));
    }
    check_distinct(w.xs, "x", v);
    check_distinct(w.ys, "y", v);
    for (const auto& subset : index_subsets(n, d)) {
      std::vector<Vector> xcols, ycols;
      for (auto i : subset) {
        xcols.push_back(w.xs[i]);
        ycols.push_back(w.ys[i]);
      }
      if (det_of_columns(xcols) != w.r * det_of_columns(ycols)) {
        std::string where;
        for (auto i : subset) where += (where.empty() ? "" : ",") + std::to_string(i + 1);
        v.fail("determinant relation violated at indices (" + where + ")");
      }
    }
    check_membership(w.xs, "x", e, v);
    check_membership(w.ys, "y", e, v);
  } catch (const Error& err) {
    v.fail(std::string("malformed witness: ") + err.what());
  }
  return v;
}

DetSimilarityWitness find_det_similar(const PointSet& e, FieldElement r, std::size_t k,
                                      const DetSearchOptions& options) {
  const PrimeField f = e.field();
  const std::size_t d = e.dim();
  if (r.field() != f) throw Error(Errc::field_mismatch, "r and E use different fields");
  if (k < d) {
    throw Error(Errc::invalid_argument, "determinant similarity needs k >= d (k=" +
                                            std::to_string(k) + ", d=" + std::to_string(d) + ")");
  }
  if (r.is_zero()) throw Error(Errc::zero_dilation, "r must be nonzero");
  if (!is_mth_power(r, d)) {
    throw Error(Errc::not_a_dth_power, std::to_string(r.value()) + " is not a " +
                                           std::to_string(d) + "-th power in F_" +
                                           std::to_string(f.order()));
  }
  if (e.contains_origin()) throw Error(Errc::origin_in_set, "E must not contain the origin");

  const FieldElement rho = mth_root(r, d);
  const FiniteGroup group = special_linear_group(f, d, options.enumeration_cap);
  const Space space = Space::punctured(f, d, options.enumeration_cap);

  std::vector<Vector> scaled;
  for (const auto& y : e) scaled.push_back(scale(rho, y));
  const PointSet h(f, d, std::move(scaled));

  const IntersectionReport report = max_intersection(group, space, e, h, {options.jobs});
  if (report.best_count < k + 1) throw InsufficientIntersection(report.best_count, k + 1);

  const GroupElement& g = report.best_g;
  const GroupElement g_inv = g.inverse();
  std::vector<Vector> xs, ys, zs;
  const FieldElement rho_inv = rho.inverse();
  for (const auto& z : h) {
    if (zs.size() == k + 1) break;
    Vector x = g_inv.act(z);
    if (!e.contains(x)) continue;
    xs.push_back(std::move(x));
    ys.push_back(scale(rho_inv, z));
    zs.push_back(z);
  }

  DetSimilarityWitness w{r, rho, g, std::move(xs), std::move(ys), std::move(zs), false,
                         report.best_count, report.bound};
  const Verification check = verify_det_similarity(w, &e);
  if (!check.ok) {
    throw Error(Errc::verification_failed, "determinant witness failed: " + check.reasons.front());
  }
  w.verified = true;
  return w;
}

SphereReport sphere_experiment(PrimeField field, std::size_t dim, FieldElement radius,
                               const PointSet& e, const PointSet& h, std::size_t k,
                               const SphereOptions& options) {
  const Space space = Space::sphere(field, dim, radius, options.enumeration_cap);
  if (!space.contains_all(e) || !space.contains_all(h)) {
    throw Error(Errc::not_on_sphere, "E and H must lie on the sphere of radius " +
                                         std::to_string(radius.value()));
  }
  const FiniteGroup group = orthogonal_group(field, dim, options.enumeration_cap);

  SphereReport out{max_intersection(group, space, e, h, {options.jobs}), space.size(), k};
  if (!out.intersection.transitive) {
    out.intersection.warnings.push_back("O_d does not act transitively on " + space.describe());
  }
  using u128 = unsigned __int128;
  const u128 product = u128{e.size()} * h.size();
  out.hypothesis_met = product >= u128{k + 1} * space.size();
  std::uint64_t nominal = 1;
  for (std::size_t i = 0; i + 1 < dim; ++i) nominal *= field.order();
  out.nominal_hypothesis_met = product >= u128{k + 1} * nominal;
  out.conclusion_held = !out.hypothesis_met || out.intersection.best_count >= k + 1;
  return out;
}

}  // namespace fqsim
