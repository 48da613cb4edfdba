#pragma once

// Finders for r-similar and determinant-similar (k+1)-point configurations,
// each paired with a verifier that recomputes every relation from raw
// coordinates.
//
// r-similar: with s^2 = r, any k+1 points z_i in sE ∩ (E + a) give
// x_i = z_i / s and y_i = z_i - a in E with ||y_i - y_j|| = r ||x_i - x_j||.
// The translation maximizer guarantees |sE ∩ (E + a)| >= |E|^2 / q^d.
//
// det-similar: with rho^d = r and g in SL_d, points z_i in rho E ∩ gE give
// x_i = g^{-1} z_i, y_i = z_i / rho with det(x's) = det(z's) = r det(y's).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqsim/intersection.hpp"

namespace fqsim {

/// Index pairs (i, j), 1 <= i < j <= k+1, on which the norm relation is
/// required. Stored sorted and deduplicated.
class EdgeSet {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  EdgeSet(std::size_t k, std::vector<Edge> edges);
  static EdgeSet simplex(std::size_t k);
  /// Closed cycle through all k+1 points; k >= 2.
  static EdgeSet cycle(std::size_t k);
  static EdgeSet path(std::size_t k);
  /// Point 1 joined to every other point.
  static EdgeSet star(std::size_t k);
  static EdgeSet preset(std::string_view name, std::size_t k);

  std::size_t k() const noexcept { return k_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool operator==(const EdgeSet&) const = default;

 private:
  std::size_t k_;
  std::vector<Edge> edges_;
};

/// |E| >= sqrt(k+1) q^{d/2}, kept in the squared form |E|^2 >= (k+1) q^d.
struct SimilarityThreshold {
  std::uint64_t k_plus_1;
  std::uint64_t q_pow_d;
  /// Smallest n with n^2 >= (k+1) q^d.
  std::uint64_t min_size;
  bool met_by(std::uint64_t set_size) const noexcept;
};

SimilarityThreshold similarity_threshold(PrimeField field, std::size_t dim, std::size_t k);

struct SimilarityWitness {
  FieldElement r;
  FieldElement sqrt_r;
  Vector a;
  std::vector<Vector> xs, ys, zs;
  EdgeSet edges;
  bool verified = false;
  /// Diagnostics from the search: max_a |sqrt(r)E ∩ (E + a)| and |E|^2/q^d.
  std::uint64_t best_count = 0;
  Rational bound;
};

struct DetSimilarityWitness {
  FieldElement r;
  FieldElement rho;
  GroupElement g;
  std::vector<Vector> xs, ys, zs;
  bool verified = false;
  std::uint64_t best_count = 0;
  Rational bound;
};

struct Verification {
  bool ok = true;
  std::vector<std::string> reasons;

  void fail(std::string reason) {
    ok = false;
    reasons.push_back(std::move(reason));
  }
};

/// Throws NotASquare, ZeroDilation, InsufficientIntersection or
/// VerificationFailed. Does not require |E| to meet the threshold.
SimilarityWitness find_similar_config(const PointSet& e, FieldElement r, std::size_t k,
                                      const EdgeSet& edges);

/// Checks the witness relations; with `e`, also that every x_i, y_i is in E.
Verification verify_similarity(const SimilarityWitness& w, const PointSet* e = nullptr);

struct DetSearchOptions {
  std::uint64_t enumeration_cap = kEnumerationCap;
  unsigned jobs = 1;
};

/// Throws InvalidArgument (k < d), ZeroDilation, NotADthPower, OriginInSet,
/// InsufficientIntersection, EnumerationCapExceeded or VerificationFailed.
DetSimilarityWitness find_det_similar(const PointSet& e, FieldElement r, std::size_t k,
                                      const DetSearchOptions& options = {});

Verification verify_det_similarity(const DetSimilarityWitness& w, const PointSet* e = nullptr);

/// All increasing index tuples i_1 < ... < i_m over [0, n).
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t m);

struct SphereReport {
  IntersectionReport intersection;
  std::uint64_t sphere_size = 0;
  std::size_t k = 0;
  /// |E||H| >= (k+1)|sphere|.
  bool hypothesis_met = false;
  /// |E||H| >= (k+1) q^{d-1}, the hypothesis with the nominal sphere size.
  bool nominal_hypothesis_met = false;
  /// max >= k+1 whenever hypothesis_met (and the action is transitive).
  bool conclusion_held = true;
};

struct SphereOptions {
  std::uint64_t enumeration_cap = kEnumerationCap;
  unsigned jobs = 1;
};

/// O_d acting on {x : ||x|| = radius}. Throws NotOnSphere when E or H leaves
/// the sphere.
SphereReport sphere_experiment(PrimeField field, std::size_t dim, FieldElement radius,
                               const PointSet& e, const PointSet& h, std::size_t k,
                               const SphereOptions& options = {});

}  // namespace fqsim
