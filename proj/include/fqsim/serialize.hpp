#pragma once

// JSON forms of witnesses and reports. Key names are part of the CLI
// contract:
//   similarity witness: type, q, d, k, r, sqrt_r, a, xs, ys, zs, edges, verified
//   det witness:        type, q, d, k, r, rho, g, xs, ys, zs, verified
//   intersection:       best_g, best_count, bound_num, bound_den,
//                       double_count_total, transitive

#include <exception>

#include <json.hpp>

#include "fqsim/configurations.hpp"

namespace fqsim {

using json = nlohmann::json;

inline constexpr const char* kLibraryVersion = FQSIM_VERSION;

json to_json(const Vector& v);
json to_json(const std::vector<Vector>& vs);
json to_json(const PointSet& set);
json to_json(const Matrix& m);
json to_json(const GroupElement& g);
json to_json(const IntersectionReport& report, bool with_histogram = false);
json to_json(const DoubleCountCheck& check);
json to_json(const SimilarityWitness& w);
json to_json(const DetSimilarityWitness& w);
json to_json(const SphereReport& report);
json to_json(const Verification& v);

Vector vector_from_json(PrimeField field, const json& j);
GroupElement group_element_from_json(PrimeField field, const json& j);
SimilarityWitness similarity_witness_from_json(const json& j);
DetSimilarityWitness det_witness_from_json(const json& j);

/// {"code": ..., "message": ...} plus extra fields for some error kinds.
json error_to_json(const std::exception& e);

/// 0 success, 1 no witness below the threshold, 2 bound violated or
/// verification failed, 3 input error, 4 cap exceeded.
int exit_code_for(Errc code) noexcept;

}  // namespace fqsim
