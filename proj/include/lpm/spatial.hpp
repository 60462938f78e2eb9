#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "lpm/linop.hpp"
#include "lpm/opnorm.hpp"

namespace lpm {

// Injective map from a subset E of source points into target points.
// All weights are positive, so "modulo null sets" is vacuous here; sigma-finite
// generality is deliberately out of scope.
struct SetTransformation {
  FiniteMeasureSpace source;
  FiniteMeasureSpace target;
  std::vector<int> map;  // per source index: target index, or -1 when outside E

  void validate() const;                 // shapes + injectivity
  std::vector<int> domain() const;       // E, ascending source indices
  std::vector<int> range() const;        // F = image, in domain order
};

// Finite Radon-Nikodym derivative of the pushforward: h(w) = mu(S^-1 w) / nu(w)
// for w in ran(S). Returned in the order of SetTransformation::range().
std::vector<double> pushforward_density(const SetTransformation& s);

// Quadruple (E, F, S, g): S maps E bijectively onto ran(S) subset of F, and g is a
// unimodular weight on F. Spatial when F = ran(S), semispatial otherwise.
struct SpatialSystem {
  SetTransformation transform;
  std::vector<int> F;                          // target indices, superset of the image
  std::vector<std::complex<double>> g;         // per element of F, |g| = 1

  void validate() const;
  bool is_spatial() const;  // F equals the image exactly
};

// The partial isometry xi |-> h^{1/p} S_*(xi|_E) g on F, 0 elsewhere.
// Isometric on vectors supported in E.
LinOp spatial_from_system(const SpatialSystem& sys, const PExponent& p);

// System of the reverse: (F, E, S^-1, (S^-1)_*(g)^-1). Requires a spatial system.
SpatialSystem reverse_system(const SpatialSystem& sys);
LinOp reverse(const SpatialSystem& sys, const PExponent& p);

// Support subset E when e is a 0/1 diagonal within tol; nullopt otherwise.
std::optional<std::vector<int>> is_multiplication_idempotent(const LinOp& e, double tol = 1e-10);

enum class SpatialVerdict { SpatialPartialIsometry, MultiplicationIdempotent, Neither };

struct SpatialClassification {
  SpatialVerdict verdict = SpatialVerdict::Neither;
  std::string failed_condition;          // empty on success
  std::vector<int> E, F;                 // supports of ts and st when they exist
  double identity_residual = 0.0;        // worst of |fse-s| and |etf-t|
  double norm_lower_s = 0.0, norm_lower_t = 0.0;
};

// Algebraic criterion: with f = st and e = ts, checks that e and f are
// multiplication idempotents, fse = s and etf = t entrywise within tol, and
// that the norm estimator cannot push ||s|| or ||t|| above 1. Certifies
// failure (lower bound > 1 + 1e-8), never borderline acceptance.
SpatialClassification check_spatial_algebraic(const LinOp& s, const LinOp& t, double tol = 1e-10);

nlohmann::json spatial_system_to_json(const SpatialSystem& sys);
SpatialSystem spatial_system_from_json(const nlohmann::json& j, const FiniteMeasureSpace& source,
                                       const FiniteMeasureSpace& target);

}  // namespace lpm
