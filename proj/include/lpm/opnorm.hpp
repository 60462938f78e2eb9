#pragma once

#include <cstdint>
#include <optional>

#include "lpm/linop.hpp"

namespace lpm {

// Certified interval for a p->p operator norm.
struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;

  NormBracket() = default;
  NormBracket(double lo, double up);
  double width() const { return upper - lower; }
  double mid() const { return 0.5 * (lower + upper); }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

// Source dimension cap for the brute-force bracket oracle.
int opnorm_dim_cap();

// Lower bound for sup_{|xi|_p = 1} |T xi|_p via multistart duality-map power
// ascent (coordinate starts plus seeded sphere samples). Deterministic given
// the seed; nondecreasing in `restarts`. Exact closed form at p = 1.
// The ascent objective is monotone by construction and asserted per step.
double opnorm_lower(const LinOp& t, int restarts = 16, std::uint64_t seed = 1);

// Certified bracket. Lower from ascent plus branch-and-bound incumbents;
// upper from the smaller of a Riesz-Thorin interpolation bound (closed-form
// L^1 / L^2 / L^inf endpoint norms) and an interval branch-and-bound over the
// unit sphere whose slack comes from matrix entry magnitudes and box spacing.
// The bracket tightens as grid_resolution grows. Throws when the source
// dimension exceeds the oracle cap.
NormBracket opnorm_bracket(const LinOp& t, int grid_resolution = 64);

// Interpolation upper bound alone; valid in any dimension.
double opnorm_upper_cheap(const LinOp& t);

// Exact p->p norm when a closed form applies: p = 1, diagonal matrices, or a
// single nonzero row / column after weight folding. nullopt otherwise.
std::optional<double> opnorm_closed_form(const LinOp& t);

// Best available certified bracket at any dimension: closed form when one
// exists, the grid/branch-and-bound oracle below the dimension cap, and
// (ascent, interpolation) above it.
NormBracket opnorm_bracket_auto(const LinOp& t, int grid_resolution = 64);

}  // namespace lpm
