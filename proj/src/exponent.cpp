#include "lpm/exponent.hpp"

#include <cmath>

namespace lpm {

Exponent holder_conjugate(double p) {
  if (!std::isfinite(p) || !(p >= 1.0))
    throw std::invalid_argument("holder_conjugate: p must be finite and >= 1");
  if (p == 1.0) return Exponent::infinite();
  return Exponent::finite(p / (p - 1.0));
}

}  // namespace lpm
