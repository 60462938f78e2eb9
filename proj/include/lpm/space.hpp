#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lpm/exponent.hpp"

namespace lpm {

// Finite point set with strictly positive weights (the measure mu).
struct FiniteMeasureSpace {
  std::vector<std::string> labels;
  std::vector<double> weights;

  static FiniteMeasureSpace counting(int n, const std::string& prefix = "");
  static FiniteMeasureSpace weighted(std::vector<double> w, const std::string& prefix = "");

  int dim() const { return static_cast<int>(labels.size()); }
  void validate() const;

  friend bool operator==(const FiniteMeasureSpace& a, const FiniteMeasureSpace& b) {
    return a.labels == b.labels && a.weights == b.weights;
  }
  friend bool operator!=(const FiniteMeasureSpace& a, const FiniteMeasureSpace& b) {
    return !(a == b);
  }
};

// Product measure space, outer factor major (matches Kronecker layout).
FiniteMeasureSpace product(const FiniteMeasureSpace& a, const FiniteMeasureSpace& b);
// Disjoint union, parts in order.
FiniteMeasureSpace concat(const std::vector<FiniteMeasureSpace>& parts);

// L^p(mu) descriptor: the space plus the Holder pair governing its norms.
struct LpSpace {
  FiniteMeasureSpace space;
  PExponent exp;

  int dim() const { return space.dim(); }

  friend bool operator==(const LpSpace& a, const LpSpace& b) {
    return a.space == b.space && a.exp == b.exp;
  }
  friend bool operator!=(const LpSpace& a, const LpSpace& b) { return !(a == b); }
};

struct LpVector {
  FiniteMeasureSpace space;
  Eigen::VectorXcd entries;
};

// Weighted p-norm (sum |xi|^p mu)^{1/p}; e = inf gives the sup over the support.
double vec_norm(const Eigen::VectorXcd& entries, const std::vector<double>& weights,
                const Exponent& e);
double vec_norm(const LpVector& v, const Exponent& e);

}  // namespace lpm
