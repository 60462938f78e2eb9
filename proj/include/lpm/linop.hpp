#pragma once

#include <Eigen/Dense>
#include <complex>

#include "lpm/space.hpp"

namespace lpm {

// Bounded operator between two finite L^p spaces, stored dense,
// target rows x source columns.
struct LinOp {
  LpSpace source;
  LpSpace target;
  Eigen::MatrixXcd mat;

  void validate() const;
};

LinOp make_op(LpSpace source, LpSpace target, Eigen::MatrixXcd m);
LinOp identity_op(const LpSpace& s);
LinOp zero_op(const LpSpace& source, const LpSpace& target);

// a after b. Inner descriptors must match exactly.
LinOp compose(const LinOp& a, const LinOp& b);
LinOp add(const LinOp& a, const LinOp& b);
LinOp sub(const LinOp& a, const LinOp& b);
LinOp scale(std::complex<double> z, const LinOp& a);

// Spatial tensor product on the product measure space; requires a common
// PExponent. (a (x) b)(xi (x) eta) = a xi (x) b eta.
LinOp kron(const LinOp& a, const LinOp& b);

Eigen::VectorXcd apply(const LinOp& t, const Eigen::VectorXcd& xi);

// max entrywise |a - b|; shapes must agree.
double entrywise_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Near-machine tolerance for algebraically exact identities:
// |delta| <= 1e-12 * (1 + largest entry magnitude).
double exact_tol(double max_magnitude);

}  // namespace lpm
