#include "lpm/linop.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace lpm {

void LinOp::validate() const {
  source.space.validate();
  target.space.validate();
  if (mat.rows() != target.dim() || mat.cols() != source.dim())
    throw std::invalid_argument("LinOp: matrix shape does not match source/target dimensions");
  if (!mat.allFinite()) throw std::invalid_argument("LinOp: matrix entries must be finite");
}

LinOp make_op(LpSpace source, LpSpace target, Eigen::MatrixXcd m) {
  LinOp t{std::move(source), std::move(target), std::move(m)};
  t.validate();
  return t;
}

LinOp identity_op(const LpSpace& s) {
  return make_op(s, s, Eigen::MatrixXcd::Identity(s.dim(), s.dim()));
}

LinOp zero_op(const LpSpace& source, const LpSpace& target) {
  return make_op(source, target, Eigen::MatrixXcd::Zero(target.dim(), source.dim()));
}

LinOp compose(const LinOp& a, const LinOp& b) {
  if (b.target != a.source)
    throw std::invalid_argument("compose: inner descriptors do not match");
  return make_op(b.source, a.target, a.mat * b.mat);
}

LinOp add(const LinOp& a, const LinOp& b) {
  if (a.source != b.source || a.target != b.target)
    throw std::invalid_argument("add: descriptors do not match");
  return make_op(a.source, a.target, a.mat + b.mat);
}

LinOp sub(const LinOp& a, const LinOp& b) {
  if (a.source != b.source || a.target != b.target)
    throw std::invalid_argument("sub: descriptors do not match");
  return make_op(a.source, a.target, a.mat - b.mat);
}

LinOp scale(std::complex<double> z, const LinOp& a) {
  return make_op(a.source, a.target, z * a.mat);
}

LinOp kron(const LinOp& a, const LinOp& b) {
  if (a.source.exp != b.source.exp || a.target.exp != b.target.exp ||
      a.source.exp != a.target.exp)
    throw std::invalid_argument("kron: operators must share one PExponent");
  LpSpace src{product(a.source.space, b.source.space), a.source.exp};
  LpSpace tgt{product(a.target.space, b.target.space), a.target.exp};
  Eigen::MatrixXcd m = Eigen::kroneckerProduct(a.mat, b.mat);
  return make_op(std::move(src), std::move(tgt), std::move(m));
}

Eigen::VectorXcd apply(const LinOp& t, const Eigen::VectorXcd& xi) {
  if (xi.size() != t.source.dim()) throw std::invalid_argument("apply: vector dimension mismatch");
  return t.mat * xi;
}

double entrywise_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("entrywise_residual: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double exact_tol(double max_magnitude) { return 1e-12 * (1.0 + max_magnitude); }

}  // namespace lpm
