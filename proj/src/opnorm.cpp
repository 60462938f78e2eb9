#include "lpm/opnorm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

namespace lpm {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

double pnorm(const VectorXcd& v, double p) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), p);
  return std::pow(acc, 1.0 / p);
}

// phase(z) |z|^{r-1}, the norming vector for the r-norm up to scale.
VectorXcd dual_vec(const VectorXcd& z, double r) {
  VectorXcd out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double a = std::abs(z[i]);
    out[i] = (a == 0.0) ? cd(0.0, 0.0) : (z[i] / a) * std::pow(a, r - 1.0);
  }
  return out;
}

// Weighted p->p norm of T equals the unweighted norm of Wt^{1/p} T Ws^{-1/p}.
MatrixXcd fold_weights(const LinOp& t, double p) {
  MatrixXcd a = t.mat;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    a.row(i) *= std::pow(t.target.space.weights[static_cast<std::size_t>(i)], 1.0 / p);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    a.col(j) /= std::pow(t.source.space.weights[static_cast<std::size_t>(j)], 1.0 / p);
  return a;
}

// ||T||_{L^1(mu)} = max_j (sum_i |T_ij| wt_i) / ws_j, exact.
double norm_l1(const LinOp& t) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < t.mat.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < t.mat.rows(); ++i)
      s += std::abs(t.mat(i, j)) * t.target.space.weights[static_cast<std::size_t>(i)];
    best = std::max(best, s / t.source.space.weights[static_cast<std::size_t>(j)]);
  }
  return best;
}

// ||T||_{L^inf(mu)} = max_i sum_j |T_ij|; the point weights drop out.
double norm_linf(const MatrixXcd& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).cwiseAbs().sum());
  return best;
}

double colsum_norm(const MatrixXcd& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::max(best, m.col(j).cwiseAbs().sum());
  return best;
}

// Certified upper bound on sigma_max(A): lambda_max(A^H A) <= (tr (A^H A)^{2^K})^{1/2^K},
// evaluated with scaled repeated squaring.
double sigma_max_upper(const MatrixXcd& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  MatrixXcd m = (a.rows() >= a.cols()) ? MatrixXcd(a.adjoint() * a) : MatrixXcd(a * a.adjoint());
  double logscale = 0.0;
  const int squarings = 16;
  for (int k = 0; k < squarings; ++k) {
    const double s = m.cwiseAbs().maxCoeff();
    if (!(s > 0.0)) return 0.0;
    m /= s;
    logscale = 2.0 * (logscale + std::log(s));
    m = (m * m).eval();
  }
  double tr = std::max(m.trace().real(), m.cwiseAbs().maxCoeff());
  const double log_lambda = (std::log(tr) + logscale) / std::pow(2.0, squarings);
  return std::sqrt(std::exp(log_lambda)) * (1.0 + 1e-10);
}

// Riesz-Thorin bound from the (1, 2, inf) endpoint norms.
double interp_upper(const LinOp& t, double p) {
  const double n1 = norm_l1(t);
  const double ninf = norm_linf(t.mat);
  if (p == 1.0) return n1;
  double best = std::pow(n1, 1.0 / p) * std::pow(ninf, 1.0 - 1.0 / p);
  const double s2 = sigma_max_upper(fold_weights(t, 2.0));
  if (p <= 2.0) {
    const double th = 2.0 / p - 1.0;
    best = std::min(best, std::pow(n1, th) * std::pow(s2, 1.0 - th));
  }
  if (p >= 2.0) {
    const double th = 2.0 / p;
    best = std::min(best, std::pow(s2, th) * std::pow(ninf, 1.0 - th));
  }
  return best;
}

double ascent_run(const MatrixXcd& a, double p, VectorXcd xi) {
  const double q = p / (p - 1.0);
  double n = pnorm(xi, p);
  if (!(n > 0.0)) return 0.0;
  xi /= n;
  double prev = -1.0;
  for (int it = 0; it < 500; ++it) {
    const VectorXcd z = a * xi;
    const double g = pnorm(z, p);
    if (g < 1e-300) return std::max(prev, 0.0);
    if (prev >= 0.0) {
      if (g < prev * (1.0 - 1e-9))
        throw std::logic_error("opnorm ascent: objective decreased between iterations");
      if (std::abs(g - prev) <= 1e-12 * g) return g;
    }
    prev = g;
    const VectorXcd w = a.adjoint() * dual_vec(z, p);
    xi = dual_vec(w, q);
    n = pnorm(xi, p);
    if (!(n > 0.0)) return g;
    xi /= n;
  }
  return prev;
}

double multistart_ascent(const MatrixXcd& a, double p, int restarts, std::uint64_t seed) {
  const Eigen::Index n = a.cols();
  double best = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    VectorXcd e = VectorXcd::Zero(n);
    e[j] = 1.0;
    best = std::max(best, ascent_run(a, p, e));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < restarts; ++r) {
    VectorXcd xi(n);
    for (Eigen::Index i = 0; i < n; ++i) xi[i] = cd(gauss(rng), gauss(rng));
    best = std::max(best, ascent_run(a, p, xi));
  }
  return best;
}

// ---- interval branch-and-bound over the unit p-sphere ----------------------

constexpr int kMaxBoxDims = 2 * 6;  // oracle cap, complex coordinates split in two

enum class BnbMode { NonNeg, Real, Complex };

struct BnbNode {
  std::array<double, kMaxBoxDims> lo{}, hi{};
  double fub = 0.0;
};

struct NodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const { return a.fub < b.fub; }
};

struct BnbProblem {
  BnbMode mode = BnbMode::NonNeg;
  MatrixXd re, im;  // im used only in Complex mode
  double p = 2.0;
  VectorXd row_cap;  // per-row Holder cap ||row||_q
  int n = 0;

  int box_dims() const { return mode == BnbMode::Complex ? 2 * n : n; }

  void coord_mod_range(const BnbNode& b, int j, double& mmin, double& mmax) const {
    if (mode == BnbMode::Complex) {
      const double lr = b.lo[2 * j], ur = b.hi[2 * j];
      const double li = b.lo[2 * j + 1], ui = b.hi[2 * j + 1];
      const double mr = (lr <= 0.0 && 0.0 <= ur) ? 0.0 : std::min(std::abs(lr), std::abs(ur));
      const double mi = (li <= 0.0 && 0.0 <= ui) ? 0.0 : std::min(std::abs(li), std::abs(ui));
      mmin = std::hypot(mr, mi);
      mmax = std::hypot(std::max(std::abs(lr), std::abs(ur)), std::max(std::abs(li), std::abs(ui)));
    } else if (mode == BnbMode::Real) {
      const double l = b.lo[j], u = b.hi[j];
      mmin = (l <= 0.0 && 0.0 <= u) ? 0.0 : std::min(std::abs(l), std::abs(u));
      mmax = std::max(std::abs(l), std::abs(u));
    } else {
      mmin = b.lo[j];
      mmax = b.hi[j];
    }
  }

  bool feasible(const BnbNode& b) const {
    double accmin = 0.0, accmax = 0.0;
    for (int j = 0; j < n; ++j) {
      double mmin, mmax;
      coord_mod_range(b, j, mmin, mmax);
      accmin += std::pow(mmin, p);
      accmax += std::pow(mmax, p);
    }
    return std::pow(accmin, 1.0 / p) <= 1.0 + 1e-12 && std::pow(accmax, 1.0 / p) >= 1.0 - 1e-12;
  }

  double bound(const BnbNode& b) const {
    const Eigen::Index m = re.rows();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      double mi = 0.0;
      if (mode == BnbMode::NonNeg) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += re(i, j) * b.hi[j];
        mi = s;
      } else if (mode == BnbMode::Real) {
        double slo = 0.0, shi = 0.0;
        for (int j = 0; j < n; ++j) {
          const double a = re(i, j);
          slo += std::min(a * b.lo[j], a * b.hi[j]);
          shi += std::max(a * b.lo[j], a * b.hi[j]);
        }
        mi = std::max(std::abs(slo), std::abs(shi));
      } else {
        double rlo = 0.0, rhi = 0.0, ilo = 0.0, ihi = 0.0;
        for (int j = 0; j < n; ++j) {
          const double ar = re(i, j), ai = im(i, j);
          const double xr0 = b.lo[2 * j], xr1 = b.hi[2 * j];
          const double xi0 = b.lo[2 * j + 1], xi1 = b.hi[2 * j + 1];
          rlo += std::min(ar * xr0, ar * xr1) - std::max(ai * xi0, ai * xi1);
          rhi += std::max(ar * xr0, ar * xr1) - std::min(ai * xi0, ai * xi1);
          ilo += std::min(ai * xr0, ai * xr1) + std::min(ar * xi0, ar * xi1);
          ihi += std::max(ai * xr0, ai * xr1) + std::max(ar * xi0, ar * xi1);
        }
        mi = std::hypot(std::max(std::abs(rlo), std::abs(rhi)),
                        std::max(std::abs(ilo), std::abs(ihi)));
      }
      acc += std::pow(std::min(mi, row_cap[i]), p);
    }
    return std::pow(acc, 1.0 / p);
  }

  double eval_point(const std::array<double, kMaxBoxDims>& x) const {
    VectorXcd xi(n);
    if (mode == BnbMode::Complex)
      for (int j = 0; j < n; ++j) xi[j] = cd(x[2 * j], x[2 * j + 1]);
    else
      for (int j = 0; j < n; ++j) xi[j] = x[j];
    const double nn = pnorm(xi, p);
    if (!(nn > 1e-300)) return 0.0;
    xi /= nn;
    VectorXcd z(re.rows());
    for (Eigen::Index i = 0; i < re.rows(); ++i) {
      cd s(0.0, 0.0);
      for (int j = 0; j < n; ++j)
        s += cd(re(i, j), mode == BnbMode::Complex ? im(i, j) : 0.0) * xi[j];
      z[i] = s;
    }
    return pnorm(z, p);
  }
};

struct BnbResult {
  double lower = 0.0, upper = 0.0;
};

BnbResult bnb_sphere(const BnbProblem& pr, double best0, double target, long budget) {
  const int nd = pr.box_dims();
  BnbNode root;
  for (int k = 0; k < nd; ++k) {
    root.lo[k] = (pr.mode == BnbMode::NonNeg) ? 0.0 : -1.0;
    root.hi[k] = 1.0;
  }
  if (pr.mode != BnbMode::NonNeg) {
    // global scaling symmetry: first coordinate real and >= 0
    root.lo[0] = 0.0;
    if (pr.mode == BnbMode::Complex) {
      root.lo[1] = 0.0;
      root.hi[1] = 0.0;
    }
  }
  root.fub = pr.bound(root);

  double best = best0;
  double dropped_ub = 0.0;
  std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> queue;
  queue.push(root);

  const double min_edge = 1e-9;
  std::array<double, kMaxBoxDims> mid{};
  long pops = 0;
  double last_fub = root.fub;
  while (!queue.empty() && pops < budget) {
    const BnbNode node = queue.top();
    queue.pop();
    ++pops;
    last_fub = node.fub;
    if (node.fub <= best + target) {
      return BnbResult{best, std::max({best, node.fub, dropped_ub})};
    }
    int axis = 0;
    double w = 0.0;
    for (int k = 0; k < nd; ++k)
      if (node.hi[k] - node.lo[k] > w) {
        w = node.hi[k] - node.lo[k];
        axis = k;
      }
    if (w < min_edge) {
      dropped_ub = std::max(dropped_ub, node.fub);
      continue;
    }
    const double cut = 0.5 * (node.lo[axis] + node.hi[axis]);
    for (int side = 0; side < 2; ++side) {
      BnbNode child = node;
      (side == 0 ? child.hi : child.lo)[axis] = cut;
      if (!pr.feasible(child)) continue;
      child.fub = pr.bound(child);
      for (int k = 0; k < nd; ++k) mid[k] = 0.5 * (child.lo[k] + child.hi[k]);
      best = std::max(best, pr.eval_point(mid));
      best = std::max(best, pr.eval_point(child.hi));
      if (child.fub > best) queue.push(child);
    }
  }
  double cover = queue.empty() ? 0.0 : std::max(last_fub, queue.top().fub);
  return BnbResult{best, std::max({best, cover, dropped_ub})};
}

struct PhaseFactors {
  VectorXcd row, col;
  double defect = 0.0;
};

// Try T_ij = r_i |T_ij| c_j with unimodular r, c (then ||T|| = || |T| ||).
std::optional<PhaseFactors> phase_reduce(const MatrixXcd& t) {
  const Eigen::Index m = t.rows(), n = t.cols();
  const double scale = t.size() ? t.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return PhaseFactors{VectorXcd::Ones(m), VectorXcd::Ones(n), 0.0};
  const double thresh = 1e-13 * scale;
  VectorXcd row = VectorXcd::Zero(m), col = VectorXcd::Zero(n);
  std::vector<bool> rset(static_cast<std::size_t>(m), false);
  std::vector<bool> cset(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack;
  for (Eigen::Index j0 = 0; j0 < n; ++j0) {
    if (cset[static_cast<std::size_t>(j0)]) continue;
    col[j0] = 1.0;
    cset[static_cast<std::size_t>(j0)] = true;
    stack.push_back(m + j0);
    while (!stack.empty()) {
      const Eigen::Index v = stack.back();
      stack.pop_back();
      if (v >= m) {
        const Eigen::Index j = v - m;
        for (Eigen::Index i = 0; i < m; ++i) {
          if (std::abs(t(i, j)) <= thresh || rset[static_cast<std::size_t>(i)]) continue;
          row[i] = (t(i, j) / std::abs(t(i, j))) / col[j];
          rset[static_cast<std::size_t>(i)] = true;
          stack.push_back(i);
        }
      } else {
        const Eigen::Index i = v;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (std::abs(t(i, j)) <= thresh || cset[static_cast<std::size_t>(j)]) continue;
          col[j] = (t(i, j) / std::abs(t(i, j))) / row[i];
          cset[static_cast<std::size_t>(j)] = true;
          stack.push_back(m + j);
        }
      }
    }
  }
  for (Eigen::Index i = 0; i < m; ++i)
    if (!rset[static_cast<std::size_t>(i)]) row[i] = 1.0;
  double defect = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      defect = std::max(defect, std::abs(t(i, j) - row[i] * std::abs(t(i, j)) * col[j]));
  if (defect > 1e-10 * scale) return std::nullopt;
  return PhaseFactors{row, col, defect};
}

VectorXd row_caps(const MatrixXcd& a, double p) {
  const double q = p / (p - 1.0);
  VectorXd caps(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += std::pow(std::abs(a(i, j)), q);
    caps[i] = std::pow(acc, 1.0 / q);
  }
  return caps;
}

// max |d_i| for diagonal matrices, exact at every p.
std::optional<double> diagonal_norm(const MatrixXcd& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  double diag = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double mag = std::abs(a(i, j));
      if (i != j && mag > 0.0) return std::nullopt;
      if (i == j) diag = std::max(diag, mag);
    }
  return diag;
}

// Closed forms on the weight-folded matrix: a single nonzero column gives the
// column p-norm, a single nonzero row gives the row q-norm.
std::optional<double> thin_norm(const MatrixXcd& a, double p) {
  Eigen::Index nz_col = -1, nz_row = -1;
  int ncols = 0, nrows = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (a.col(j).cwiseAbs().maxCoeff() > 0.0) {
      nz_col = j;
      ++ncols;
    }
  if (ncols == 0) return 0.0;
  if (ncols == 1) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) acc += std::pow(std::abs(a(i, nz_col)), p);
    return std::pow(acc, 1.0 / p);
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (a.row(i).cwiseAbs().maxCoeff() > 0.0) {
      nz_row = i;
      ++nrows;
    }
  if (nrows == 1) {
    const double q = p / (p - 1.0);
    double acc = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += std::pow(std::abs(a(nz_row, j)), q);
    return std::pow(acc, 1.0 / q);
  }
  return std::nullopt;
}

void check_exponents(const LinOp& t) {
  if (t.source.exp != t.target.exp)
    throw std::invalid_argument("opnorm: source and target must carry the same PExponent");
}

}  // namespace

NormBracket::NormBracket(double lo, double up) : lower(lo), upper(up) {
  if (!(lower >= 0.0) || !(upper >= lower) || !std::isfinite(upper))
    throw std::invalid_argument("NormBracket: need 0 <= lower <= upper < inf");
}

int opnorm_dim_cap() { return 6; }

double opnorm_lower(const LinOp& t, int restarts, std::uint64_t seed) {
  t.validate();
  check_exponents(t);
  const double p = t.source.exp.p;
  if (t.mat.size() == 0) return 0.0;
  if (p == 1.0) return norm_l1(t);
  const MatrixXcd a = fold_weights(t, p);
  return multistart_ascent(a, p, restarts, seed);
}

double opnorm_upper_cheap(const LinOp& t) {
  t.validate();
  check_exponents(t);
  return interp_upper(t, t.source.exp.p);
}

std::optional<double> opnorm_closed_form(const LinOp& t) {
  t.validate();
  check_exponents(t);
  const double p = t.source.exp.p;
  if (t.mat.size() == 0) return 0.0;
  if (p == 1.0) return norm_l1(t);
  const MatrixXcd a = fold_weights(t, p);
  if (auto d = diagonal_norm(a)) return *d;
  if (auto v = thin_norm(a, p)) return *v;
  return std::nullopt;
}

NormBracket opnorm_bracket_auto(const LinOp& t, int grid_resolution) {
  if (auto v = opnorm_closed_form(t)) return NormBracket(*v, *v);
  if (t.source.dim() <= opnorm_dim_cap()) return opnorm_bracket(t, grid_resolution);
  const double lower = opnorm_lower(t, 8 + grid_resolution / 4, 1);
  return NormBracket(lower, std::max(lower, opnorm_upper_cheap(t)));
}

NormBracket opnorm_bracket(const LinOp& t, int grid_resolution) {
  t.validate();
  check_exponents(t);
  if (t.source.dim() > opnorm_dim_cap())
    throw std::invalid_argument("opnorm_bracket: source dimension exceeds the oracle cap");
  if (grid_resolution < 2) grid_resolution = 2;
  const double p = t.source.exp.p;
  if (t.mat.size() == 0 || t.mat.cwiseAbs().maxCoeff() == 0.0) return NormBracket(0.0, 0.0);
  if (p == 1.0) {
    const double v = norm_l1(t);
    return NormBracket(v, v);
  }

  const MatrixXcd a = fold_weights(t, p);
  if (auto d = diagonal_norm(a)) return NormBracket(*d, *d);
  if (auto v = thin_norm(a, p)) return NormBracket(*v, *v);

  double lower = multistart_ascent(a, p, 8 + grid_resolution / 4, 1);
  double upper = interp_upper(t, p);
  if (p == 2.0) {
    upper = std::min(upper, sigma_max_upper(a));
    return NormBracket(lower, std::max(lower, upper));
  }

  const long budget = std::min<long>(1000000L, 96L * grid_resolution * grid_resolution);
  const double target =
      std::max(1e-9, (1.0 + lower) * 0.25 / (static_cast<double>(grid_resolution) * grid_resolution));

  BnbProblem pr;
  pr.p = p;
  pr.n = static_cast<int>(a.cols());
  double upper_extra = 0.0;  // slack for phase / imaginary residue folded off the model matrix
  bool bnb_models_t = true;
  if (auto ph = phase_reduce(a)) {
    pr.mode = BnbMode::NonNeg;
    pr.re = a.cwiseAbs();
    if (ph->defect > 0.0) {
      MatrixXcd err = a;
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
          err(i, j) -= ph->row[i] * std::abs(a(i, j)) * ph->col[j];
      upper_extra = std::pow(colsum_norm(err), 1.0 / p) * std::pow(norm_linf(err), 1.0 - 1.0 / p);
      bnb_models_t = false;
    }
  } else if (a.imag().cwiseAbs().maxCoeff() <= 1e-14 * a.cwiseAbs().maxCoeff()) {
    pr.mode = BnbMode::Real;
    pr.re = a.real();
    const MatrixXcd err = MatrixXcd(cd(0.0, 1.0) * a.imag());
    if (err.cwiseAbs().maxCoeff() > 0.0) {
      upper_extra = std::pow(colsum_norm(err), 1.0 / p) * std::pow(norm_linf(err), 1.0 - 1.0 / p);
      bnb_models_t = false;
    }
  } else {
    pr.mode = BnbMode::Complex;
    pr.re = a.real();
    pr.im = a.imag();
  }
  pr.row_cap = row_caps(a, p);

  const double best0 = bnb_models_t ? lower : std::max(0.0, lower - upper_extra);
  const BnbResult bb = bnb_sphere(pr, best0, target, budget);
  if (bnb_models_t) lower = std::max(lower, bb.lower);
  upper = std::min(upper, bb.upper + upper_extra);
  return NormBracket(lower, std::max(lower, upper));
}

}  // namespace lpm
