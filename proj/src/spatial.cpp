#include "lpm/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpm {

void SetTransformation::validate() const {
  source.validate();
  target.validate();
  if (map.size() != static_cast<std::size_t>(source.dim()))
    throw std::invalid_argument("SetTransformation: map size must equal source dimension");
  std::vector<bool> hit(static_cast<std::size_t>(target.dim()), false);
  for (int v : map) {
    if (v < -1 || v >= target.dim())
      throw std::invalid_argument("SetTransformation: map value out of range");
    if (v >= 0) {
      if (hit[static_cast<std::size_t>(v)])
        throw std::invalid_argument("SetTransformation: map must be injective on its domain");
      hit[static_cast<std::size_t>(v)] = true;
    }
  }
}

std::vector<int> SetTransformation::domain() const {
  std::vector<int> e;
  for (int i = 0; i < source.dim(); ++i)
    if (map[static_cast<std::size_t>(i)] >= 0) e.push_back(i);
  return e;
}

std::vector<int> SetTransformation::range() const {
  std::vector<int> f;
  for (int i = 0; i < source.dim(); ++i)
    if (map[static_cast<std::size_t>(i)] >= 0) f.push_back(map[static_cast<std::size_t>(i)]);
  return f;
}

std::vector<double> pushforward_density(const SetTransformation& s) {
  s.validate();
  std::vector<double> h;
  for (int i = 0; i < s.source.dim(); ++i) {
    const int j = s.map[static_cast<std::size_t>(i)];
    if (j < 0) continue;
    h.push_back(s.source.weights[static_cast<std::size_t>(i)] /
                s.target.weights[static_cast<std::size_t>(j)]);
  }
  return h;
}

void SpatialSystem::validate() const {
  transform.validate();
  if (F.size() != g.size())
    throw std::invalid_argument("SpatialSystem: F and g must have equal length");
  std::vector<bool> inF(static_cast<std::size_t>(transform.target.dim()), false);
  for (std::size_t k = 0; k < F.size(); ++k) {
    const int f = F[k];
    if (f < 0 || f >= transform.target.dim())
      throw std::invalid_argument("SpatialSystem: F index out of range");
    if (inF[static_cast<std::size_t>(f)])
      throw std::invalid_argument("SpatialSystem: F indices must be distinct");
    inF[static_cast<std::size_t>(f)] = true;
    if (std::abs(std::abs(g[k]) - 1.0) > 1e-12)
      throw std::invalid_argument("SpatialSystem: g must be unimodular on F");
  }
  for (int f : transform.range())
    if (!inF[static_cast<std::size_t>(f)])
      throw std::invalid_argument("SpatialSystem: ran(S) must be contained in F");
}

bool SpatialSystem::is_spatial() const {
  return F.size() == transform.range().size();
}

LinOp spatial_from_system(const SpatialSystem& sys, const PExponent& p) {
  sys.validate();
  std::vector<std::complex<double>> g_at(static_cast<std::size_t>(sys.transform.target.dim()),
                                         0.0);
  for (std::size_t k = 0; k < sys.F.size(); ++k)
    g_at[static_cast<std::size_t>(sys.F[k])] = sys.g[k];
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Zero(sys.transform.target.dim(), sys.transform.source.dim());
  for (int e = 0; e < sys.transform.source.dim(); ++e) {
    const int f = sys.transform.map[static_cast<std::size_t>(e)];
    if (f < 0) continue;
    const double h = sys.transform.source.weights[static_cast<std::size_t>(e)] /
                     sys.transform.target.weights[static_cast<std::size_t>(f)];
    m(f, e) = std::pow(h, 1.0 / p.p) * g_at[static_cast<std::size_t>(f)];
  }
  return make_op(LpSpace{sys.transform.source, p}, LpSpace{sys.transform.target, p},
                 std::move(m));
}

SpatialSystem reverse_system(const SpatialSystem& sys) {
  sys.validate();
  if (!sys.is_spatial())
    throw std::invalid_argument("reverse_system: system is semispatial, no reverse exists");
  SpatialSystem rev;
  rev.transform.source = sys.transform.target;
  rev.transform.target = sys.transform.source;
  rev.transform.map.assign(static_cast<std::size_t>(sys.transform.target.dim()), -1);
  std::vector<std::complex<double>> g_at(static_cast<std::size_t>(sys.transform.target.dim()),
                                         0.0);
  for (std::size_t k = 0; k < sys.F.size(); ++k)
    g_at[static_cast<std::size_t>(sys.F[k])] = sys.g[k];
  for (int e = 0; e < sys.transform.source.dim(); ++e) {
    const int f = sys.transform.map[static_cast<std::size_t>(e)];
    if (f < 0) continue;
    rev.transform.map[static_cast<std::size_t>(f)] = e;
    rev.F.push_back(e);
    rev.g.push_back(1.0 / g_at[static_cast<std::size_t>(f)]);  // (S^-1)_*(g)^-1 at e = S^-1 f
  }
  rev.validate();
  return rev;
}

LinOp reverse(const SpatialSystem& sys, const PExponent& p) {
  return spatial_from_system(reverse_system(sys), p);
}

std::optional<std::vector<int>> is_multiplication_idempotent(const LinOp& e, double tol) {
  if (e.mat.rows() != e.mat.cols()) return std::nullopt;
  std::vector<int> support;
  for (Eigen::Index i = 0; i < e.mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.mat.cols(); ++j) {
      if (i == j) continue;
      if (std::abs(e.mat(i, j)) > tol) return std::nullopt;
    }
    const std::complex<double> d = e.mat(i, i);
    if (std::abs(d - 1.0) <= tol)
      support.push_back(static_cast<int>(i));
    else if (std::abs(d) > tol)
      return std::nullopt;
  }
  return support;
}

SpatialClassification check_spatial_algebraic(const LinOp& s, const LinOp& t, double tol) {
  SpatialClassification out;
  const LinOp f = compose(s, t);  // on the target side
  const LinOp e = compose(t, s);  // on the source side

  const auto e_support = is_multiplication_idempotent(e, tol);
  if (!e_support) {
    out.failed_condition = "ts is not a multiplication idempotent";
    return out;
  }
  const auto f_support = is_multiplication_idempotent(f, tol);
  if (!f_support) {
    out.failed_condition = "st is not a multiplication idempotent";
    return out;
  }
  out.E = *e_support;
  out.F = *f_support;

  const double s_scale = s.mat.size() ? s.mat.cwiseAbs().maxCoeff() : 0.0;
  const double t_scale = t.mat.size() ? t.mat.cwiseAbs().maxCoeff() : 0.0;
  const double res_s = entrywise_residual(compose(compose(f, s), e).mat, s.mat);
  const double res_t = entrywise_residual(compose(compose(e, t), f).mat, t.mat);
  out.identity_residual = std::max(res_s, res_t);
  if (res_s > tol * (1.0 + s_scale)) {
    out.failed_condition = "fse != s";
    return out;
  }
  if (res_t > tol * (1.0 + t_scale)) {
    out.failed_condition = "etf != t";
    return out;
  }

  out.norm_lower_s = opnorm_lower(s);
  out.norm_lower_t = opnorm_lower(t);
  if (out.norm_lower_s > 1.0 + 1e-8) {
    out.failed_condition = "norm of s exceeds 1";
    return out;
  }
  if (out.norm_lower_t > 1.0 + 1e-8) {
    out.failed_condition = "norm of t exceeds 1";
    return out;
  }

  const bool s_is_mult = is_multiplication_idempotent(s, tol).has_value() &&
                         s.source == s.target;
  out.verdict = s_is_mult ? SpatialVerdict::MultiplicationIdempotent
                          : SpatialVerdict::SpatialPartialIsometry;
  return out;
}

nlohmann::json spatial_system_to_json(const SpatialSystem& sys) {
  nlohmann::json map = nlohmann::json::array();
  for (int e = 0; e < sys.transform.source.dim(); ++e) {
    const int f = sys.transform.map[static_cast<std::size_t>(e)];
    if (f >= 0) map.push_back({e, f});
  }
  nlohmann::json g = nlohmann::json::array();
  for (const auto& z : sys.g) g.push_back({z.real(), z.imag()});
  nlohmann::json E = nlohmann::json::array();
  for (int e : sys.transform.domain()) E.push_back(e);
  return nlohmann::json{{"E", E}, {"F", sys.F}, {"map", map}, {"g", g}};
}

SpatialSystem spatial_system_from_json(const nlohmann::json& j, const FiniteMeasureSpace& source,
                                       const FiniteMeasureSpace& target) {
  SpatialSystem sys;
  sys.transform.source = source;
  sys.transform.target = target;
  sys.transform.map.assign(static_cast<std::size_t>(source.dim()), -1);
  for (const auto& pair : j.at("map"))
    sys.transform.map.at(pair.at(0).get<std::size_t>()) = pair.at(1).get<int>();
  sys.F = j.at("F").get<std::vector<int>>();
  for (const auto& z : j.at("g"))
    sys.g.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  sys.validate();
  return sys;
}

}  // namespace lpm
