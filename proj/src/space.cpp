#include "lpm/space.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace lpm {

FiniteMeasureSpace FiniteMeasureSpace::counting(int n, const std::string& prefix) {
  return weighted(std::vector<double>(static_cast<std::size_t>(n), 1.0), prefix);
}

FiniteMeasureSpace FiniteMeasureSpace::weighted(std::vector<double> w, const std::string& prefix) {
  FiniteMeasureSpace s;
  s.labels.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) s.labels.push_back(prefix + std::to_string(i + 1));
  s.weights = std::move(w);
  s.validate();
  return s;
}

void FiniteMeasureSpace::validate() const {
  if (labels.size() != weights.size())
    throw std::invalid_argument("FiniteMeasureSpace: labels/weights size mismatch");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("FiniteMeasureSpace: weights must be positive and finite");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument("FiniteMeasureSpace: labels must be distinct");
}

FiniteMeasureSpace product(const FiniteMeasureSpace& a, const FiniteMeasureSpace& b) {
  FiniteMeasureSpace s;
  s.labels.reserve(static_cast<std::size_t>(a.dim()) * b.dim());
  s.weights.reserve(s.labels.capacity());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      s.labels.push_back(a.labels[i] + ":" + b.labels[j]);
      s.weights.push_back(a.weights[i] * b.weights[j]);
    }
  return s;
}

FiniteMeasureSpace concat(const std::vector<FiniteMeasureSpace>& parts) {
  FiniteMeasureSpace s;
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (int i = 0; i < parts[k].dim(); ++i) {
      s.labels.push_back(std::to_string(k + 1) + "." + parts[k].labels[i]);
      s.weights.push_back(parts[k].weights[i]);
    }
  s.validate();
  return s;
}

double vec_norm(const Eigen::VectorXcd& entries, const std::vector<double>& weights,
                const Exponent& e) {
  if (static_cast<std::size_t>(entries.size()) != weights.size())
    throw std::invalid_argument("vec_norm: entries/weights size mismatch");
  if (e.is_infinite()) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < entries.size(); ++i) m = std::max(m, std::abs(entries[i]));
    return m;
  }
  const double p = e.value();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < entries.size(); ++i)
    acc += std::pow(std::abs(entries[i]), p) * weights[static_cast<std::size_t>(i)];
  return std::pow(acc, 1.0 / p);
}

double vec_norm(const LpVector& v, const Exponent& e) {
  return vec_norm(v.entries, v.space.weights, e);
}

}  // namespace lpm
