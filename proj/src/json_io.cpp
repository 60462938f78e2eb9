#include "lpm/json_io.hpp"

#include <stdexcept>

namespace lpm {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: entries length mismatch");
  Eigen::MatrixXcd m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index jj = 0; jj < cols; ++jj, ++k)
      m(i, jj) = std::complex<double>(entries[k].at(0).get<double>(),
                                      entries[k].at(1).get<double>());
  return m;
}

json space_to_json(const FiniteMeasureSpace& s) {
  return json{{"labels", s.labels}, {"weights", s.weights}};
}

FiniteMeasureSpace space_from_json(const json& j) {
  FiniteMeasureSpace s;
  s.labels = j.at("labels").get<std::vector<std::string>>();
  s.weights = j.at("weights").get<std::vector<double>>();
  s.validate();
  return s;
}

json lpspace_to_json(const LpSpace& s) {
  return json{{"space", space_to_json(s.space)}, {"p", s.exp.p}};
}

LpSpace lpspace_from_json(const json& j) {
  return LpSpace{space_from_json(j.at("space")), PExponent::from_p(j.at("p").get<double>())};
}

json linop_to_json(const LinOp& t) {
  return json{{"source", lpspace_to_json(t.source)},
              {"target", lpspace_to_json(t.target)},
              {"matrix", matrix_to_json(t.mat)}};
}

LinOp linop_from_json(const json& j) {
  return make_op(lpspace_from_json(j.at("source")), lpspace_from_json(j.at("target")),
                 matrix_from_json(j.at("matrix")));
}

}  // namespace lpm
