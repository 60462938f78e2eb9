#pragma once

#include <json.hpp>

#include "lpm/linop.hpp"
#include "lpm/space.hpp"

namespace lpm {

// Wire formats:
//   matrix        {rows, cols, entries: [[re, im], ...]}   entries row-major
//   measure space {labels, weights}
//   lp space      {space, p}
//   linop         {source, target, matrix}
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

nlohmann::json space_to_json(const FiniteMeasureSpace& s);
FiniteMeasureSpace space_from_json(const nlohmann::json& j);

nlohmann::json lpspace_to_json(const LpSpace& s);
LpSpace lpspace_from_json(const nlohmann::json& j);

nlohmann::json linop_to_json(const LinOp& t);
LinOp linop_from_json(const nlohmann::json& j);

}  // namespace lpm
