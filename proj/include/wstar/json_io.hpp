#pragma once

#include <json.hpp>

#include "wstar/element.hpp"

namespace wstar {

using json = nlohmann::json;

/// {"shape":[..],"backend":"f64"|"qq_i","blocks":[[[[re,im],...],...],...]}
json element_to_json(const Element& x);
Element element_from_json(const json& j);

json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);

json shape_to_json(const Shape& s);
Shape shape_from_json(const json& j);

}  // namespace wstar
