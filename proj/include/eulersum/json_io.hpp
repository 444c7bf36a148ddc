#pragma once

#include <json.hpp>

#include "eulersum/lincomb.hpp"

namespace eulersum {

/// [{"factors": ["z(2)", "z(3)", "z(3)"], "coeff": "-1/2"}, ...]; the unit
/// term has no factors.
nlohmann::json lincomb_to_json(const LinComb& x);

/// Inverse of lincomb_to_json. Accepts integer coefficients as numbers.
/// Throws ParseError.
LinComb lincomb_from_json(const nlohmann::json& j);

}  // namespace eulersum
