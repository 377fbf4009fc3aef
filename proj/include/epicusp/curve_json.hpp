#pragma once

#include <string>

#include "json.hpp"

#include "epicusp/curve.hpp"

namespace epicusp {

/// {"terms":[{"freq":int,"w_re":float,"w_im":float}, ...]}
nlohmann::json curve_to_json(const CurveSpec& spec);

/// Inverse of curve_to_json. Throws std::invalid_argument on schema errors.
CurveSpec curve_from_json(const nlohmann::json& doc);

CurveSpec parse_curve_json(const std::string& text);

}  // namespace epicusp
