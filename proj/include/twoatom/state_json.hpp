#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "twoatom/core.hpp"

namespace twoatom {

/// Basis tag written into every state file.
inline constexpr const char* kCanonicalBasisTag = "canonical-f1f2f3f4";

/// {"basis":"canonical-f1f2f3f4","re":[16 row-major],"im":[16 row-major]}
nlohmann::json state_to_json(const DensityMatrix4& rho);
nlohmann::json matrix_to_json(const Matrix4& m);

/// Parses and validates a state document. Throws Error{Format} on schema
/// problems, or the validation error of the decoded matrix.
DensityMatrix4 state_from_json(const nlohmann::json& doc, const Tolerances& tol = {});
DensityMatrix4 state_from_string(const std::string& text, const Tolerances& tol = {});

}  // namespace twoatom
