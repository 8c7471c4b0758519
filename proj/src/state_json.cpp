#include "twoatom/state_json.hpp"

namespace twoatom {

nlohmann::json matrix_to_json(const Matrix4& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return {{"basis", kCanonicalBasisTag}, {"re", std::move(re)}, {"im", std::move(im)}};
}

nlohmann::json state_to_json(const DensityMatrix4& rho) { return matrix_to_json(rho.matrix()); }

namespace {

const nlohmann::json& numeric_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorCode::Format, std::string("missing field '") + key + "'");
  const auto& arr = doc.at(key);
  if (!arr.is_array() || arr.size() != 16)
    throw Error(ErrorCode::Format, std::string("field '") + key + "' must be an array of 16 numbers");
  for (const auto& v : arr)
    if (!v.is_number())
      throw Error(ErrorCode::Format, std::string("field '") + key + "' contains a non-number");
  return arr;
}

}  // namespace

DensityMatrix4 state_from_json(const nlohmann::json& doc, const Tolerances& tol) {
  if (!doc.is_object()) throw Error(ErrorCode::Format, "state document must be a JSON object");
  if (!doc.contains("basis") || doc.at("basis") != kCanonicalBasisTag)
    throw Error(ErrorCode::Format, std::string("field 'basis' must be \"") + kCanonicalBasisTag + "\"");
  const auto& re = numeric_array(doc, "re");
  const auto& im = numeric_array(doc, "im");
  Matrix4 m;
  for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = Complex{re[k].get<double>(), im[k].get<double>()};
  return validate_density(m, tol);
}

DensityMatrix4 state_from_string(const std::string& text, const Tolerances& tol) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Format, std::string("invalid JSON: ") + e.what());
  }
  return state_from_json(doc, tol);
}

}  // namespace twoatom
