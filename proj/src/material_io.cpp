#include "rayleigh/material_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "rayleigh/error.hpp"

namespace rayleigh {

MaterialCoefficients parse_material_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SolverError(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw SolverError(ErrorCode::ParseError, "material file must hold a JSON object");

  std::map<std::string, double> raw;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw SolverError(ErrorCode::ParseError, "value of '" + key + "' is not a number");
    raw[key] = value.get<double>();
  }
  return validate_coefficients(raw);
}

MaterialCoefficients load_material(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_material_json(buf.str());
}

std::string material_to_json(const MaterialCoefficients& mat) {
  nlohmann::ordered_json doc;
  for (auto name : kCoefficientNames) doc[std::string(name)] = coefficient(mat, name);
  return doc.dump(2);
}

}  // namespace rayleigh
