#pragma once

#include <filesystem>
#include <string>

#include "rayleigh/material.hpp"

namespace rayleigh {

/// Parses a JSON object with the 13 lowercase coefficient keys. Malformed
/// JSON or non-numeric values raise ParseError; absent keys MissingField.
MaterialCoefficients parse_material_json(const std::string& text);

MaterialCoefficients load_material(const std::filesystem::path& path);

std::string material_to_json(const MaterialCoefficients& mat);

}  // namespace rayleigh
