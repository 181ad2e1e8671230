#pragma once

#include <filesystem>
#include <string_view>

#include "acmdm/field.hpp"
#include "acmdm/phase.hpp"

namespace acmdm {

// Charge sets: {"charges": [{"x": <num>, "y": <num>, "lambda": <num>}, ...]}
// Paths:       {"closed": <bool>, "vertices": [[x, y], ...]}
//
// Malformed JSON, schema violations and invalid contents (duplicate charge
// positions, too few vertices) all raise Error{Parse}.

FieldConfig parse_charges(std::string_view json_text);
PolylinePath parse_path(std::string_view json_text);

FieldConfig load_charges(const std::filesystem::path& file);
PolylinePath load_path(const std::filesystem::path& file);

}  // namespace acmdm
