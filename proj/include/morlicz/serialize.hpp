#pragma once

#include <string>

#include <json.hpp>

#include "morlicz/generation.hpp"
#include "morlicz/instance.hpp"
#include "morlicz/musielak.hpp"
#include "morlicz/orlicz.hpp"

namespace morlicz {

// JSON shapes:
//   PiecewiseOrlicz  {"breakpoints": [[t, v], ...], "tail_slope": num | "inf"}
//   PowerOrlicz      {"power": p, "coefficient": c}
//   MusielakSpace    {"functions": [...], "normalized": bool}
//   Instance         {"n", "N", "matrix": [[row], ...], "x", "seed", "kind"}
//   VerifyReport     {"theorem", "n", "A", "L", "c_low", "c_high",
//                     "pass", "method", "seed"}
// Parsers validate through the type constructors, so malformed data fails
// with the same exceptions as malformed direct construction.

nlohmann::json to_json(const PiecewiseOrlicz& f);
nlohmann::json to_json(const PowerOrlicz& f);
nlohmann::json to_json(const OrliczFunction& f);
nlohmann::json to_json(const MusielakSpace& space);
nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const VerifyReport& report);

PiecewiseOrlicz piecewise_from_json(const nlohmann::json& j);
OrliczFunction function_from_json(const nlohmann::json& j);
MusielakSpace space_from_json(const nlohmann::json& j);
Instance instance_from_json(const nlohmann::json& j);
VerifyReport report_from_json(const nlohmann::json& j);

std::string report_csv_header();
std::string report_csv_row(const VerifyReport& report);

}  // namespace morlicz
