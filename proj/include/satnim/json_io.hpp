#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "satnim/formulas.hpp"
#include "satnim/games.hpp"
#include "satnim/saturation.hpp"
#include "satnim/solver.hpp"

// JSON views of the library's result types. Kept out of the core headers so
// they stay light.

namespace satnim {

inline nlohmann::json table_to_json(const GrundyTable& table,
                                    std::string_view game,
                                    const std::optional<std::string>& base) {
  nlohmann::json j;
  j["bounds"] = table.bounds();
  j["base"] = base ? nlohmann::json(*base) : nlohmann::json(nullptr);
  j["game"] = game;
  j["values"] = table.raw_values();
  j["absent"] = GrundyTable::kAbsent;
  return j;
}

inline nlohmann::json report_to_json(const SaturationReport& report,
                                     std::string_view check,
                                     const Base& base) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.sg1_violations)
    violations.push_back({{"x", v.x}, {"detail", {{"move", v.move}}}});
  for (const auto& v : report.sg2_violations)
    violations.push_back({{"x", v.x}, {"detail", {{"target", v.target}}}});
  return nlohmann::json{{"check", check},
                        {"base", base.to_string()},
                        {"bounds", report.checked_box},
                        {"verdict", report.verdict},
                        {"violations", violations},
                        {"truncated", report.truncated}};
}

inline nlohmann::json move_to_json(const MoveConstruction& mc,
                                   const Base& base) {
  return nlohmann::json{{"move", mc.move},
                        {"resulting", mc.resulting},
                        {"case", construction_case_name(mc.case_tag)},
                        {"weight", weight(mc.move)},
                        {"phi_after", phi(mc.resulting, base)}};
}

}  // namespace satnim
