#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nldist/analysis.hpp"
#include "nldist/box.hpp"
#include "nldist/cglmp.hpp"
#include "nldist/distillation.hpp"
#include "nldist/wiring.hpp"

namespace nldist {

// Box: { "d": int, "p": [x][y][a][b] }
nlohmann::json box_to_json(const Box& box);
Box box_from_json(const nlohmann::json& j, double tol = kInvariantTol);

// Wiring: { "d": int, "fa": [x][a1], "fb": [y][b1], "ga": [a1][a2], "gb": [b1][b2] }
nlohmann::json wiring_to_json(const WiringSpec& spec);
WiringSpec wiring_from_json(const nlohmann::json& j);

nlohmann::json cglmp_to_json(const CglmpReport& report);
nlohmann::json distillation_to_json(const DistillationResult& result, bool include_box);

Box read_box_file(const std::string& path, double tol = kInvariantTol);
WiringSpec read_wiring_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

// 12 significant digits.
std::string format_decimal(double v);

void write_efficiency_header(std::ostream& os);
void write_efficiency_row(std::ostream& os, const EfficiencyRow& row);
void write_region_header(std::ostream& os);
void write_region_row(std::ostream& os, const RegionPoint& row);
void write_trajectory_header(std::ostream& os);
void write_trajectory_row(std::ostream& os, const IterationRow& row);

}  // namespace nldist
