#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "p1/integrator.hpp"
#include "p1/special_integrals.hpp"

namespace p1 {

// 15 significant digits, '.' decimal, independent of locale.
std::string fmt15(double x);
// Same rounding, as a JSON number (null when non-finite).
nlohmann::json num15(double x);

std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

nlohmann::json to_json(const ConstantBundle& b);
nlohmann::json to_json(const Event& e);
nlohmann::json to_json(const Trajectory& t);

// x,y,dy on n points strictly inside the interval of existence (dense trajectories only).
void write_trajectory_csv(std::ostream& os, const Trajectory& t, int n = 400, double margin = 1e-2);

}  // namespace p1
