#pragma once

// Deterministic serialization: every floating value is written with 12
// significant digits, so identical inputs give byte-identical output.

#include <json.hpp>

#include <string>
#include <vector>

#include "rsc/extremal.hpp"

namespace rsc {

std::string format_number(double x);  // "%.12g", "inf", "-inf", "nan"
double round_significant(double x);    // round to 12 significant digits
// Copy of j with every floating value rounded.
nlohmann::json rounded(const nlohmann::json& j);
std::string dump_json(const nlohmann::json& j);

inline constexpr const char* kCurveCsvHeader = "a,estimate,certificate";
std::string curve_csv(const std::vector<SupCurvePoint>& curve);
nlohmann::json curve_json(const std::vector<SupCurvePoint>& curve);

}  // namespace rsc
