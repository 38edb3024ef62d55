#include "rsc/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace rsc {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_significant(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

nlohmann::json rounded(const nlohmann::json& j) {
  if (j.is_number_float()) {
    double v = j.get<double>();
    // JSON has no infinities; they are written as null.
    if (!std::isfinite(v)) return nullptr;
    return round_significant(v);
  }
  if (j.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : j) out.push_back(rounded(e));
    return out;
  }
  if (j.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value());
    return out;
  }
  return j;
}

namespace {

// Floats are written with format_number; everything else uses the library's
// own serializer. Object keys come out sorted, as nlohmann stores them.
void write(std::ostringstream& os, const nlohmann::json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) {
      os << "null";
      return;
    }
    std::string s = format_number(v);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    os << s;
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
      return;
    }
    os << "[\n";
    for (size_t i = 0; i < j.size(); ++i) {
      os << pad;
      write(os, j[i], depth + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << close << ']';
  } else if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      os << pad << nlohmann::json(it.key()).dump() << ": ";
      write(os, it.value(), depth + 1);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << close << '}';
  } else {
    os << j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::ostringstream os;
  write(os, j, 0);
  return os.str();
}

std::string curve_csv(const std::vector<SupCurvePoint>& curve) {
  std::ostringstream os;
  os << kCurveCsvHeader << '\n';
  for (const auto& p : curve)
    os << format_number(p.a) << ',' << format_number(p.estimate) << ',' << format_number(p.certificate) << '\n';
  return os.str();
}

nlohmann::json curve_json(const std::vector<SupCurvePoint>& curve) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : curve) {
    nlohmann::json cert = std::isfinite(p.certificate) ? nlohmann::json(p.certificate) : nlohmann::json();
    rows.push_back({{"a", p.a}, {"raw", p.raw}, {"estimate", p.estimate}, {"certificate", cert}});
  }
  return rows;
}

}  // namespace rsc
