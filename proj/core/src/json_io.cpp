#include "subbary/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace subbary {

namespace {

using nlohmann::json;

Rat rat_from_json(const json& value, const std::string& field) {
  if (value.is_string()) {
    return rat_from_string(value.get<std::string>());
  }
  if (value.is_number_integer()) {
    return Rat(value.get<long long>());
  }
  if (value.is_number_unsigned()) {
    return Rat(static_cast<long long>(value.get<unsigned long long>()));
  }
  if (value.is_number_float()) {
    return rat_from_double(value.get<double>());
  }
  throw ParseError("field '" + field + "' must be a rational string or number");
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const json& expect(const json& obj, const char* field) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw ParseError(std::string("missing field '") + field + "'");
  }
  return obj.at(field);
}

ConvexBody body_from_json(const json& obj) {
  const int dim = [&] {
    const json& d = expect(obj, "dim");
    if (!d.is_number_integer() && !d.is_number_unsigned()) {
      throw ParseError("field 'dim' must be an integer");
    }
    return d.get<int>();
  }();
  const json& verts = expect(obj, "vertices");
  if (!verts.is_array() || verts.empty()) {
    throw ParseError("field 'vertices' must be a nonempty array");
  }
  std::vector<RatVec> points;
  points.reserve(verts.size());
  for (const auto& row : verts) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError("every vertex must list exactly 'dim' coordinates");
    }
    RatVec p;
    p.reserve(row.size());
    for (const auto& coord : row) p.push_back(rat_from_json(coord, "vertices"));
    points.push_back(std::move(p));
  }
  return ConvexBody::build(std::move(points), dim);
}

ValuationRecord valuation_from_json(const json& obj, bool allow_zero) {
  const json& name = expect(obj, "name");
  if (!name.is_string()) throw ParseError("field 'name' must be a string");
  const json& a = expect(obj, "A");
  if (!a.is_number()) throw ParseError("field 'A' must be a number");
  double scale = 1.0;
  if (obj.contains("scale")) {
    if (!obj.at("scale").is_number()) {
      throw ParseError("field 'scale' must be a number");
    }
    scale = obj.at("scale").get<double>();
  }
  return ValuationRecord(name.get<std::string>(), a.get<double>(),
                         body_from_json(expect(obj, "body")), scale,
                         allow_zero);
}

}  // namespace

std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

ConvexBody body_from_json_text(const std::string& text) {
  return body_from_json(parse(text));
}

std::string body_to_json_text(const ConvexBody& body, bool exact) {
  json out;
  out["dim"] = body.dim();
  json verts = json::array();
  for (const auto& v : body.vertices()) {
    json row = json::array();
    for (const auto& c : v) {
      row.push_back(exact ? rat_to_string(c) : format_decimal(to_double(c)));
    }
    verts.push_back(std::move(row));
  }
  out["vertices"] = std::move(verts);
  return out.dump(2);
}

ConcaveProfile profile_from_json_text(const std::string& text) {
  const json obj = parse(text);
  const json& bp = expect(obj, "breakpoints");
  const json& vals = expect(obj, "values");
  if (!bp.is_array() || !vals.is_array()) {
    throw ParseError("'breakpoints' and 'values' must be arrays");
  }
  std::vector<double> breakpoints, values;
  for (const auto& b : bp) {
    if (!b.is_number()) throw ParseError("breakpoints must be numbers");
    breakpoints.push_back(b.get<double>());
  }
  for (const auto& v : vals) {
    if (!v.is_number()) throw ParseError("values must be numbers");
    values.push_back(v.get<double>());
  }
  if (obj.contains("T")) {
    const double T = expect(obj, "T").get<double>();
    if (breakpoints.empty() ||
        std::fabs(breakpoints.back() - T) > 1e-12 * std::max(1.0, T)) {
      throw ParseError("'T' disagrees with the final breakpoint");
    }
  }
  return ConcaveProfile(std::move(breakpoints), std::move(values));
}

std::vector<ValuationRecord> valuations_from_json_text(
    const std::string& text, bool allow_zero_discrepancy) {
  const json obj = parse(text);
  const json* list = &obj;
  if (obj.is_object() && obj.contains("valuations")) {
    list = &obj.at("valuations");
  }
  std::vector<ValuationRecord> records;
  if (list->is_array()) {
    for (const auto& item : *list) {
      records.push_back(valuation_from_json(item, allow_zero_discrepancy));
    }
  } else {
    records.push_back(valuation_from_json(*list, allow_zero_discrepancy));
  }
  if (records.empty()) throw ParseError("no valuation records in file");
  return records;
}

JumpingData jumping_from_json_text(const std::string& text) {
  const json obj = parse(text);
  const int k = expect(obj, "k").get<int>();
  const int d_k = expect(obj, "d_k").get<int>();
  const json& arr = expect(obj, "j");
  if (!arr.is_array()) throw ParseError("field 'j' must be an array");
  std::vector<double> j;
  for (const auto& x : arr) j.push_back(x.get<double>());
  if (static_cast<int>(j.size()) != d_k) {
    throw ParseError("field 'j' must list exactly d_k jumping numbers");
  }
  return make_jumping_data(k, std::move(j));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file '" + path + "'");
  out << content;
}

}  // namespace subbary
