#include "loopforce/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "loopforce/error.hpp"

namespace loopforce {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw Error(ErrorCode::Parse, "unknown key '" + key + "' in curve specification");
    }
  }
}

double number_field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorCode::Parse, std::string("missing key '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw Error(ErrorCode::Parse, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> array_field(const json& obj, const char* key) {
  if (!obj.contains(key)) return {};
  const json& v = obj.at(key);
  if (!v.is_array()) throw Error(ErrorCode::Parse, std::string("'") + key + "' must be an array");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) {
      throw Error(ErrorCode::Parse, std::string("'") + key + "' must contain only numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

Vec2 center_field(const json& obj) {
  const auto c = array_field(obj, "center");
  if (c.empty()) return {};
  if (c.size() != 2) throw Error(ErrorCode::Parse, "'center' must have two entries");
  return {c[0], c[1]};
}

}  // namespace

ClosedCurve curve_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid curve specification: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Parse, "curve specification must be an object");
  if (!doc.contains("type") || !doc.at("type").is_string()) {
    throw Error(ErrorCode::Parse, "curve specification needs a string 'type'");
  }
  const std::string type = doc.at("type").get<std::string>();
  if (type == "circle") {
    reject_unknown_keys(doc, {"type", "radius", "center"});
    return ClosedCurve::circle(number_field(doc, "radius"), center_field(doc));
  }
  if (type == "ellipse") {
    reject_unknown_keys(doc, {"type", "a", "b", "center"});
    return ClosedCurve::ellipse(number_field(doc, "a"), number_field(doc, "b"), center_field(doc));
  }
  if (type == "fourier") {
    reject_unknown_keys(doc, {"type", "x_cos", "x_sin", "y_cos", "y_sin"});
    FourierCoefficients c;
    c.x.cos = array_field(doc, "x_cos");
    c.x.sin = array_field(doc, "x_sin");
    c.y.cos = array_field(doc, "y_cos");
    c.y.sin = array_field(doc, "y_sin");
    return ClosedCurve(std::move(c));
  }
  if (type == "preset") {
    reject_unknown_keys(doc, {"type", "name"});
    if (!doc.contains("name") || !doc.at("name").is_string()) {
      throw Error(ErrorCode::Parse, "preset specification needs a string 'name'");
    }
    return preset_curve(doc.at("name").get<std::string>());
  }
  throw Error(ErrorCode::Parse, "unknown curve type '" + type + "'");
}

ClosedCurve curve_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open curve file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return curve_from_json(buf.str());
}

PolygonLoop read_polygon(std::istream& in, double mesh_constant) {
  std::vector<Vec2> pts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    Vec2 p;
    std::string extra;
    if (!(fields >> p.x >> p.y) || (fields >> extra)) {
      throw Error(ErrorCode::Parse,
                  "point file line " + std::to_string(line_no) + ": expected \"x y\"");
    }
    pts.push_back(p);
  }
  return PolygonLoop(std::move(pts), mesh_constant);
}

PolygonLoop load_polygon(const std::string& path, double mesh_constant) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open point file '" + path + "'");
  return read_polygon(in, mesh_constant);
}

void write_polygon(std::ostream& out, const PolygonLoop& loop) {
  for (const Vec2& p : loop.points()) out << format_number(p.x) << ' ' << format_number(p.y) << '\n';
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  for (const auto& line : footer) {
    out += "# ";
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace loopforce
