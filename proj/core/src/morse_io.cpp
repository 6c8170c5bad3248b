#include "fglforge/morse_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fglforge {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

mpq_class parse_moment(const json& j, const std::string& origin, std::size_t idx) {
  std::string where = "component " + std::to_string(idx) + " field 'moment'";
  if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return mpq_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(origin, where + ": " + e.what());
    }
  }
  fail(origin, where + ": expected an integer or a rational string");
}

}  // namespace

FixedPointData parse_fixed_point_json(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");

  FixedPointData out;
  out.schema = doc.value("schema", 1L);
  if (out.schema != 1) fail(origin, "unsupported schema " + std::to_string(out.schema));
  out.name = doc.value("name", std::string("unnamed"));

  if (!doc.contains("components") || !doc["components"].is_array())
    fail(origin, "missing 'components' array");
  std::size_t idx = 0;
  for (const auto& c : doc["components"]) {
    std::string where = "component " + std::to_string(idx);
    if (!c.is_object()) fail(origin, where + ": expected an object");
    FixedComponentDatum d;
    if (!c.contains("name") || !c["name"].is_string())
      fail(origin, where + " field 'name': expected a string");
    d.name = c["name"].get<std::string>();
    if (!c.contains("moment")) fail(origin, where + ": missing 'moment'");
    d.moment_value = parse_moment(c["moment"], origin, idx);
    if (!c.contains("morse_index") || !c["morse_index"].is_number_integer())
      fail(origin, where + " field 'morse_index': expected an integer");
    d.morse_index = c["morse_index"].get<long>();
    if (!c.contains("normal_weights") || !c["normal_weights"].is_array())
      fail(origin, where + " field 'normal_weights': expected an array");
    for (const auto& w : c["normal_weights"]) {
      if (!w.is_number_integer())
        fail(origin, where + " field 'normal_weights': entries must be integers");
      long wv = w.get<long>();
      if (wv == 0) fail(origin, where + " field 'normal_weights': zero weight");
      d.normal_weights.push_back(wv);
    }
    if (!c.contains("generator_degrees") || !c["generator_degrees"].is_array())
      fail(origin, where + " field 'generator_degrees': expected an array");
    for (const auto& g : c["generator_degrees"]) {
      if (!g.is_number_integer())
        fail(origin, where + " field 'generator_degrees': entries must be integers");
      d.generator_degrees.push_back(g.get<long>());
    }
    out.components.push_back(std::move(d));
    ++idx;
  }
  return out;
}

FixedPointData parse_fixed_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fixed_point_json(ss.str(), path);
}

}  // namespace fglforge
