#include "pgn/template_io.hpp"

#include "pgn/errors.hpp"

#include <cstdio>

namespace pgn {

namespace {

using nlohmann::json;

Rational rational_field(const json& v, const char* what) {
  if (!v.is_string()) throw ParseError(std::string(what) + ": expected a rational string \"p/q\"");
  return parse_rational(v.get<std::string>());
}

int int_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw ParseError(std::string("template document: missing integer field '") + key + "'");
  }
  return doc[key].get<int>();
}

std::string decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

json template_to_json(const PiecewisePath& path, const std::vector<Rational>& anchors, const json& provenance) {
  json doc;
  doc["format"] = kTemplateFormat;
  doc["m"] = path.dims().m();
  doc["n"] = path.dims().n();
  json times = json::array();
  json rows = json::array();
  for (std::size_t i = 0; i < path.breakpoint_count(); ++i) {
    times.push_back(format_rational(path.time(i)));
    json row = json::array();
    for (const auto& v : path.value(i)) row.push_back(format_rational(v));
    rows.push_back(std::move(row));
  }
  doc["breakpoints"] = std::move(times);
  doc["values"] = std::move(rows);
  if (!anchors.empty()) {
    json a = json::array();
    for (const auto& t : anchors) a.push_back(format_rational(t));
    doc["anchors"] = std::move(a);
  }
  if (!provenance.is_null()) doc["provenance"] = provenance;
  return doc;
}

TemplateDocument template_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("template document must be a JSON object");
  if (!doc.contains("format") || doc["format"] != kTemplateFormat) {
    throw ParseError(std::string("template document: format must be \"") + kTemplateFormat + "\"");
  }
  Dims dims(int_field(doc, "m"), int_field(doc, "n"));
  if (!doc.contains("breakpoints") || !doc["breakpoints"].is_array()) {
    throw ParseError("template document: missing array 'breakpoints'");
  }
  if (!doc.contains("values") || !doc["values"].is_array()) {
    throw ParseError("template document: missing array 'values'");
  }
  const auto& bps = doc["breakpoints"];
  const auto& rows = doc["values"];
  if (bps.size() != rows.size()) throw ParseError("template document: one value row per breakpoint required");
  std::vector<Rational> times;
  std::vector<Rational> values;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    times.push_back(rational_field(bps[i], "breakpoints"));
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dims.d())) {
      throw ParseError("template document: value row " + std::to_string(i) + " must have d = " +
                       std::to_string(dims.d()) + " entries");
    }
    for (const auto& v : row) values.push_back(rational_field(v, "values"));
  }
  TemplateDocument out{PiecewisePath(dims, std::move(times), std::move(values)), {}, nullptr};
  if (doc.contains("anchors")) {
    if (!doc["anchors"].is_array()) throw ParseError("template document: 'anchors' must be an array");
    for (const auto& a : doc["anchors"]) out.anchors.push_back(rational_field(a, "anchors"));
  }
  if (doc.contains("provenance")) out.provenance = doc["provenance"];
  return out;
}

std::string dump_template(const PiecewisePath& path, const std::vector<Rational>& anchors, const json& provenance) {
  return template_to_json(path, anchors, provenance).dump(2) + "\n";
}

TemplateDocument parse_template(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("template JSON: ") + e.what());
  }
  return template_from_json(doc);
}

std::string template_breakpoints_csv(const PiecewisePath& path) {
  std::string out = "t";
  for (int c = 1; c <= path.d(); ++c) out += ",f_" + std::to_string(c);
  out += "\n";
  for (std::size_t i = 0; i < path.breakpoint_count(); ++i) {
    out += decimal(to_double(path.time(i)));
    for (const auto& v : path.value(i)) out += "," + decimal(to_double(v));
    out += "\n";
  }
  return out;
}

}  // namespace pgn
