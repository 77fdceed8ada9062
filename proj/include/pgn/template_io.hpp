#pragma once

// Canonical JSON ("pgn-template-v1") and plotting CSV for template paths.

#include "pgn/template_core.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pgn {

inline constexpr const char* kTemplateFormat = "pgn-template-v1";

/// Everything a template document carries. `anchors` is empty when the
/// document has none; `provenance` is null when absent.
struct TemplateDocument {
  PiecewisePath path;
  std::vector<Rational> anchors;
  nlohmann::json provenance;
};

nlohmann::json template_to_json(const PiecewisePath& path, const std::vector<Rational>& anchors = {},
                                const nlohmann::json& provenance = nullptr);

/// Throws ParseError on malformed documents, DomainError on invalid paths.
TemplateDocument template_from_json(const nlohmann::json& doc);

/// Canonical text: two-space indented JSON with a trailing newline.
std::string dump_template(const PiecewisePath& path, const std::vector<Rational>& anchors = {},
                          const nlohmann::json& provenance = nullptr);
TemplateDocument parse_template(const std::string& text);

/// Breakpoint table "t,f_1,...,f_d" with decimal values for plotting.
std::string template_breakpoints_csv(const PiecewisePath& path);

}  // namespace pgn
