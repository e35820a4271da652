#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "topodyn/constructions.hpp"
#include "topodyn/diagnostics.hpp"
#include "topodyn/entropy.hpp"
#include "topodyn/families.hpp"
#include "topodyn/hitting.hpp"
#include "topodyn/systems.hpp"

namespace topodyn {

// Structured-text config: named sections of key = value lines. Keys are
// bare identifiers; values are bare tokens or double-quoted strings.
// Section headers nest by dots: [system.left]. Unknown keys are rejected
// where a schema applies. The writer emits a canonical form (sorted
// sections, fixed key order) so write(parse(write(x))) == write(x).
using ConfigTable = std::map<std::string, std::map<std::string, std::string>>;

ConfigTable parse_config(const std::string& text);
std::string write_config(const ConfigTable& table);

// System and point round-trips through the section named `prefix`.
void system_to_config(const SystemSpec& sys, const std::string& prefix, ConfigTable& out);
SystemSpec system_from_config(const ConfigTable& table, const std::string& prefix);
void point_to_config(const PointSpec& p, const std::string& prefix, ConfigTable& out);
PointSpec point_from_config(const ConfigTable& table, const std::string& prefix);

std::string system_to_text(const SystemSpec& sys);
SystemSpec system_from_text(const std::string& text);

// WindowSet as CSV ("horizon,H" header, one member per line) and as
// run-length text ("horizon,H" header, lines "a" or "a-b").
std::string windowset_to_csv(const WindowSet& s);
WindowSet windowset_from_csv(const std::string& text);
std::string windowset_to_rle(const WindowSet& s);
WindowSet windowset_from_rle(const std::string& text);

// JSON encodings. Integer lists switch to [start,len] run encoding above
// 10^4 entries, flagged by an "encoding" field.
nlohmann::json to_json(const WindowSet& s);
nlohmann::json to_json(const TaggedWindowSet& t);
nlohmann::json to_json(const CellSetApprox& a);
nlohmann::json to_json(const DiagnosticVerdict& v);
nlohmann::json to_json(const FamilyVerdict& v);
nlohmann::json to_json(const FamilyTransitivityReport& r);
nlohmann::json to_json(const LyapunovReport& r);
nlohmann::json to_json(const ThickSensitivityProfile& p);
nlohmann::json to_json(const SepProfile& p);
nlohmann::json to_json(const SeqEntropyEstimate& e);
nlohmann::json to_json(const TransitiveCompactReport& r);
nlohmann::json to_json(const NewpropVerification& v);

// Two-column CSV extraction from a run report; throws MissingSeries.
std::string emit_plot_data(const nlohmann::json& report, const std::string& series);

} // namespace topodyn
