#pragma once

// JSON and text serialization for shifts, potentials and solver results.

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "ergopt/optimizer.hpp"
#include "ergopt/potentials.hpp"
#include "ergopt/sft.hpp"

namespace ergopt {

using Json = nlohmann::ordered_json;

/// { "kind", "depth_or_radius", "entries": [ { "word", "value" } ] }, with
/// entries in the lexicographic order of the admissible words.
Json to_json(const OneSidedPotential& phi);
Json to_json(const TwoSidedPotential& phi);

using AnyPotential = std::variant<OneSidedPotential, TwoSidedPotential>;

/// Every admissible word needs exactly one entry; unknown, inadmissible or
/// duplicate words are InputError.
AnyPotential potential_from_json(const TransitionStructure& ts, const Json& j);
OneSidedPotential one_sided_from_json(const TransitionStructure& ts, const Json& j);
TwoSidedPotential two_sided_from_json(const TransitionStructure& ts, const Json& j);

Json to_json(const PeriodicCertificate& c);
/// { "value", "certificate": { "word", "period" }, "residual", "method" }.
Json to_json(const MaximizationResult& r);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
/// Throws InputError on unreadable files or invalid JSON.
Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Shortest round-tripping decimal form; "nan" for NaN.
std::string format_number(double v);

}  // namespace ergopt
