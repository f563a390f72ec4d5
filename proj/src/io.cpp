#include "ergopt/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ergopt/error.hpp"

namespace ergopt {

namespace {

Json table_json(const char* kind, int size, const WordTable& table) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    entries.push_back({{"word", table.words()[i]}, {"value", table.value_at(i)}});
  }
  return {{"kind", kind}, {"depth_or_radius", size}, {"entries", std::move(entries)}};
}

void fill_table(const TransitionStructure& ts, const Json& j, WordTable& table) {
  if (!j.contains("entries") || !j["entries"].is_array()) throw InputError("potential JSON needs an entries array");
  std::set<long> seen;
  for (const Json& e : j["entries"]) {
    if (!e.contains("word") || !e.contains("value")) throw InputError("potential entry needs word and value");
    Word w;
    try {
      w = e["word"].get<Word>();
    } catch (const nlohmann::json::exception&) {
      throw InputError("potential entry word must be an array of integers");
    }
    if (static_cast<int>(w.size()) != table.length()) throw InputError("potential entry has the wrong word length");
    if (!admissible(ts, w)) throw InputError("potential entry word is not admissible");
    const long pos = table.position(w);
    if (!seen.insert(pos).second) throw InputError("duplicate potential entry");
    if (!e["value"].is_number()) throw InputError("potential entry value must be a number");
    table.value_at(static_cast<std::size_t>(pos)) = e["value"].get<double>();
  }
  if (seen.size() != table.size()) {
    throw InputError("potential has " + std::to_string(seen.size()) + " entries, expected " +
                     std::to_string(table.size()));
  }
}

int size_field(const Json& j) {
  if (!j.contains("depth_or_radius") || !j["depth_or_radius"].is_number_integer()) {
    throw InputError("potential JSON needs an integer depth_or_radius");
  }
  return j["depth_or_radius"].get<int>();
}

std::string kind_field(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw InputError("potential JSON needs a kind");
  return j["kind"].get<std::string>();
}

}  // namespace

Json to_json(const OneSidedPotential& phi) { return table_json("one_sided", phi.depth(), phi.table()); }

Json to_json(const TwoSidedPotential& phi) { return table_json("two_sided", phi.radius(), phi.table()); }

OneSidedPotential one_sided_from_json(const TransitionStructure& ts, const Json& j) {
  if (kind_field(j) != "one_sided") throw InputError("expected a one_sided potential");
  const int depth = size_field(j);
  if (depth < 1) throw InputError("one-sided depth must be >= 1");
  OneSidedPotential phi(ts, depth);
  fill_table(ts, j, phi.table());
  return phi;
}

TwoSidedPotential two_sided_from_json(const TransitionStructure& ts, const Json& j) {
  if (kind_field(j) != "two_sided") throw InputError("expected a two_sided potential");
  const int radius = size_field(j);
  if (radius < 0) throw InputError("two-sided radius must be >= 0");
  TwoSidedPotential phi(ts, radius);
  fill_table(ts, j, phi.table());
  return phi;
}

AnyPotential potential_from_json(const TransitionStructure& ts, const Json& j) {
  const std::string kind = kind_field(j);
  if (kind == "one_sided") return one_sided_from_json(ts, j);
  if (kind == "two_sided") return two_sided_from_json(ts, j);
  throw InputError("unknown potential kind '" + kind + "'");
}

Json to_json(const PeriodicCertificate& c) { return {{"word", c.word()}, {"period", c.period()}}; }

Json to_json(const MaximizationResult& r) {
  return {{"value", r.value}, {"certificate", to_json(r.certificate)}, {"residual", r.residual}, {"method", r.method}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace ergopt
