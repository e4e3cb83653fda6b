#pragma once

// CSV and JSON emission of report tables. CSV uses '.' decimals, ',' as the
// separator and 17 significant digits; JSON objects use the same column names.
// Both start with a header echoing the resolved configuration and units.

#include <fmt/format.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rsse/units.hpp"

namespace rsse::output {

inline constexpr std::string_view kVersion = "rsse 1.0.0";

/// Empty cells (monostate) mark absent values: blank in CSV, null in JSON.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Free-form remarks, emitted after the configuration block.
  std::vector<std::pair<std::string, std::string>> notes;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

inline std::string format_double(double v) { return fmt::format("{:.17g}", v); }

inline KeyValues describe_units(const UnitSystem& units) {
  return {{"hbar", format_double(units.hbar)},
          {"c", format_double(units.c)},
          {"mass_unit", format_double(units.mass_unit)},
          {"energy_unit", std::string(units.energy_unit_name)},
          {"alpha", format_double(kFineStructure)}};
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvCell {
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(const std::string& v) const { return csv_escape(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct JsonCell {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
  nlohmann::ordered_json operator()(double v) const { return v; }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  nlohmann::ordered_json operator()(bool v) const { return v; }
};

}  // namespace detail

/// '#'-prefixed header lines; also used for plot data files.
inline void write_comment_header(std::ostream& out, const KeyValues& config,
                                 const KeyValues& units, const KeyValues& notes) {
  out << "# " << kVersion << '\n';
  for (const auto& [k, v] : config) out << "# config." << k << " = " << v << '\n';
  for (const auto& [k, v] : units) out << "# units." << k << " = " << v << '\n';
  for (const auto& [k, v] : notes) out << "# note." << k << " = " << v << '\n';
}

inline void write_csv(std::ostream& out, const KeyValues& config, const KeyValues& units,
                      const Table& table) {
  write_comment_header(out, config, units, table.notes);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << std::visit(detail::CsvCell{}, row[i]);
    }
    out << '\n';
  }
}

inline void write_json(std::ostream& out, const KeyValues& config, const KeyValues& units,
                       const Table& table) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  auto& cfg = doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  auto& u = doc["units"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : units) u[k] = v;
  auto& notes = doc["notes"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.notes) notes[k] = v;
  doc["columns"] = table.columns;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[table.columns[i]] = std::visit(detail::JsonCell{}, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

/// Two-column plot data (abscissa, ordinate) behind the usual header.
inline void write_plot_data(std::ostream& out, const KeyValues& config, const KeyValues& units,
                            const KeyValues& notes, const std::vector<double>& x,
                            const std::vector<double>& y) {
  write_comment_header(out, config, units, notes);
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    out << format_double(x[i]) << ' ' << format_double(y[i]) << '\n';
  }
}

}  // namespace rsse::output
