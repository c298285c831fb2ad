#pragma once

// Potential specification files and flat CSV/JSON tables.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tren/errors.hpp"
#include "tren/potential.hpp"

namespace tren {

namespace detail {

inline void require_keys(const nlohmann::json& j, const std::set<std::string>& keys,
                         const std::string& family) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!keys.contains(key)) throw InvalidInput("potential file: unknown key '" + key + "' for family " + family);
  }
  for (const auto& key : keys)
    if (!j.contains(key)) throw InvalidInput("potential file: missing key '" + key + "' for family " + family);
}

inline double number_at(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw InvalidInput(std::string("potential file: '") + key + "' must be a number");
  return v.get<double>();
}

inline std::vector<double> array_at(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array()) throw InvalidInput(std::string("potential file: '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw InvalidInput(std::string("potential file: '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace detail

inline RadialPotential parse_potential(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("potential file: top level must be an object");
  if (!j.contains("family") || !j.at("family").is_string())
    throw InvalidInput("potential file: missing string key 'family'");
  const auto family = j.at("family").get<std::string>();
  if (family == "lenz") {
    detail::require_keys(j, {"family", "a", "Z"}, family);
    return Lenz{detail::number_at(j, "a"), detail::number_at(j, "Z")};
  }
  if (family == "tietz") {
    detail::require_keys(j, {"family", "Z"}, family);
    return Tietz{detail::number_at(j, "Z")};
  }
  if (family == "tabulated") {
    detail::require_keys(j, {"family", "r", "U", "q0", "qinf"}, family);
    return Tabulated(detail::array_at(j, "r"), detail::array_at(j, "U"), detail::number_at(j, "q0"),
                     detail::number_at(j, "qinf"));
  }
  throw InvalidInput("potential file: unknown family '" + family + "'");
}

inline RadialPotential parse_potential(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("potential file: ") + e.what());
  }
  return parse_potential(j);
}

inline RadialPotential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open potential file '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_potential(text);
}

/// 12 significant digits, trailing zeros dropped.
inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

using Cell = std::variant<std::monostate, long, double, std::string>;

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

inline std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const auto* i = std::get_if<long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

inline void write_csv(std::ostream& out, const Table& t) {
  for (const auto& c : t.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

inline void write_json(std::ostream& out, const Table& t) {
  auto records = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json rec = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i) {
      const auto& c = row[i];
      if (std::holds_alternative<std::monostate>(c))
        rec[t.header[i]] = nullptr;
      else if (const auto* n = std::get_if<long>(&c))
        rec[t.header[i]] = *n;
      else if (const auto* d = std::get_if<double>(&c))
        rec[t.header[i]] = std::stod(format_number(*d));
      else
        rec[t.header[i]] = std::get<std::string>(c);
    }
    records.push_back(std::move(rec));
  }
  out << records.dump(2) << '\n';
}

}  // namespace tren
