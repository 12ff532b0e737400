#pragma once

// JSON inputs (complex, group + voltage, vertex function, 1-cochain,
// matching) and deterministic CSV / JSON report tables.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "eqhodge/complex.hpp"
#include "eqhodge/cover.hpp"
#include "eqhodge/error.hpp"
#include "eqhodge/fixtures.hpp"
#include "eqhodge/group.hpp"
#include "eqhodge/morse.hpp"

namespace eqhodge {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors report "source:line:column".
inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (const auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw Error("cli", "parse", source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cli", "parse", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw Error("cli", "validate", where + ": " + what);
}

inline const Json& require_field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  if (!j.contains(key)) schema_error(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<int>();
}

inline double as_number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

inline std::vector<int> as_int_array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::pair<int, int> as_edge(const Json& j, const std::string& where) {
  const auto e = as_int_array(j, where);
  if (e.size() != 2) schema_error(where, "an edge has two vertices");
  return {e[0], e[1]};
}

}  // namespace detail

/// {"name": string, "facets": [[int,...], ...]}
inline SimplicialComplex complex_from_json(const Json& j, const std::string& where = "complex") {
  const Json& facets = detail::require_field(j, "facets", where);
  if (j.contains("name") && !j["name"].is_string()) detail::schema_error(where + ".name", "expected a string");
  if (!facets.is_array()) detail::schema_error(where + ".facets", "expected an array");
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < facets.size(); ++i) out.push_back(detail::as_int_array(facets[i], where + ".facets[" + std::to_string(i) + "]"));
  return build_complex(out);
}

/// {"group": {"order": int, "table": [[int]]}}
inline FiniteGroup group_from_json(const Json& j, const std::string& where = "group") {
  const Json& g = detail::require_field(j, "group", where);
  const int order = detail::as_int(detail::require_field(g, "order", where + ".group"), where + ".group.order");
  const Json& table = detail::require_field(g, "table", where + ".group");
  if (!table.is_array() || table.size() != static_cast<std::size_t>(order)) detail::schema_error(where + ".group.table", "expected order rows");
  std::vector<std::vector<int>> t;
  for (std::size_t i = 0; i < table.size(); ++i) t.push_back(detail::as_int_array(table[i], where + ".group.table[" + std::to_string(i) + "]"));
  return FiniteGroup(t);
}

/// {"voltage": [{"edge": [u,v], "g": int}, ...]}
inline VoltageAssignment voltage_from_json(const Json& j, const std::string& where = "voltage") {
  const Json& v = detail::require_field(j, "voltage", where);
  if (!v.is_array()) detail::schema_error(where + ".voltage", "expected an array");
  VoltageAssignment a;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string w = where + ".voltage[" + std::to_string(i) + "]";
    const auto [u, x] = detail::as_edge(detail::require_field(v[i], "edge", w), w + ".edge");
    a.set(u, x, detail::as_int(detail::require_field(v[i], "g", w), w + ".g"));
  }
  return a;
}

/// {"f": [number, ...]}
inline std::vector<double> vertex_function_from_json(const Json& j, const std::string& where = "f") {
  const Json& f = detail::require_field(j, "f", where);
  if (!f.is_array()) detail::schema_error(where + ".f", "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(detail::as_number(f[i], where + ".f[" + std::to_string(i) + "]"));
  return out;
}

/// {"omega": [{"edge": [u,v], "value": number}, ...]}
inline std::vector<std::tuple<int, int, double>> omega_from_json(const Json& j, const std::string& where = "omega") {
  const Json& o = detail::require_field(j, "omega", where);
  if (!o.is_array()) detail::schema_error(where + ".omega", "expected an array");
  std::vector<std::tuple<int, int, double>> out;
  for (std::size_t i = 0; i < o.size(); ++i) {
    const std::string w = where + ".omega[" + std::to_string(i) + "]";
    const auto [u, v] = detail::as_edge(detail::require_field(o[i], "edge", w), w + ".edge");
    out.emplace_back(u, v, detail::as_number(detail::require_field(o[i], "value", w), w + ".value"));
  }
  return out;
}

/// {"pairs": [[[σ...], [τ...]], ...]}
inline MorseMatching matching_from_json(const Json& j, const std::string& where = "matching") {
  const Json& p = detail::require_field(j, "pairs", where);
  if (!p.is_array()) detail::schema_error(where + ".pairs", "expected an array");
  MorseMatching m;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string w = where + ".pairs[" + std::to_string(i) + "]";
    if (!p[i].is_array() || p[i].size() != 2) detail::schema_error(w, "expected [sigma, tau]");
    Simplex a = detail::as_int_array(p[i][0], w + "[0]"), b = detail::as_int_array(p[i][1], w + "[1]");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    m.pairs.emplace_back(std::move(a), std::move(b));
  }
  return m;
}

/// A fixture file: a complex plus optional "f", "omega", "loops" and
/// "group" + "voltage". Missing "f" falls back to the index function.
inline FixtureData fixture_from_json(const Json& j, const std::string& where) {
  FixtureData d;
  d.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : where;
  d.complex = complex_from_json(j, where);
  d.f = j.contains("f") ? vertex_function_from_json(j, where) : index_vertex_function(d.complex);
  if (d.f.size() != d.complex.vertex_count()) detail::schema_error(where + ".f", "expected one value per vertex");
  if (j.contains("omega")) {
    d.omega = omega_from_json(j, where);
    d.has_omega = true;
  }
  if (j.contains("loops")) {
    if (!j["loops"].is_array()) detail::schema_error(where + ".loops", "expected an array");
    for (std::size_t i = 0; i < j["loops"].size(); ++i) d.loops.push_back(detail::as_int_array(j["loops"][i], where + ".loops[" + std::to_string(i) + "]"));
  }
  if (j.contains("group") || j.contains("voltage")) {
    d.group = group_from_json(j, where);
    d.voltage = voltage_from_json(j, where);
  }
  return d;
}

inline Json fixture_to_json(const FixtureData& d) {
  Json j;
  j["name"] = d.name;
  Json facets = Json::array();
  for (const auto& s : d.complex.maximal_simplices()) facets.push_back(s);
  j["facets"] = facets;
  j["f"] = d.f;
  if (d.has_omega) {
    Json o = Json::array();
    for (const auto& [u, v, x] : d.omega) o.push_back({{"edge", {u, v}}, {"value", x}});
    j["omega"] = o;
  }
  if (!d.loops.empty()) j["loops"] = d.loops;
  if (d.group) {
    j["group"] = {{"order", d.group->order()}, {"table", d.group->table()}};
    Json v = Json::array();
    for (const auto& [edge, g] : d.voltage.values()) v.push_back({{"edge", {edge.first, edge.second}}, {"g", g}});
    j["voltage"] = v;
  }
  return j;
}

/// Fixture directory: $EQHODGE_FIXTURES if set, else the shipped data/fixtures.
inline std::filesystem::path fixture_directory() {
  if (const char* env = std::getenv("EQHODGE_FIXTURES"); env && *env) return env;
#ifdef EQHODGE_DATA_DIR
  return std::filesystem::path(EQHODGE_DATA_DIR) / "fixtures";
#else
  return "data/fixtures";
#endif
}

/// <dir>/<name>.json if present, else the builtin of that name.
inline FixtureData load_fixture(const std::string& name) {
  const auto path = fixture_directory() / (name + ".json");
  if (std::filesystem::exists(path)) return fixture_from_json(read_json_file(path), path.string());
  return builtin_fixture(name);
}

// ---------------------------------------------------------------------------
// Report tables

/// 12 significant digits, '.' decimal, no negative zero.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s = buf;
  if (s == "-0") s = "0";
  for (char& c : s)
    if (c == ',') c = '.';
  return s;
}

class Cell {
 public:
  Cell(double x) : text_(format_number(x)), numeric_(true) {}
  Cell(int x) : text_(std::to_string(x)), numeric_(true) {}
  Cell(long x) : text_(std::to_string(x)), numeric_(true) {}
  Cell(long long x) : text_(std::to_string(x)), numeric_(true) {}
  Cell(std::size_t x) : text_(std::to_string(x)), numeric_(true) {}
  Cell(bool pass) : text_(pass ? "pass" : "FAIL") {}
  Cell(std::string s) : text_(std::move(s)) {}
  Cell(const char* s) : text_(s) {}

  const std::string& text() const { return text_; }
  bool numeric() const { return numeric_; }

 private:
  std::string text_;
  bool numeric_ = false;
};

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != header.size()) throw Error("cli", "report", "row width does not match header of " + name);
    rows.push_back(std::move(row));
  }
};

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + csv_escape(t.header[i]);
  out += "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_escape(r[i].text());
    out += "\n";
  }
  return out;
}

/// Array of objects; numbers are written with the same 12-digit text as CSV.
inline std::string to_json_text(const Table& t) {
  std::string out = "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += "  {";
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      const Cell& c = t.rows[r][i];
      const bool bare = c.numeric() && c.text() != "nan" && c.text() != "inf" && c.text() != "-inf";
      out += (i ? ", " : "") + Json(t.header[i]).dump() + ": " + (bare ? c.text() : Json(c.text()).dump());
    }
    out += r + 1 < t.rows.size() ? "},\n" : "}\n";
  }
  return out + "]\n";
}

inline std::string render(const Table& t, const std::string& format) { return format == "json" ? to_json_text(t) : to_csv(t); }

inline void write_table(const Table& t, const std::filesystem::path& dir, const std::string& format) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (t.name + (format == "json" ? ".json" : ".csv"));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cli", "report", "cannot write " + path.string());
  out << render(t, format);
}

}  // namespace eqhodge
