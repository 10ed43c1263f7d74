// Copyright 2026 The hamsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamsim/errors.hpp"
#include "hamsim/rng.hpp"

namespace hamsim {

inline constexpr const char* kToolVersion = "hamsim 0.1.0";

/** Deterministic shortest-round-trip double formatting ("%.17g"). */
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/**
 * Tabular suite/sweep output plus bound-check records. Every bound
 * comparison keeps both sides so pass/fail decisions are auditable offline;
 * wall time is console-only so reports stay byte-stable.
 */
struct Report {
  struct Check {
    std::string name;
    double observed = 0.0;
    double bound = 0.0;
    bool passed = false;
    double margin = 0.0;  // bound - observed (negative when violated)
    bool informational = false;  // reported, not counted toward pass/fail
  };

  std::string suite;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  std::uint64_t spec_hash = 0;
  std::string version = kToolVersion;

  void add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_double(v));
    rows.push_back(std::move(row));
  }

  Check& add_check(const std::string& name, double observed, double bound,
                   bool passed) {
    checks.push_back({name, observed, bound, passed, bound - observed, false});
    return checks.back();
  }

  /** observed <= bound + slack. */
  Check& check_upper(const std::string& name, double observed, double bound,
                     double slack = 0.0) {
    return add_check(name, observed, bound, observed <= bound + slack);
  }

  /** |observed - target| <= window. */
  Check& check_close(const std::string& name, double observed, double target,
                     double window) {
    Check& c = add_check(name, observed, target,
                         std::abs(observed - target) <= window);
    c.margin = window - std::abs(observed - target);
    return c;
  }

  /** Recorded but excluded from pass/fail (known-loose source claims). */
  Check& report_only(const std::string& name, double observed, double bound) {
    Check& c = add_check(name, observed, bound, observed <= bound);
    c.informational = true;
    return c;
  }

  bool passed() const {
    for (const auto& c : checks)
      if (!c.informational && !c.passed) return false;
    return true;
  }

  int failures() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.informational && !c.passed) ++n;
    return n;
  }
};

inline std::string to_csv(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    out += r.columns[i];
    out += (i + 1 < r.columns.size()) ? ',' : '\n';
  }
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? ',' : '\n';
    }
  }
  return out;
}

/** gnuplot-style whitespace columns behind a `#` header naming each column. */
inline std::string to_plotdata(const Report& r) {
  std::string out = "#";
  for (const auto& c : r.columns) {
    out += ' ';
    out += c;
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? ' ' : '\n';
    }
  }
  return out;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["provenance"] = {{"seed", r.seed},
                     {"spec_hash", r.spec_hash},
                     {"version", r.version}};
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"observed", format_double(c.observed)},
                      {"bound", format_double(c.bound)},
                      {"passed", c.passed},
                      {"margin", format_double(c.margin)},
                      {"informational", c.informational}});
  j["checks"] = checks;
  j["passed"] = r.passed();
  return j;
}

inline Report report_from_json(const nlohmann::ordered_json& j) {
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("provenance").at("seed").get<std::uint64_t>();
  r.spec_hash = j.at("provenance").at("spec_hash").get<std::uint64_t>();
  r.version = j.at("provenance").at("version").get<std::string>();
  r.columns = j.at("columns").get<std::vector<std::string>>();
  r.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
  for (const auto& c : j.at("checks")) {
    Report::Check chk;
    chk.name = c.at("name").get<std::string>();
    chk.observed = std::stod(c.at("observed").get<std::string>());
    chk.bound = std::stod(c.at("bound").get<std::string>());
    chk.passed = c.at("passed").get<bool>();
    chk.margin = std::stod(c.at("margin").get<std::string>());
    chk.informational = c.at("informational").get<bool>();
    r.checks.push_back(chk);
  }
  return r;
}

enum class ReportFormat { csv, json, plotdata };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  if (s == "plotdata") return ReportFormat::plotdata;
  throw ConfigError("unknown format '" + s + "' (csv|json|plotdata)");
}

inline std::string render(const Report& r, ReportFormat f) {
  switch (f) {
    case ReportFormat::csv: return to_csv(r);
    case ReportFormat::plotdata: return to_plotdata(r);
    case ReportFormat::json: return to_json(r).dump(2) + "\n";
  }
  throw ConfigError("render: bad format");
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace hamsim
