// Copyright 2026 The mrwb Authors
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

// Plot data for DSE results.
//
// CSV: name,t_ms,kluts,kffs,brams,feasible
// Names are always double-quoted (they contain commas, e.g. "Cut 6, P=4").
// Numbers use the shortest representation that parses back exactly.

#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mrwb/dse.hpp"
#include "mrwb/software_profile.hpp"
#include "mrwb/error.hpp"

namespace mrwb {

inline constexpr std::string_view kPlotCsvHeader = "name,t_ms,kluts,kffs,brams,feasible";

struct PlotRow {
  std::string name;
  double t_ms = 0.0;
  double kluts = 0.0;
  double kffs = 0.0;
  double brams = 0.0;
  bool feasible = false;

  friend bool operator==(const PlotRow&, const PlotRow&) = default;
};

/// One row per library entry, in library order.
inline std::vector<PlotRow> plot_rows(const dse::BlockLibrary& lib, const dse::SolveReport& report) {
  std::vector<PlotRow> rows;
  for (const dse::Candidate& c : report.evaluated) {
    const dse::CutEntry* e = lib.find(c.name);
    if (e == nullptr) throw ConfigError("plot_rows: '" + c.name + "' not in library");
    rows.push_back({c.name, c.t_ms, e->kluts, e->kffs, e->brams, c.feasible});
  }
  return rows;
}

/// Pareto-front rows, all marked feasible, in front order.
inline std::vector<PlotRow> plot_rows(const std::vector<dse::CutEntry>& front, const dse::PkiProfile& p) {
  std::vector<PlotRow> rows;
  for (const dse::CutEntry& e : front) {
    rows.push_back({e.name, dse::total_runtime(e, p), e.kluts, e.kffs, e.brams, true});
  }
  return rows;
}

namespace detail {

inline std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Splits one CSV record; quoted cells may contain commas and "" escapes.
inline std::vector<std::string> split_csv(std::string_view line, const std::string& where) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  if (quoted) throw FormatError(where, "unterminated quote");
  return cells;
}

}  // namespace detail

inline std::string plot_to_csv(const std::vector<PlotRow>& rows) {
  std::ostringstream out;
  out << kPlotCsvHeader << '\n';
  for (const PlotRow& r : rows) {
    out << detail::quote(r.name) << ',' << detail::shortest(r.t_ms) << ',' << detail::shortest(r.kluts)
        << ',' << detail::shortest(r.kffs) << ',' << detail::shortest(r.brams) << ','
        << (r.feasible ? "true" : "false") << '\n';
  }
  return out.str();
}

inline std::vector<PlotRow> plot_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kPlotCsvHeader) {
    throw FormatError("header", "expected '" + std::string(kPlotCsvHeader) + "'");
  }
  std::vector<PlotRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto cells = detail::split_csv(line, where);
    if (cells.size() != 6) throw FormatError(where, "expected 6 columns");
    PlotRow row;
    row.name = cells[0];
    const char* names[] = {"t_ms", "kluts", "kffs", "brams"};
    double* fields[] = {&row.t_ms, &row.kluts, &row.kffs, &row.brams};
    for (int i = 0; i < 4; ++i) {
      const auto v = detail::parse_double(cells[1 + i]);
      if (!v) throw FormatError(where + "." + names[i], "not a number");
      *fields[i] = *v;
    }
    if (cells[5] != "true" && cells[5] != "false") throw FormatError(where + ".feasible", "expected true or false");
    row.feasible = cells[5] == "true";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mrwb
