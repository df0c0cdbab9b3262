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

// Per-stage software runtimes of KeyGen / Sign / Open and their CSV and
// table renderings.
//
// CSV schema: function,stage,ms,percent,stddev_ms

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mrwb/error.hpp"
#include "mrwb/instrumentation.hpp"

namespace mrwb {

enum class DsaFunction : std::uint8_t { keygen, sign, open };

inline constexpr std::array<DsaFunction, 3> kAllFunctions = {
    DsaFunction::keygen, DsaFunction::sign, DsaFunction::open};

constexpr std::string_view function_name(DsaFunction f) {
  switch (f) {
    case DsaFunction::keygen: return "keygen";
    case DsaFunction::sign: return "sign";
    case DsaFunction::open: return "open";
  }
  return "?";
}

inline std::optional<DsaFunction> parse_function(std::string_view name) {
  for (DsaFunction f : kAllFunctions) {
    if (function_name(f) == name) return f;
  }
  return std::nullopt;
}

constexpr std::size_t index_of(DsaFunction f) { return static_cast<std::size_t>(f); }

struct StageStats {
  double ms = 0.0;
  double stddev_ms = 0.0;

  friend bool operator==(const StageStats&, const StageStats&) = default;
};

/// Exclusive stage times of one function. `others` holds everything outside
/// the instrumented stages, so the stages sum to the function total.
struct FunctionProfile {
  std::array<StageStats, instr::kStageCount> stages{};

  StageStats& operator[](instr::Stage s) { return stages[instr::index_of(s)]; }
  const StageStats& operator[](instr::Stage s) const { return stages[instr::index_of(s)]; }

  double total_ms() const {
    double t = 0.0;
    for (const StageStats& s : stages) t += s.ms;
    return t;
  }

  double percent(instr::Stage s) const {
    const double total = total_ms();
    return total > 0.0 ? 100.0 * (*this)[s].ms / total : 0.0;
  }

  double keccak_ms() const {
    return (*this)[instr::Stage::keccak_permute].ms + (*this)[instr::Stage::keccak_squeeze].ms +
           (*this)[instr::Stage::keccak_absorb].ms;
  }

  double matrix_ms() const {
    return (*this)[instr::Stage::mat_arith].ms + (*this)[instr::Stage::scalar_mat_sum].ms +
           (*this)[instr::Stage::mat_prod].ms;
  }

  friend bool operator==(const FunctionProfile&, const FunctionProfile&) = default;
};

class SoftwareProfile {
 public:
  /// Rejects functions without any recorded time and negative or non-finite
  /// entries.
  explicit SoftwareProfile(std::array<FunctionProfile, 3> functions)
      : functions_(functions) {
    for (DsaFunction f : kAllFunctions) {
      const FunctionProfile& fp = functions_[index_of(f)];
      for (instr::Stage s : instr::kAllStages) {
        const StageStats& st = fp[s];
        if (!std::isfinite(st.ms) || st.ms < 0.0 || !std::isfinite(st.stddev_ms) ||
            st.stddev_ms < 0.0) {
          throw ConfigError("profile " + std::string(function_name(f)) + "." +
                            std::string(instr::stage_name(s)) + ": invalid time");
        }
      }
      if (!(fp.total_ms() > 0.0)) {
        throw ConfigError("profile " + std::string(function_name(f)) + ": no stage times");
      }
    }
  }

  const FunctionProfile& operator[](DsaFunction f) const { return functions_[index_of(f)]; }

  double total_ms(DsaFunction f) const { return (*this)[f].total_ms(); }

  friend bool operator==(const SoftwareProfile&, const SoftwareProfile&) = default;

 private:
  std::array<FunctionProfile, 3> functions_;
};

/// The reference software breakdown reported for the ZYNQ host (ms).
/// Group rows are split into their exclusive children; the residual
/// matrix-arithmetic stage is zero.
inline SoftwareProfile table1_profile() {
  using instr::Stage;
  auto row = [](double smm, double prod, double permute, double squeeze, double absorb,
                double others) {
    FunctionProfile fp;
    fp[Stage::mat_arith].ms = 0.0;
    fp[Stage::scalar_mat_sum].ms = smm;
    fp[Stage::mat_prod].ms = prod;
    fp[Stage::keccak_permute].ms = permute;
    fp[Stage::keccak_squeeze].ms = squeeze;
    fp[Stage::keccak_absorb].ms = absorb;
    fp[Stage::others].ms = others;
    return fp;
  };
  return SoftwareProfile({
      row(0.27, 0.02, 1.22, 0.26, 0.00, 0.02),
      row(175.06, 18.65, 40.23, 2.68, 4.02, 3.17),
      row(167.3, 15.38, 32.61, 3.22, 3.42, 2.95),
  });
}

namespace detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::vector<std::string> split_csv_simple(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace detail

inline constexpr std::string_view kProfileCsvHeader = "function,stage,ms,percent,stddev_ms";

inline std::string profile_to_csv(const SoftwareProfile& p) {
  std::ostringstream out;
  out << kProfileCsvHeader << '\n';
  for (DsaFunction f : kAllFunctions) {
    for (instr::Stage s : instr::kAllStages) {
      const StageStats& st = p[f][s];
      out << function_name(f) << ',' << instr::stage_name(s) << ',' << detail::fixed(st.ms, 6)
          << ',' << detail::fixed(p[f].percent(s), 4) << ',' << detail::fixed(st.stddev_ms, 6)
          << '\n';
    }
  }
  return out.str();
}

/// Strict loader: every (function, stage) pair exactly once and per-function
/// percentages summing to 100 +- 0.5.
inline SoftwareProfile profile_from_csv(std::string_view text) {
  std::array<FunctionProfile, 3> fns{};
  std::array<std::array<bool, instr::kStageCount>, 3> seen{};
  std::array<double, 3> percent_sum{};
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!header) {
      if (line != kProfileCsvHeader) throw FormatError("header", "expected '" + std::string(kProfileCsvHeader) + "'");
      header = true;
      continue;
    }
    const auto cells = detail::split_csv_simple(line);
    if (cells.size() != 5) throw FormatError(where, "expected 5 columns");
    const auto fn = parse_function(cells[0]);
    if (!fn) throw FormatError(where + ".function", "unknown function '" + cells[0] + "'");
    const auto stage = instr::parse_stage(cells[1]);
    if (!stage) throw FormatError(where + ".stage", "unknown stage '" + cells[1] + "'");
    auto& flag = seen[index_of(*fn)][instr::index_of(*stage)];
    if (flag) throw FormatError(where, "duplicate row " + cells[0] + "/" + cells[1]);
    flag = true;
    const auto ms = detail::parse_double(cells[2]);
    const auto pct = detail::parse_double(cells[3]);
    const auto sd = detail::parse_double(cells[4]);
    if (!ms) throw FormatError(where + ".ms", "not a number");
    if (!pct) throw FormatError(where + ".percent", "not a number");
    if (!sd) throw FormatError(where + ".stddev_ms", "not a number");
    fns[index_of(*fn)][*stage] = {*ms, *sd};
    percent_sum[index_of(*fn)] += *pct;
  }
  if (!header) throw FormatError("header", "empty profile");
  for (DsaFunction f : kAllFunctions) {
    for (instr::Stage s : instr::kAllStages) {
      if (!seen[index_of(f)][instr::index_of(s)]) {
        throw FormatError(std::string(function_name(f)) + "." + std::string(instr::stage_name(s)),
                          "missing row");
      }
    }
    if (std::abs(percent_sum[index_of(f)] - 100.0) > 0.5) {
      throw FormatError(std::string(function_name(f)) + ".percent",
                        "percentages sum to " + detail::fixed(percent_sum[index_of(f)], 3));
    }
  }
  try {
    return SoftwareProfile(fns);
  } catch (const ConfigError& e) {
    throw FormatError("profile", e.what());
  }
}

/// Fixed-width breakdown in the usual row order: matrix arithmetic group,
/// Keccak group, others, total. Group rows are inclusive sums.
inline std::string profile_to_table(const SoftwareProfile& p) {
  using instr::Stage;
  struct Row {
    const char* label;
    std::array<double, 3> ms;
  };
  auto per_fn = [&](auto getter) {
    std::array<double, 3> v{};
    for (DsaFunction f : kAllFunctions) v[index_of(f)] = getter(p[f]);
    return v;
  };
  auto stage = [&](Stage s) { return per_fn([s](const FunctionProfile& fp) { return fp[s].ms; }); };
  const std::vector<Row> rows = {
      {"Mat. Arith.", per_fn([](const FunctionProfile& fp) { return fp.matrix_ms(); })},
      {"  sum alpha*M", stage(Stage::scalar_mat_sum)},
      {"  Mat. Prod.", stage(Stage::mat_prod)},
      {"Keccak", per_fn([](const FunctionProfile& fp) { return fp.keccak_ms(); })},
      {"  Permute", stage(Stage::keccak_permute)},
      {"  Squeeze", stage(Stage::keccak_squeeze)},
      {"  Absorb", stage(Stage::keccak_absorb)},
      {"Others", stage(Stage::others)},
      {"Total", per_fn([](const FunctionProfile& fp) { return fp.total_ms(); })},
  };
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  std::ostringstream out;
  out << pad("", 16) << pad("KeyGen [ms]", 22) << pad("Sign [ms]", 22) << "Open [ms]\n";
  for (const Row& row : rows) {
    out << pad(row.label, 16);
    for (DsaFunction f : kAllFunctions) {
      const double total = p.total_ms(f);
      const double v = row.ms[index_of(f)];
      std::string cell = detail::fixed(v, 3) + " (" + detail::fixed(100.0 * v / total, 2) + "%)";
      out << (f == DsaFunction::open ? cell : pad(cell, 22));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mrwb
