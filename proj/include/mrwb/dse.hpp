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

// Design-space exploration over a library of measured HW/SW blocks.
//
// A PKI usage profile (n, m) weighs the per-connection runtime
//   T = n * t_sign + m * t_open,   n in [0, 1], m in N_0.
// Two selection problems are solved by exhaustive search:
//   solve_pr: minimise T subject to resources <= budget
//   solve_pt: minimise one resource subject to T <= T_c

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mrwb/error.hpp"

namespace mrwb::dse {

enum class Resource : std::uint8_t { kluts, kffs, brams, dsps };

inline constexpr std::array<Resource, 4> kAllResources = {Resource::kluts, Resource::kffs,
                                                          Resource::brams, Resource::dsps};

constexpr std::string_view resource_name(Resource r) {
  switch (r) {
    case Resource::kluts: return "kluts";
    case Resource::kffs: return "kffs";
    case Resource::brams: return "brams";
    case Resource::dsps: return "dsps";
  }
  return "?";
}

inline std::optional<Resource> parse_resource(std::string_view s) {
  for (Resource r : kAllResources) {
    if (resource_name(r) == s) return r;
  }
  return std::nullopt;
}

/// DSP count assumed for entries that do not report one.
inline constexpr double kDefaultDsps = 2.0;

/// One measured library configuration. Runtimes in ms, LUTs and FFs in
/// thousands, BRAMs and DSPs as counts.
struct CutEntry {
  std::string name;
  double t_keygen_ms = 0.0;
  double t_sign_ms = 0.0;
  double t_open_ms = 0.0;
  double kluts = 0.0;
  double kffs = 0.0;
  double brams = 0.0;
  double dsps = kDefaultDsps;

  double resource(Resource r) const {
    switch (r) {
      case Resource::kluts: return kluts;
      case Resource::kffs: return kffs;
      case Resource::brams: return brams;
      case Resource::dsps: return dsps;
    }
    return 0.0;
  }

  void validate() const {
    if (name.empty()) throw ConfigError("cut entry without a name");
    for (double t : {t_keygen_ms, t_sign_ms, t_open_ms}) {
      if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError(name + ": runtimes must be > 0");
    }
    for (Resource r : kAllResources) {
      const double v = resource(r);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ConfigError(name + ": " + std::string(resource_name(r)) + " must be >= 0");
      }
    }
  }

  friend bool operator==(const CutEntry&, const CutEntry&) = default;
};

class BlockLibrary {
 public:
  explicit BlockLibrary(std::vector<CutEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ConfigError("block library is empty");
    std::set<std::string> names;
    for (const CutEntry& e : entries_) {
      e.validate();
      if (!names.insert(e.name).second) throw ConfigError("duplicate cut name '" + e.name + "'");
    }
  }

  const std::vector<CutEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  const CutEntry* find(std::string_view name) const {
    for (const CutEntry& e : entries_) {
      if (e.name == name) return &e;
    }
    return nullptr;
  }

  friend bool operator==(const BlockLibrary&, const BlockLibrary&) = default;

 private:
  std::vector<CutEntry> entries_;
};

/// sign_weight is the expected number of Sign operations per connection
/// (in [0, 1]); open_count the number of Open operations. keygen_weight is an
/// optional extension and defaults to 0 so T matches the usual definition.
struct PkiProfile {
  double sign_weight = 1.0;
  unsigned open_count = 1;
  double keygen_weight = 0.0;

  void validate() const {
    if (!(sign_weight >= 0.0 && sign_weight <= 1.0)) {
      throw ConfigError("sign_weight must lie in [0, 1]");
    }
    if (!(keygen_weight >= 0.0) || !std::isfinite(keygen_weight)) {
      throw ConfigError("keygen_weight must be >= 0");
    }
  }
};

/// Absent bounds are unconstrained.
struct ResourceBudget {
  std::optional<double> max_kluts;
  std::optional<double> max_kffs;
  std::optional<double> max_brams;
  std::optional<double> max_dsps;

  const std::optional<double>& bound(Resource r) const {
    switch (r) {
      case Resource::kluts: return max_kluts;
      case Resource::kffs: return max_kffs;
      case Resource::brams: return max_brams;
      case Resource::dsps: return max_dsps;
    }
    return max_dsps;
  }

  void validate() const {
    for (Resource r : kAllResources) {
      if (bound(r) && !(*bound(r) >= 0.0)) {
        throw ConfigError("budget max_" + std::string(resource_name(r)) + " must be >= 0");
      }
    }
  }

  bool admits(const CutEntry& e) const {
    for (Resource r : kAllResources) {
      if (bound(r) && e.resource(r) > *bound(r)) return false;
    }
    return true;
  }
};

inline double total_runtime(const CutEntry& e, const PkiProfile& p) {
  return p.sign_weight * e.t_sign_ms + static_cast<double>(p.open_count) * e.t_open_ms +
         p.keygen_weight * e.t_keygen_ms;
}

/// One evaluated library entry.
struct Candidate {
  std::string name;
  double t_ms = 0.0;
  double objective = 0.0;
  bool feasible = false;
  // For infeasible entries: the most exceeded constraint ("kluts", ..., or "t_ms").
  std::string violated;
  double violation_ratio = 0.0;  // value / bound of that constraint
};

struct SolveReport {
  std::optional<std::string> winner;
  double objective = 0.0;
  std::vector<Candidate> feasible;    // sorted best first
  std::vector<Candidate> infeasible;  // library order
  std::vector<Candidate> evaluated;   // every entry, library order
  // solve_pt only: the smallest T any entry achieves.
  std::optional<double> min_achievable_t_ms;

  bool is_feasible() const noexcept { return winner.has_value(); }
};

namespace detail {

inline double ratio(double value, double bound) {
  if (bound > 0.0) return value / bound;
  return value > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

inline void finish(SolveReport& report) {
  for (const Candidate& c : report.evaluated) {
    (c.feasible ? report.feasible : report.infeasible).push_back(c);
  }
}

}  // namespace detail

/// Minimise T subject to every bounded resource staying within budget.
/// Ties: fewer kLUTs, then fewer BRAMs, then name.
inline SolveReport solve_pr(const BlockLibrary& lib, const PkiProfile& p,
                            const ResourceBudget& budget) {
  p.validate();
  budget.validate();
  SolveReport report;
  for (const CutEntry& e : lib.entries()) {
    Candidate c{e.name, total_runtime(e, p), total_runtime(e, p), budget.admits(e), {}, 0.0};
    if (!c.feasible) {
      for (Resource r : kAllResources) {
        if (!budget.bound(r) || e.resource(r) <= *budget.bound(r)) continue;
        const double q = detail::ratio(e.resource(r), *budget.bound(r));
        if (c.violated.empty() || q > c.violation_ratio) {
          c.violated = std::string(resource_name(r));
          c.violation_ratio = q;
        }
      }
    }
    report.evaluated.push_back(std::move(c));
  }
  detail::finish(report);
  std::sort(report.feasible.begin(), report.feasible.end(),
            [&lib](const Candidate& a, const Candidate& b) {
              const CutEntry& ea = *lib.find(a.name);
              const CutEntry& eb = *lib.find(b.name);
              return std::tie(a.objective, ea.kluts, ea.brams, a.name) <
                     std::tie(b.objective, eb.kluts, eb.brams, b.name);
            });
  if (!report.feasible.empty()) {
    report.winner = report.feasible.front().name;
    report.objective = report.feasible.front().objective;
  }
  return report;
}

/// Minimise `objective` subject to T <= t_c_ms. Ties: smaller T, then name.
inline SolveReport solve_pt(const BlockLibrary& lib, const PkiProfile& p, double t_c_ms,
                            Resource objective) {
  p.validate();
  if (!std::isfinite(t_c_ms) || t_c_ms < 0.0) throw ConfigError("T_c must be a non-negative time");
  SolveReport report;
  for (const CutEntry& e : lib.entries()) {
    const double t = total_runtime(e, p);
    Candidate c{e.name, t, e.resource(objective), t <= t_c_ms, {}, 0.0};
    if (!c.feasible) {
      c.violated = "t_ms";
      c.violation_ratio = detail::ratio(t, t_c_ms);
    }
    if (!report.min_achievable_t_ms || t < *report.min_achievable_t_ms) report.min_achievable_t_ms = t;
    report.evaluated.push_back(std::move(c));
  }
  detail::finish(report);
  std::sort(report.feasible.begin(), report.feasible.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(a.objective, a.t_ms, a.name) < std::tie(b.objective, b.t_ms, b.name);
            });
  if (!report.feasible.empty()) {
    report.winner = report.feasible.front().name;
    report.objective = report.feasible.front().objective;
  }
  return report;
}

/// Entries not dominated in (T, resource), sorted by T ascending.
inline std::vector<CutEntry> pareto_front(const BlockLibrary& lib, const PkiProfile& p,
                                          Resource resource) {
  p.validate();
  std::vector<CutEntry> front;
  const auto& all = lib.entries();
  for (const CutEntry& e : all) {
    const double t = total_runtime(e, p);
    const double r = e.resource(resource);
    const bool dominated = std::any_of(all.begin(), all.end(), [&](const CutEntry& o) {
      const double ot = total_runtime(o, p);
      const double orr = o.resource(resource);
      return ot <= t && orr <= r && (ot < t || orr < r);
    });
    if (!dominated) front.push_back(e);
  }
  std::sort(front.begin(), front.end(), [&p, resource](const CutEntry& a, const CutEntry& b) {
    return std::make_tuple(total_runtime(a, p), a.resource(resource), a.name) <
           std::make_tuple(total_runtime(b, p), b.resource(resource), b.name);
  });
  return front;
}

}  // namespace mrwb::dse
