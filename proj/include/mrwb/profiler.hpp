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

#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mrwb/instrumentation.hpp"
#include "mrwb/mpcith.hpp"
#include "mrwb/params.hpp"
#include "mrwb/software_profile.hpp"

namespace mrwb {

enum class BreakdownFormat { table, csv };

inline std::string emit_breakdown(const SoftwareProfile& p, BreakdownFormat format) {
  return format == BreakdownFormat::csv ? profile_to_csv(p) : profile_to_table(p);
}

struct ProfileOptions {
  std::size_t runs = 1000;
  std::uint64_t seed = 0x6d72'7762;
  // Stages whose mean stays below this are folded into "others".
  double min_stage_ms = 0.010;
};

namespace detail {

struct StageSamples {
  std::array<std::vector<double>, instr::kStageCount> stage_ms;
  std::vector<double> wall_ms;
};

inline void record_run(StageSamples& out, const instr::ExclusiveTimer& timer, double wall_ms) {
  double instrumented = 0.0;
  for (instr::Stage s : instr::kAllStages) {
    if (s == instr::Stage::others) continue;
    const double ms = 1000.0 * timer.seconds(s);
    out.stage_ms[instr::index_of(s)].push_back(ms);
    instrumented += ms;
  }
  out.stage_ms[instr::index_of(instr::Stage::others)].push_back(std::max(0.0, wall_ms - instrumented));
  out.wall_ms.push_back(wall_ms);
}

inline StageStats summarize(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  const double sd = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
  return {mean, sd};
}

inline FunctionProfile to_function_profile(const StageSamples& samples, double min_stage_ms) {
  FunctionProfile fp;
  for (instr::Stage s : instr::kAllStages) fp[s] = summarize(samples.stage_ms[instr::index_of(s)]);
  auto& others = fp[instr::Stage::others];
  for (instr::Stage s : instr::kAllStages) {
    if (s == instr::Stage::others || fp[s].ms >= min_stage_ms) continue;
    others.ms += fp[s].ms;
    others.stddev_ms = std::hypot(others.stddev_ms, fp[s].stddev_ms);
    fp[s] = {};
  }
  return fp;
}

}  // namespace detail

/// Measures exclusive per-stage software time of KeyGen, Sign and Open,
/// averaged over `runs` executions with fresh random keys and messages.
/// Single-threaded: timing attribution relies on the thread-local recorder.
inline SoftwareProfile profile(const ParameterSet& params, const ProfileOptions& opts = {}) {
  params.validate();
  if (opts.runs == 0) throw ConfigError("profile: runs must be at least 1");
  using Clock = std::chrono::steady_clock;
  std::mt19937_64 rng(opts.seed);
  auto random_bytes = [&rng] {
    Randomness r{};
    for (auto& b : r) b = static_cast<std::uint8_t>(rng());
    return r;
  };

  std::array<detail::StageSamples, 3> samples;
  instr::ExclusiveTimer timer;
  auto timed = [&](DsaFunction f, auto&& body) {
    timer.reset();
    decltype(body()) result = [&] {
      instr::ScopedRecorder rec(timer);
      const auto start = Clock::now();
      auto value = body();
      const double wall = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      detail::record_run(samples[index_of(f)], timer, wall);
      return value;
    }();
    return result;
  };

  // Each function is measured in its own batch of runs so one function's
  // allocations and cache footprint do not bleed into the next.
  std::vector<KeyPair> keys;
  std::vector<Randomness> messages;
  keys.reserve(opts.runs);
  messages.reserve(opts.runs);
  for (std::size_t run = 0; run < opts.runs; ++run) {
    const Randomness key_seed = random_bytes();
    keys.push_back(timed(DsaFunction::keygen, [&] { return keygen(params, key_seed); }));
    messages.push_back(random_bytes());
  }
  for (std::size_t run = 0; run < opts.runs; ++run) {
    const Randomness sign_seed = random_bytes();
    timed(DsaFunction::sign, [&] { return sign(keys[run].sk, messages[run], sign_seed); });
  }
  for (std::size_t run = 0; run < opts.runs; ++run) {
    const Signature sig = sign(keys[run].sk, messages[run], random_bytes());
    const Verdict v = timed(DsaFunction::open, [&] { return open(keys[run].pk, messages[run], sig); });
    if (v != Verdict::accept) throw ProtocolError("profile: honest signature rejected");
  }

  std::array<FunctionProfile, 3> fns;
  for (DsaFunction f : kAllFunctions) {
    fns[index_of(f)] = detail::to_function_profile(samples[index_of(f)], opts.min_stage_ms);
  }
  return SoftwareProfile(fns);
}

}  // namespace mrwb
