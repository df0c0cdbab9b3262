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

// Functional and cycle-cost model of the accelerator blocks:
//
//  * the E = sum(alpha * M) column engine. Matrices are stored one column per
//    60-bit word (15 nibbles, row j at bits 4j..4j+3); each step performs up
//    to P scalar-column products, so a call costs ceil(k * cols / P) steps
//    plus the pipeline latency.
//  * the Keccak permutation, 24 cycles per invocation.
//
// predict_cut_runtime combines those cycle counts with a software profile.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mrwb/error.hpp"
#include "mrwb/gf16.hpp"
#include "mrwb/instrumentation.hpp"
#include "mrwb/matrix.hpp"
#include "mrwb/mpcith.hpp"
#include "mrwb/params.hpp"
#include "mrwb/software_profile.hpp"

namespace mrwb::accel {

inline constexpr std::size_t kPackedRows = 15;
inline constexpr std::uint64_t kWordMask = 0x0FFF'FFFF'FFFF'FFFFULL;  // low 60 bits
inline constexpr std::uint64_t kKeccakPermuteCycles = 24;

/// One 60-bit word per column.
struct PackedMatrix {
  std::size_t cols = 0;
  std::vector<std::uint64_t> words;

  friend bool operator==(const PackedMatrix&, const PackedMatrix&) = default;
};

inline PackedMatrix pack(const Matrix& m) {
  if (m.rows() != kPackedRows) {
    throw DimensionError("pack: expected " + std::to_string(kPackedRows) + " rows, got " + m.shape());
  }
  PackedMatrix p{m.cols(), std::vector<std::uint64_t>(m.cols(), 0)};
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::uint64_t w = 0;
    for (std::size_t j = 0; j < kPackedRows; ++j) {
      w |= static_cast<std::uint64_t>(m(j, c).value()) << (4 * j);
    }
    p.words[c] = w;
  }
  return p;
}

inline Matrix unpack(const PackedMatrix& p) {
  if (p.words.size() != p.cols) throw DimensionError("unpack: word count does not match cols");
  Matrix m(kPackedRows, p.cols);
  for (std::size_t c = 0; c < p.cols; ++c) {
    if ((p.words[c] & ~kWordMask) != 0) throw DomainError("unpack: upper 4 bits of word set");
    for (std::size_t j = 0; j < kPackedRows; ++j) m(j, c) = Gf16::from_nibble(p.words[c] >> (4 * j));
  }
  return m;
}

/// Multiplies all 15 nibbles of `word` by x in GF(16): shift each nibble left
/// and fold the carried-out x^4 back as x + 1.
constexpr std::uint64_t packed_times_x(std::uint64_t word) noexcept {
  constexpr std::uint64_t kLow3 = 0x0777'7777'7777'7777ULL;
  constexpr std::uint64_t kOnes = 0x0111'1111'1111'1111ULL;
  const std::uint64_t carry = (word >> 3) & kOnes;
  return ((word & kLow3) << 1) ^ (carry * 0x3);
}

/// Scalar-column product: every nibble of `word` times `alpha`.
constexpr std::uint64_t packed_scale(std::uint64_t word, Gf16 alpha) noexcept {
  std::uint64_t acc = 0;
  for (unsigned bit = 0; bit < 4; ++bit) {
    if ((alpha.value() >> bit) & 1U) acc ^= word;
    word = packed_times_x(word);
  }
  return acc;
}

struct AccelConfig {
  unsigned parallelism = 1;
  double clock_mhz = 125.0;
  unsigned pipeline_latency = 4;

  void validate() const {
    if (parallelism == 0) throw ConfigError("accel.parallelism must be positive");
    if (!(clock_mhz > 0.0)) throw ConfigError("accel.clock_mhz must be positive");
  }

  friend bool operator==(const AccelConfig&, const AccelConfig&) = default;
};

struct CyclePrediction {
  std::uint64_t cycles = 0;
  double time_ms = 0.0;

  static CyclePrediction at(std::uint64_t cycles, double clock_mhz) {
    return {cycles, static_cast<double>(cycles) / (clock_mhz * 1000.0)};
  }
};

constexpr std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

/// Cycles of one sum-engine call performing `products` scalar-column products.
inline std::uint64_t engine_cycles(std::uint64_t products, const AccelConfig& cfg) {
  return ceil_div(products, cfg.parallelism) + cfg.pipeline_latency;
}

struct AccelResult {
  Matrix result;
  CyclePrediction prediction;
};

/// Simulates the column engine step by step. The functional result matches
/// scalar_mat_sum exactly.
inline AccelResult accel_scalar_mat_sum(std::span<const Gf16> alphas,
                                        std::span<const PackedMatrix> mats,
                                        const AccelConfig& cfg) {
  cfg.validate();
  if (alphas.empty() || mats.empty()) throw DimensionError("accel_scalar_mat_sum: empty input");
  if (alphas.size() != mats.size()) {
    throw DimensionError("accel_scalar_mat_sum: scalar count does not match matrix count");
  }
  const std::size_t cols = mats.front().cols;
  for (const PackedMatrix& m : mats) {
    if (m.cols != cols || m.words.size() != cols) {
      throw DimensionError("accel_scalar_mat_sum: inconsistent packed shapes");
    }
  }
  PackedMatrix e{cols, std::vector<std::uint64_t>(cols, 0)};
  const std::uint64_t products = static_cast<std::uint64_t>(alphas.size()) * cols;
  std::uint64_t steps = 0;
  for (std::uint64_t next = 0; next < products; ++steps) {
    const std::uint64_t lane_end = std::min<std::uint64_t>(products, next + cfg.parallelism);
    for (; next < lane_end; ++next) {
      const std::size_t j = next / cols;
      const std::size_t c = next % cols;
      e.words[c] ^= packed_scale(mats[j].words[c], alphas[j]);
    }
  }
  return {unpack(e), CyclePrediction::at(steps + cfg.pipeline_latency, cfg.clock_mhz)};
}

inline CyclePrediction keccak_cycles(std::uint64_t invocations, const AccelConfig& cfg,
                                     std::uint64_t overhead_per_invocation = 0) {
  return CyclePrediction::at(invocations * (kKeccakPermuteCycles + overhead_per_invocation),
                             cfg.clock_mhz);
}

/// Stages with a hardware model.
constexpr bool is_accelerable(instr::Stage s) {
  return s == instr::Stage::scalar_mat_sum || s == instr::Stage::mat_prod || instr::is_keccak(s);
}

/// One hardware/software partition: the stages moved to hardware, per DSA
/// function. With `concurrent` set the accelerator runs alongside the
/// remaining Phase-1 software (the PRNG-driven Keccak stages).
struct CutComposition {
  std::string name;
  std::array<std::vector<instr::Stage>, 3> accelerated{};
  bool concurrent = true;

  const std::vector<instr::Stage>& stages(DsaFunction f) const { return accelerated[index_of(f)]; }

  bool accelerates(DsaFunction f, instr::Stage s) const {
    const auto& v = stages(f);
    return std::find(v.begin(), v.end(), s) != v.end();
  }

  /// Builds from stage names; unknown or unmodelled stages are a ConfigError.
  static CutComposition from_names(std::string name,
                                   const std::array<std::vector<std::string>, 3>& stage_names,
                                   bool concurrent = true) {
    CutComposition cut{std::move(name), {}, concurrent};
    for (DsaFunction f : kAllFunctions) {
      for (const std::string& s : stage_names[index_of(f)]) {
        const auto stage = instr::parse_stage(s);
        if (!stage) throw ConfigError(cut.name + ": unknown stage '" + s + "'");
        if (!is_accelerable(*stage)) {
          throw ConfigError(cut.name + ": stage '" + s + "' has no hardware model");
        }
        if (!cut.accelerates(f, *stage)) cut.accelerated[index_of(f)].push_back(*stage);
      }
    }
    return cut;
  }

  friend bool operator==(const CutComposition&, const CutComposition&) = default;
};

/// Host-independent operation counts of one KeyGen / Sign / Open execution.
struct Workload {
  std::array<instr::WorkloadCounter, 3> counters;

  const instr::WorkloadCounter& operator[](DsaFunction f) const { return counters[index_of(f)]; }
};

/// Runs each DSA function once at `params` and records stage invocations.
/// Counts do not depend on the sampled keys.
inline Workload measure_workload(const ParameterSet& params) {
  params.validate();
  Workload w;
  Randomness seed{};
  seed.fill(0x5A);
  const std::array<std::uint8_t, 32> message{};
  KeyPair kp = [&] {
    instr::ScopedRecorder rec(w.counters[index_of(DsaFunction::keygen)]);
    return keygen(params, seed);
  }();
  Signature sig = [&] {
    instr::ScopedRecorder rec(w.counters[index_of(DsaFunction::sign)]);
    return sign(kp.sk, message, seed);
  }();
  {
    instr::ScopedRecorder rec(w.counters[index_of(DsaFunction::open)]);
    if (open(kp.pk, message, sig) != Verdict::accept) {
      throw ProtocolError("measure_workload: reference signature rejected");
    }
  }
  return w;
}

/// Cycles spent by the accelerated stages of one function.
inline std::uint64_t hardware_cycles(const CutComposition& cut, DsaFunction f,
                                     const Workload& work, const AccelConfig& cfg) {
  std::uint64_t cycles = 0;
  for (instr::Stage s : {instr::Stage::scalar_mat_sum, instr::Stage::mat_prod}) {
    if (!cut.accelerates(f, s)) continue;
    for (const auto& [units, calls] : work[f].histogram(s)) cycles += calls * engine_cycles(units, cfg);
  }
  if (cut.accelerates(f, instr::Stage::keccak_permute)) {
    cycles += keccak_cycles(work[f].calls(instr::Stage::keccak_permute), cfg).cycles;
  }
  return cycles;
}

struct RuntimePrediction {
  std::array<double, 3> ms{};

  double operator[](DsaFunction f) const { return ms[index_of(f)]; }
  double keygen_ms() const { return ms[0]; }
  double sign_ms() const { return ms[1]; }
  double open_ms() const { return ms[2]; }
};

/// t = (software stages left in SW) + max(0, HW time - overlappable SW time).
inline RuntimePrediction predict_cut_runtime(const CutComposition& cut, const Workload& work,
                                             const SoftwareProfile& profile,
                                             const AccelConfig& cfg) {
  cfg.validate();
  RuntimePrediction out;
  for (DsaFunction f : kAllFunctions) {
    const FunctionProfile& fp = profile[f];
    double software = 0.0;
    double overlappable = 0.0;
    for (instr::Stage s : instr::kAllStages) {
      if (cut.accelerates(f, s)) continue;
      software += fp[s].ms;
      if (instr::is_keccak(s)) overlappable += fp[s].ms;
    }
    const double hardware = CyclePrediction::at(hardware_cycles(cut, f, work, cfg), cfg.clock_mhz).time_ms;
    const double hidden = cut.concurrent ? overlappable : 0.0;
    out.ms[index_of(f)] = software + std::max(0.0, hardware - hidden);
  }
  return out;
}

inline RuntimePrediction predict_cut_runtime(const CutComposition& cut, const ParameterSet& params,
                                             const SoftwareProfile& profile,
                                             const AccelConfig& cfg) {
  return predict_cut_runtime(cut, measure_workload(params), profile, cfg);
}

}  // namespace mrwb::accel
