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

// Stage instrumentation shared by the field kernels, the sponge and the
// profiler. Kernels open a StageScope; when no recorder is installed on the
// current thread the scope costs one thread_local load.

#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace mrwb::instr {

enum class Stage : std::uint8_t {
  mat_arith,
  scalar_mat_sum,
  mat_prod,
  keccak_permute,
  keccak_squeeze,
  keccak_absorb,
  others,
};

inline constexpr std::size_t kStageCount = 7;

// Table-order listing.
inline constexpr std::array<Stage, kStageCount> kAllStages = {
    Stage::mat_arith,      Stage::scalar_mat_sum, Stage::mat_prod,
    Stage::keccak_permute, Stage::keccak_squeeze, Stage::keccak_absorb,
    Stage::others,
};

constexpr std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::mat_arith: return "mat_arith";
    case Stage::scalar_mat_sum: return "scalar_mat_sum";
    case Stage::mat_prod: return "mat_prod";
    case Stage::keccak_permute: return "keccak_permute";
    case Stage::keccak_squeeze: return "keccak_squeeze";
    case Stage::keccak_absorb: return "keccak_absorb";
    case Stage::others: return "others";
  }
  return "?";
}

inline std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (stage_name(s) == name) return s;
  }
  return std::nullopt;
}

constexpr std::size_t index_of(Stage s) { return static_cast<std::size_t>(s); }

constexpr bool is_keccak(Stage s) {
  return s == Stage::keccak_permute || s == Stage::keccak_squeeze ||
         s == Stage::keccak_absorb;
}

/// Receives stage enter/leave events. `units` is the amount of work in the
/// stage's natural unit (scalar-column products for matrix kernels, one per
/// permutation for Keccak).
class Recorder {
 public:
  virtual ~Recorder() = default;
  virtual void enter(Stage stage, std::uint64_t units) = 0;
  virtual void leave(Stage stage) = 0;
};

inline Recorder*& active_recorder() noexcept {
  thread_local Recorder* recorder = nullptr;
  return recorder;
}

/// Installs a recorder on the current thread for the lifetime of the object.
class ScopedRecorder {
 public:
  explicit ScopedRecorder(Recorder& r) noexcept : previous_(active_recorder()) {
    active_recorder() = &r;
  }
  ~ScopedRecorder() { active_recorder() = previous_; }
  ScopedRecorder(const ScopedRecorder&) = delete;
  ScopedRecorder& operator=(const ScopedRecorder&) = delete;

 private:
  Recorder* previous_;
};

class StageScope {
 public:
  explicit StageScope(Stage stage, std::uint64_t units = 1) noexcept
      : recorder_(active_recorder()), stage_(stage) {
    if (recorder_ != nullptr) recorder_->enter(stage_, units);
  }
  ~StageScope() {
    if (recorder_ != nullptr) recorder_->leave(stage_);
  }
  StageScope(const StageScope&) = delete;
  StageScope& operator=(const StageScope&) = delete;

 private:
  Recorder* recorder_;
  Stage stage_;
};

/// Accumulates exclusive wall time per stage: time spent in a nested stage is
/// charged to the nested stage only.
class ExclusiveTimer final : public Recorder {
 public:
  using Clock = std::chrono::steady_clock;

  void enter(Stage stage, std::uint64_t) override {
    const auto now = Clock::now();
    if (!stack_.empty()) charge(stack_.back(), now);
    stack_.push_back({stage, now});
  }

  void leave(Stage) override {
    const auto now = Clock::now();
    if (stack_.empty()) return;
    charge(stack_.back(), now);
    stack_.pop_back();
    if (!stack_.empty()) stack_.back().since = now;
  }

  double seconds(Stage s) const { return totals_[index_of(s)]; }

  void reset() {
    totals_.fill(0.0);
    stack_.clear();
  }

 private:
  struct Frame {
    Stage stage;
    Clock::time_point since;
  };

  void charge(Frame& f, Clock::time_point now) {
    totals_[index_of(f.stage)] +=
        std::chrono::duration<double>(now - f.since).count();
    f.since = now;
  }

  std::array<double, kStageCount> totals_{};
  std::vector<Frame> stack_;
};

/// Counts stage invocations as a histogram {units per call -> calls}. Used to
/// derive host-independent accelerator workloads.
class WorkloadCounter final : public Recorder {
 public:
  void enter(Stage stage, std::uint64_t units) override {
    ++histograms_[index_of(stage)][units];
  }
  void leave(Stage) override {}

  const std::map<std::uint64_t, std::uint64_t>& histogram(Stage s) const {
    return histograms_[index_of(s)];
  }

  std::uint64_t calls(Stage s) const {
    std::uint64_t n = 0;
    for (const auto& [units, count] : histogram(s)) n += count;
    return n;
  }

 private:
  std::array<std::map<std::uint64_t, std::uint64_t>, kStageCount> histograms_;
};

}  // namespace mrwb::instr
