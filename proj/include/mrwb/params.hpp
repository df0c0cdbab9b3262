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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mrwb/error.hpp"

namespace mrwb {

/// Shape of one MinRank instance plus the MPC-in-the-head protocol width.
///
/// Matrices M_0..M_k are m_rows x n_cols; the secret kernel K is
/// r x (n_cols - r); each of the tau rounds simulates n_parties parties.
/// proj_rows is the height s of the per-round projection challenge.
struct ParameterSet {
  std::uint16_t q = 16;
  std::uint16_t m_rows = 15;
  std::uint16_t n_cols = 15;
  std::uint16_t k = 15;
  std::uint16_t r = 6;
  std::uint16_t n_parties = 4;
  std::uint16_t tau = 8;
  std::uint16_t proj_rows = 6;

  std::size_t left_cols() const noexcept { return n_cols - r; }

  void validate() const {
    if (q != 16) throw ConfigError("params.q: only q=16 is supported");
    if (m_rows == 0) throw ConfigError("params.m_rows must be positive");
    if (r == 0 || r >= n_cols) throw ConfigError("params.r must satisfy 0 < r < n_cols");
    if (k == 0) throw ConfigError("params.k must be at least 1");
    if (n_parties < 2 || n_parties > 256) {
      throw ConfigError("params.n_parties must be in [2, 256]");
    }
    if (tau == 0) throw ConfigError("params.tau must be at least 1");
    if (proj_rows == 0) throw ConfigError("params.proj_rows must be positive");
  }

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;

  /// Small parameters for fast tests and demos.
  static ParameterSet desk() { return {16, 15, 15, 15, 6, 4, 8, 6}; }

  /// Matrix dimensions and protocol width in the range of the level-I sets,
  /// for realistic profiling workloads.
  static ParameterSet ia_like() { return {16, 15, 15, 78, 6, 16, 39, 6}; }

  static std::optional<ParameterSet> preset(std::string_view name) {
    if (name == "desk") return desk();
    if (name == "ia-like") return ia_like();
    return std::nullopt;
  }

  std::string to_string() const {
    return "q=" + std::to_string(q) + " m=" + std::to_string(m_rows) +
           " n=" + std::to_string(n_cols) + " k=" + std::to_string(k) +
           " r=" + std::to_string(r) + " N=" + std::to_string(n_parties) +
           " tau=" + std::to_string(tau) + " s=" + std::to_string(proj_rows);
  }
};

}  // namespace mrwb
