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

#include <cstdint>
#include <random>
#include <vector>

#include "mrwb/matrix.hpp"
#include "mrwb/mpcith.hpp"

namespace mrwb::testing {

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (Gf16& e : m.data()) e = Gf16::from_nibble(static_cast<unsigned>(rng()));
  return m;
}

inline std::vector<Gf16> random_elements(std::mt19937_64& rng, std::size_t n) {
  std::vector<Gf16> v(n);
  for (Gf16& e : v) e = Gf16::from_nibble(static_cast<unsigned>(rng()));
  return v;
}

inline Randomness random_bytes32(std::mt19937_64& rng) {
  Randomness r{};
  for (auto& b : r) b = static_cast<std::uint8_t>(rng());
  return r;
}

// Bit-serial GF(16) product, independent of the lookup tables.
inline Gf16 slow_mul(Gf16 a, Gf16 b) {
  unsigned x = a.value(), acc = 0;
  for (unsigned i = 0; i < 4; ++i) {
    if ((b.value() >> i) & 1U) acc ^= x;
    x <<= 1;
    if (x & 0x10U) x ^= 0x13U;
  }
  return Gf16(acc);
}

inline Matrix naive_mul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      unsigned acc = 0;
      for (std::size_t t = 0; t < a.cols(); ++t) acc ^= slow_mul(a(i, t), b(t, j)).value();
      out(i, j) = Gf16(acc);
    }
  }
  return out;
}

inline Matrix naive_scalar_sum(const std::vector<Gf16>& alphas, const std::vector<Matrix>& mats) {
  Matrix out(mats.front().rows(), mats.front().cols());
  for (std::size_t j = 0; j < mats.size(); ++j) {
    for (std::size_t r = 0; r < out.rows(); ++r) {
      for (std::size_t c = 0; c < out.cols(); ++c) {
        out(r, c) = Gf16(out(r, c).value() ^ slow_mul(alphas[j], mats[j](r, c)).value());
      }
    }
  }
  return out;
}

}  // namespace mrwb::testing
