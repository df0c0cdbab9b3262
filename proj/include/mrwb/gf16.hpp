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

// Arithmetic in GF(16) = GF(2)[x] / (x^4 + x + 1).

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mrwb/error.hpp"

namespace mrwb {

inline constexpr unsigned kGf16Modulus = 0b1'0011;  // x^4 + x + 1

/// One element of GF(16), stored as its 4-bit polynomial coefficients.
class Gf16 {
 public:
  constexpr Gf16() = default;

  /// Throws DomainError for values >= 16.
  explicit constexpr Gf16(unsigned value) : value_(static_cast<std::uint8_t>(value)) {
    if (value > 0xF) throw DomainError("GF(16) element out of range: " + std::to_string(value));
  }

  /// Keeps the low nibble of `bits`.
  static constexpr Gf16 from_nibble(unsigned bits) noexcept {
    Gf16 e;
    e.value_ = static_cast<std::uint8_t>(bits & 0xF);
    return e;
  }

  constexpr std::uint8_t value() const noexcept { return value_; }
  constexpr bool is_zero() const noexcept { return value_ == 0; }

  friend constexpr bool operator==(Gf16, Gf16) = default;

 private:
  std::uint8_t value_ = 0;
};

namespace detail {

// Carry-less product of two nibbles reduced by the field modulus.
constexpr std::uint8_t clmul_reduce(unsigned a, unsigned b) {
  unsigned product = 0;
  for (unsigned bit = 0; bit < 4; ++bit) {
    if ((b >> bit) & 1U) product ^= a << bit;
  }
  for (int bit = 6; bit >= 4; --bit) {
    if ((product >> bit) & 1U) product ^= kGf16Modulus << (bit - 4);
  }
  return static_cast<std::uint8_t>(product);
}

constexpr std::array<std::uint8_t, 256> make_mul_table() {
  std::array<std::uint8_t, 256> table{};
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned b = 0; b < 16; ++b) table[(a << 4) | b] = clmul_reduce(a, b);
  }
  return table;
}

constexpr std::array<std::uint8_t, 16> make_inv_table(const std::array<std::uint8_t, 256>& mul) {
  std::array<std::uint8_t, 16> inv{};
  for (unsigned a = 1; a < 16; ++a) {
    for (unsigned b = 1; b < 16; ++b) {
      if (mul[(a << 4) | b] == 1) inv[a] = static_cast<std::uint8_t>(b);
    }
  }
  return inv;
}

}  // namespace detail

/// Indexed by (a << 4) | b.
inline constexpr std::array<std::uint8_t, 256> kGf16MulTable = detail::make_mul_table();
inline constexpr std::array<std::uint8_t, 16> kGf16InvTable = detail::make_inv_table(kGf16MulTable);

constexpr Gf16 gf16_add(Gf16 a, Gf16 b) noexcept {
  return Gf16::from_nibble(a.value() ^ b.value());
}

constexpr Gf16 gf16_mul(Gf16 a, Gf16 b) noexcept {
  return Gf16::from_nibble(kGf16MulTable[(a.value() << 4) | b.value()]);
}

constexpr Gf16 gf16_inv(Gf16 a) {
  if (a.is_zero()) throw DomainError("GF(16) zero has no multiplicative inverse");
  return Gf16::from_nibble(kGf16InvTable[a.value()]);
}

constexpr Gf16 operator+(Gf16 a, Gf16 b) noexcept { return gf16_add(a, b); }
constexpr Gf16 operator-(Gf16 a, Gf16 b) noexcept { return gf16_add(a, b); }
constexpr Gf16 operator*(Gf16 a, Gf16 b) noexcept { return gf16_mul(a, b); }
constexpr Gf16& operator+=(Gf16& a, Gf16 b) noexcept { return a = a + b; }

/// Packs elements two per byte, high nibble first; an odd tail leaves the low
/// nibble of the last byte zero.
inline std::vector<std::uint8_t> pack_nibbles(std::span<const Gf16> elements) {
  std::vector<std::uint8_t> out((elements.size() + 1) / 2, 0);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const unsigned shift = (i % 2 == 0) ? 4 : 0;
    out[i / 2] |= static_cast<std::uint8_t>(elements[i].value() << shift);
  }
  return out;
}

/// Inverse of pack_nibbles. Returns false if `bytes` has the wrong length or
/// a non-zero padding nibble.
inline bool unpack_nibbles(std::span<const std::uint8_t> bytes, std::size_t count,
                           std::vector<Gf16>& out) {
  if (bytes.size() != (count + 1) / 2) return false;
  if (count % 2 == 1 && (bytes.back() & 0x0F) != 0) return false;
  out.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned shift = (i % 2 == 0) ? 4 : 0;
    out[i] = Gf16::from_nibble(bytes[i / 2] >> shift);
  }
  return true;
}

}  // namespace mrwb
