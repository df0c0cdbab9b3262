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

// Keccak-f[1600], a SHAKE-style sponge, the 32-byte protocol hash and the
// seeded PRNG.
//
//   hash mode: rate 136 (SHAKE256 padding), 32-byte digests
//   PRNG mode: rate 168 (SHAKE128 padding), unbounded stream
//
// Every hash / PRNG instance absorbs a one-byte domain tag first.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrwb/error.hpp"
#include "mrwb/gf16.hpp"
#include "mrwb/instrumentation.hpp"

namespace mrwb {

using KeccakLanes = std::array<std::uint64_t, 25>;
using Digest = std::array<std::uint8_t, 32>;
using ByteSpan = std::span<const std::uint8_t>;

namespace detail {

inline constexpr std::array<std::uint64_t, 24> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

}  // namespace detail

inline constexpr int kKeccakRounds = 24;

/// The 24-round Keccak-f[1600] permutation, in place. Lane (x, y) is s[x + 5y].
inline void keccak_f1600(KeccakLanes& s) {
  instr::StageScope scope(instr::Stage::keccak_permute);
  std::uint64_t a0 = s[0], a1 = s[1], a2 = s[2], a3 = s[3], a4 = s[4], a5 = s[5], a6 = s[6], a7 = s[7], a8 = s[8], a9 = s[9], a10 = s[10], a11 = s[11], a12 = s[12], a13 = s[13], a14 = s[14], a15 = s[15], a16 = s[16], a17 = s[17], a18 = s[18], a19 = s[19], a20 = s[20], a21 = s[21], a22 = s[22], a23 = s[23], a24 = s[24];
  for (int round = 0; round < kKeccakRounds; ++round) {
    const std::uint64_t c0 = a0 ^ a5 ^ a10 ^ a15 ^ a20;
    const std::uint64_t c1 = a1 ^ a6 ^ a11 ^ a16 ^ a21;
    const std::uint64_t c2 = a2 ^ a7 ^ a12 ^ a17 ^ a22;
    const std::uint64_t c3 = a3 ^ a8 ^ a13 ^ a18 ^ a23;
    const std::uint64_t c4 = a4 ^ a9 ^ a14 ^ a19 ^ a24;
    const std::uint64_t d0 = c4 ^ std::rotl(c1, 1);
    const std::uint64_t d1 = c0 ^ std::rotl(c2, 1);
    const std::uint64_t d2 = c1 ^ std::rotl(c3, 1);
    const std::uint64_t d3 = c2 ^ std::rotl(c4, 1);
    const std::uint64_t d4 = c3 ^ std::rotl(c0, 1);
    const std::uint64_t b0 = a0 ^ d0;
    const std::uint64_t b16 = std::rotl(a5 ^ d0, 36);
    const std::uint64_t b7 = std::rotl(a10 ^ d0, 3);
    const std::uint64_t b23 = std::rotl(a15 ^ d0, 41);
    const std::uint64_t b14 = std::rotl(a20 ^ d0, 18);
    const std::uint64_t b10 = std::rotl(a1 ^ d1, 1);
    const std::uint64_t b1 = std::rotl(a6 ^ d1, 44);
    const std::uint64_t b17 = std::rotl(a11 ^ d1, 10);
    const std::uint64_t b8 = std::rotl(a16 ^ d1, 45);
    const std::uint64_t b24 = std::rotl(a21 ^ d1, 2);
    const std::uint64_t b20 = std::rotl(a2 ^ d2, 62);
    const std::uint64_t b11 = std::rotl(a7 ^ d2, 6);
    const std::uint64_t b2 = std::rotl(a12 ^ d2, 43);
    const std::uint64_t b18 = std::rotl(a17 ^ d2, 15);
    const std::uint64_t b9 = std::rotl(a22 ^ d2, 61);
    const std::uint64_t b5 = std::rotl(a3 ^ d3, 28);
    const std::uint64_t b21 = std::rotl(a8 ^ d3, 55);
    const std::uint64_t b12 = std::rotl(a13 ^ d3, 25);
    const std::uint64_t b3 = std::rotl(a18 ^ d3, 21);
    const std::uint64_t b19 = std::rotl(a23 ^ d3, 56);
    const std::uint64_t b15 = std::rotl(a4 ^ d4, 27);
    const std::uint64_t b6 = std::rotl(a9 ^ d4, 20);
    const std::uint64_t b22 = std::rotl(a14 ^ d4, 39);
    const std::uint64_t b13 = std::rotl(a19 ^ d4, 8);
    const std::uint64_t b4 = std::rotl(a24 ^ d4, 14);
    a0 = b0 ^ (~b1 & b2);
    a1 = b1 ^ (~b2 & b3);
    a2 = b2 ^ (~b3 & b4);
    a3 = b3 ^ (~b4 & b0);
    a4 = b4 ^ (~b0 & b1);
    a5 = b5 ^ (~b6 & b7);
    a6 = b6 ^ (~b7 & b8);
    a7 = b7 ^ (~b8 & b9);
    a8 = b8 ^ (~b9 & b5);
    a9 = b9 ^ (~b5 & b6);
    a10 = b10 ^ (~b11 & b12);
    a11 = b11 ^ (~b12 & b13);
    a12 = b12 ^ (~b13 & b14);
    a13 = b13 ^ (~b14 & b10);
    a14 = b14 ^ (~b10 & b11);
    a15 = b15 ^ (~b16 & b17);
    a16 = b16 ^ (~b17 & b18);
    a17 = b17 ^ (~b18 & b19);
    a18 = b18 ^ (~b19 & b15);
    a19 = b19 ^ (~b15 & b16);
    a20 = b20 ^ (~b21 & b22);
    a21 = b21 ^ (~b22 & b23);
    a22 = b22 ^ (~b23 & b24);
    a23 = b23 ^ (~b24 & b20);
    a24 = b24 ^ (~b20 & b21);
    a0 ^= detail::kRoundConstants[round];
  }
  s[0] = a0;
  s[1] = a1;
  s[2] = a2;
  s[3] = a3;
  s[4] = a4;
  s[5] = a5;
  s[6] = a6;
  s[7] = a7;
  s[8] = a8;
  s[9] = a9;
  s[10] = a10;
  s[11] = a11;
  s[12] = a12;
  s[13] = a13;
  s[14] = a14;
  s[15] = a15;
  s[16] = a16;
  s[17] = a17;
  s[18] = a18;
  s[19] = a19;
  s[20] = a20;
  s[21] = a21;
  s[22] = a22;
  s[23] = a23;
  s[24] = a24;
}

/// Byte-oriented sponge over Keccak-f[1600]. Once squeezing starts no further
/// input is accepted.
class Sponge {
 public:
  enum class Phase { absorbing, squeezing };

  static constexpr std::size_t kHashRate = 136;
  static constexpr std::size_t kPrngRate = 168;
  static constexpr std::uint8_t kShakePadding = 0x1F;

  explicit Sponge(std::size_t rate) : rate_(rate) {
    if (rate != kHashRate && rate != kPrngRate) {
      throw ConfigError("sponge rate must be 136 or 168, got " + std::to_string(rate));
    }
  }

  void absorb(ByteSpan input) {
    if (phase_ != Phase::absorbing) throw std::logic_error("sponge: absorb after squeeze");
    instr::StageScope scope(instr::Stage::keccak_absorb);
    for (std::uint8_t byte : input) {
      xor_byte(position_, byte);
      if (++position_ == rate_) {
        keccak_f1600(lanes_);
        position_ = 0;
      }
    }
  }

  void squeeze(std::span<std::uint8_t> out) {
    instr::StageScope scope(instr::Stage::keccak_squeeze);
    if (phase_ == Phase::absorbing) finalize();
    for (std::uint8_t& byte : out) {
      byte = static_cast<std::uint8_t>(lanes_[position_ / 8] >> (8 * (position_ % 8)));
      if (++position_ == rate_) {
        keccak_f1600(lanes_);
        position_ = 0;
      }
    }
  }

  const KeccakLanes& lanes() const noexcept { return lanes_; }
  std::size_t rate() const noexcept { return rate_; }
  std::size_t position() const noexcept { return position_; }
  Phase phase() const noexcept { return phase_; }

 private:
  void xor_byte(std::size_t pos, std::uint8_t byte) {
    lanes_[pos / 8] ^= static_cast<std::uint64_t>(byte) << (8 * (pos % 8));
  }

  void finalize() {
    xor_byte(position_, kShakePadding);
    xor_byte(rate_ - 1, 0x80);
    keccak_f1600(lanes_);
    position_ = 0;
    phase_ = Phase::squeezing;
  }

  KeccakLanes lanes_{};
  std::size_t rate_;
  std::size_t position_ = 0;
  Phase phase_ = Phase::absorbing;
};

/// Domain tags. Each protocol use of the sponge starts with a distinct tag.
enum class DomainTag : std::uint8_t {
  none = 0x00,
  commitment = 0x01,
  first_challenge = 0x02,
  second_challenge = 0x03,
  share_expand = 0x04,
  keygen = 0x05,
  salt = 0x06,
  party_seeds = 0x07,
  public_key_digest = 0x08,
  projection = 0x09,
  hidden_party = 0x0A,
  public_expand = 0x0B,
  secret_expand = 0x0C,
};

/// Incremental form of `hash`.
class Hasher {
 public:
  explicit Hasher(std::uint8_t tag) : sponge_(Sponge::kHashRate) {
    sponge_.absorb(ByteSpan(&tag, 1));
  }
  explicit Hasher(DomainTag tag) : Hasher(static_cast<std::uint8_t>(tag)) {}

  Hasher& update(ByteSpan chunk) {
    sponge_.absorb(chunk);
    return *this;
  }

  Digest finalize() {
    Digest d{};
    sponge_.squeeze(d);
    return d;
  }

 private:
  Sponge sponge_;
};

/// 32-byte digest of tag || chunk_0 || chunk_1 || ...
inline Digest hash(std::uint8_t tag, std::initializer_list<ByteSpan> chunks) {
  Hasher h(tag);
  for (ByteSpan c : chunks) h.update(c);
  return h.finalize();
}

inline Digest hash(DomainTag tag, std::initializer_list<ByteSpan> chunks) {
  return hash(static_cast<std::uint8_t>(tag), chunks);
}

/// Deterministic byte stream seeded by (tag, seed material).
class Prng {
 public:
  Prng(std::uint8_t tag, std::initializer_list<ByteSpan> seed_material)
      : sponge_(Sponge::kPrngRate) {
    sponge_.absorb(ByteSpan(&tag, 1));
    for (ByteSpan c : seed_material) sponge_.absorb(c);
  }
  Prng(DomainTag tag, std::initializer_list<ByteSpan> seed_material)
      : Prng(static_cast<std::uint8_t>(tag), seed_material) {}

  void fill(std::span<std::uint8_t> out) {
    if (!out.empty()) sponge_.squeeze(out);
  }

  std::vector<std::uint8_t> bytes(std::size_t count) {
    std::vector<std::uint8_t> out(count);
    fill(out);
    return out;
  }

  /// Two elements per stream byte, high nibble first. An odd count discards
  /// the low nibble of the last byte consumed.
  void fill_field_elements(std::span<Gf16> out) {
    if (out.empty()) return;
    instr::StageScope scope(instr::Stage::keccak_squeeze);
    std::array<std::uint8_t, 256> buf{};
    std::size_t done = 0;
    while (done < out.size()) {
      const std::size_t n = std::min(out.size() - done, 2 * buf.size());
      const std::size_t nbytes = (n + 1) / 2;
      sponge_.squeeze(std::span(buf.data(), nbytes));
      for (std::size_t i = 0; i < n; ++i) {
        out[done + i] = Gf16::from_nibble(i % 2 == 0 ? buf[i / 2] >> 4 : buf[i / 2]);
      }
      done += n;
    }
  }

  std::vector<Gf16> field_elements(std::size_t count) {
    std::vector<Gf16> out(count);
    fill_field_elements(out);
    return out;
  }

  const Sponge& sponge() const noexcept { return sponge_; }

 private:
  Sponge sponge_;
};

}  // namespace mrwb
