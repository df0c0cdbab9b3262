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

// Binary key and signature files. All integers little-endian.
//
//   "MRWB" | version u8 | q m n k r N tau (u16 each) | kind u8 | s u16 | payload
//
// kind 'P' public key:  blob(seed_pk) blob(M0^L)
// kind 'S' secret key:  blob(seed_sk) blob(seed_pk) blob(M0^L)
// kind 'G' signature:   blob(salt) blob(challenge) u32 rounds, then per round
//                       u8 has_correction, blob(seeds), blob(commitment),
//                       blob(S), blob(V) [, elems(alpha), blob(K), blob(C)]
//
// blob = u32 length + bytes; matrices are nibble-packed row-major with the
// shape implied by the header. elems = u32 count + packed nibbles.

#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrwb/error.hpp"
#include "mrwb/gf16.hpp"
#include "mrwb/matrix.hpp"
#include "mrwb/mpcith.hpp"
#include "mrwb/params.hpp"

namespace mrwb {

inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::string_view kMagic = "MRWB";

enum class FileKind : std::uint8_t { public_key = 'P', secret_key = 'S', signature = 'G' };

namespace detail {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void raw(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void blob(std::span<const std::uint8_t> b) {
    u32(static_cast<std::uint32_t>(b.size()));
    raw(b);
  }
  void matrix(const Matrix& m) { blob(pack_nibbles(m.data())); }
  void elems(std::span<const Gf16> v) {
    u32(static_cast<std::uint32_t>(v.size()));
    raw(pack_nibbles(v));
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::span<const std::uint8_t> take(std::size_t n, const std::string& field) {
    if (in_.size() - pos_ < n) throw FormatError(field, "truncated");
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint8_t u8(const std::string& field) { return take(1, field)[0]; }
  std::uint16_t u16(const std::string& field) {
    auto b = take(2, field);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32(const std::string& field) {
    auto b = take(4, field);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }
  std::span<const std::uint8_t> blob(const std::string& field, std::size_t expected) {
    const std::uint32_t len = u32(field);
    if (len != expected) {
      throw FormatError(field, "length " + std::to_string(len) + ", expected " + std::to_string(expected));
    }
    return take(len, field);
  }
  template <std::size_t N>
  std::array<std::uint8_t, N> fixed(const std::string& field) {
    std::array<std::uint8_t, N> out{};
    auto b = blob(field, N);
    std::copy(b.begin(), b.end(), out.begin());
    return out;
  }
  Matrix matrix(const std::string& field, std::size_t rows, std::size_t cols) {
    std::vector<Gf16> v;
    if (!unpack_nibbles(blob(field, (rows * cols + 1) / 2), rows * cols, v)) {
      throw FormatError(field, "non-zero padding nibble");
    }
    return Matrix(rows, cols, std::move(v));
  }
  std::vector<Gf16> elems(const std::string& field, std::size_t expected) {
    const std::uint32_t count = u32(field);
    if (count != expected) {
      throw FormatError(field, "count " + std::to_string(count) + ", expected " + std::to_string(expected));
    }
    std::vector<Gf16> v;
    if (!unpack_nibbles(take((count + 1) / 2, field), count, v)) {
      throw FormatError(field, "non-zero padding nibble");
    }
    return v;
  }
  void finish() const {
    if (pos_ != in_.size()) throw FormatError("trailing", std::to_string(in_.size() - pos_) + " unexpected bytes");
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

inline void write_header(Writer& w, const ParameterSet& p, FileKind kind) {
  w.raw({reinterpret_cast<const std::uint8_t*>(kMagic.data()), kMagic.size()});
  w.u8(kFormatVersion);
  for (std::uint16_t v : {p.q, p.m_rows, p.n_cols, p.k, p.r, p.n_parties, p.tau}) w.u16(v);
  w.u8(static_cast<std::uint8_t>(kind));
  w.u16(p.proj_rows);
}

inline ParameterSet read_header(Reader& r, FileKind expected) {
  auto magic = r.take(kMagic.size(), "magic");
  if (std::memcmp(magic.data(), kMagic.data(), kMagic.size()) != 0) throw FormatError("magic", "not an MRWB file");
  const std::uint8_t version = r.u8("version");
  if (version != kFormatVersion) {
    throw UnsupportedVersionError("version", "unsupported format version " + std::to_string(version));
  }
  ParameterSet p;
  p.q = r.u16("params.q");
  p.m_rows = r.u16("params.m");
  p.n_cols = r.u16("params.n");
  p.k = r.u16("params.k");
  p.r = r.u16("params.r");
  p.n_parties = r.u16("params.N");
  p.tau = r.u16("params.tau");
  const std::uint8_t kind = r.u8("kind");
  if (kind != static_cast<std::uint8_t>(expected)) {
    throw FormatError("kind", "expected '" + std::string(1, static_cast<char>(expected)) + "' file");
  }
  p.proj_rows = r.u16("params.s");
  try {
    p.validate();
  } catch (const ConfigError& e) {
    throw FormatError("params", e.what());
  }
  return p;
}

inline void write_pk_body(Writer& w, const PublicKey& pk) {
  w.blob(pk.seed_pk);
  w.matrix(pk.m0_left);
}

inline PublicKey read_pk_body(Reader& r, const ParameterSet& p) {
  PublicKey pk{p, r.fixed<kSeedBytes>("seed_pk"), r.matrix("m0_left", p.m_rows, p.left_cols())};
  return pk;
}

}  // namespace detail

inline std::vector<std::uint8_t> serialize(const PublicKey& pk) {
  detail::Writer w;
  detail::write_header(w, pk.params, FileKind::public_key);
  detail::write_pk_body(w, pk);
  return w.take();
}

inline std::vector<std::uint8_t> serialize(const SecretKey& sk) {
  detail::Writer w;
  detail::write_header(w, sk.pk.params, FileKind::secret_key);
  w.blob(sk.seed_sk);
  detail::write_pk_body(w, sk.pk);
  return w.take();
}

inline std::vector<std::uint8_t> serialize(const Signature& sig) {
  detail::Writer w;
  detail::write_header(w, sig.params, FileKind::signature);
  w.blob(sig.salt);
  w.blob(sig.challenge);
  w.u32(static_cast<std::uint32_t>(sig.rounds.size()));
  for (const RoundResponse& round : sig.rounds) {
    w.u8(round.correction ? 1 : 0);
    std::vector<std::uint8_t> seeds;
    for (const Seed& s : round.seeds) seeds.insert(seeds.end(), s.begin(), s.end());
    w.blob(seeds);
    w.blob(round.hidden_commitment);
    w.matrix(round.s_share);
    w.matrix(round.v_share);
    if (round.correction) {
      w.elems(round.correction->alpha);
      w.matrix(round.correction->kernel);
      w.matrix(round.correction->aux_c);
    }
  }
  return w.take();
}

inline PublicKey parse_public_key(std::span<const std::uint8_t> bytes) {
  detail::Reader r(bytes);
  const ParameterSet p = detail::read_header(r, FileKind::public_key);
  PublicKey pk = detail::read_pk_body(r, p);
  r.finish();
  return pk;
}

inline SecretKey parse_secret_key(std::span<const std::uint8_t> bytes) {
  detail::Reader r(bytes);
  const ParameterSet p = detail::read_header(r, FileKind::secret_key);
  const Seed seed_sk = r.fixed<kSeedBytes>("seed_sk");
  PublicKey pk = detail::read_pk_body(r, p);
  r.finish();
  return SecretKey{seed_sk, std::move(pk)};
}

inline Signature parse_signature(std::span<const std::uint8_t> bytes) {
  detail::Reader r(bytes);
  Signature sig{detail::read_header(r, FileKind::signature), {}, {}, {}};
  const ParameterSet& p = sig.params;
  sig.salt = r.fixed<32>("salt");
  sig.challenge = r.fixed<32>("challenge");
  const std::uint32_t rounds = r.u32("rounds");
  if (rounds != p.tau) throw FormatError("rounds", "count " + std::to_string(rounds) + " != tau");
  for (std::uint32_t l = 0; l < rounds; ++l) {
    const std::string at = "rounds[" + std::to_string(l) + "].";
    const std::uint8_t flag = r.u8(at + "has_correction");
    if (flag > 1) throw FormatError(at + "has_correction", "flag must be 0 or 1");
    const std::size_t n_seeds = p.n_parties - 1u;
    auto seed_bytes = r.blob(at + "seeds", n_seeds * kSeedBytes);
    std::vector<Seed> seeds(n_seeds);
    for (std::size_t i = 0; i < n_seeds; ++i) {
      std::copy_n(seed_bytes.begin() + static_cast<std::ptrdiff_t>(i * kSeedBytes), kSeedBytes, seeds[i].begin());
    }
    const Digest commitment = r.fixed<32>(at + "commitment");
    Matrix s_share = r.matrix(at + "s_share", p.proj_rows, p.r);
    Matrix v_share = r.matrix(at + "v_share", p.proj_rows, p.left_cols());
    std::optional<Correction> corr;
    if (flag == 1) {
      std::vector<Gf16> alpha = r.elems(at + "correction.alpha", p.k);
      Matrix kernel = r.matrix(at + "correction.kernel", p.r, p.left_cols());
      Matrix aux_c = r.matrix(at + "correction.aux_c", p.proj_rows, p.left_cols());
      corr = Correction{std::move(alpha), std::move(kernel), std::move(aux_c)};
    }
    sig.rounds.push_back({std::move(seeds), commitment, std::move(s_share), std::move(v_share), std::move(corr)});
  }
  r.finish();
  return sig;
}

/// Verification on raw bytes: malformed input is a rejection, not an error.
inline Verdict open_bytes(const PublicKey& pk, std::span<const std::uint8_t> message,
                          std::span<const std::uint8_t> sig_bytes, std::string* reason = nullptr) {
  try {
    return open(pk, message, parse_signature(sig_bytes), reason);
  } catch (const FormatError& e) {
    if (reason != nullptr) *reason = std::string("malformed ") + e.what();
    return Verdict::reject;
  }
}

}  // namespace mrwb
