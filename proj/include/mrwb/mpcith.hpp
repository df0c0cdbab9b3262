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

// MinRank-in-the-head signatures: KeyGen, Sign and Open.
//
// Relation: for E(alpha) = M_0 + sum_j alpha_j M_j split as [E^L | E^R],
//   E^L = E^R * K.
//
// Per round the signer additively shares (alpha, K) among N parties together
// with a random auxiliary A (s x r) and C = A * K. Given a projection Pi
// (s x m) derived from the first challenge, each party computes
//   S_i = Pi * E^R_i + A_i                (opened: S = sum_i S_i)
//   V_i = S * K_i - Pi * E^L_i - C_i
// and honest shares give sum_i V_i = Pi * (E^R K - E^L) = 0. The second
// challenge hides one party per round; the verifier re-derives the others
// from their seeds.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrwb/error.hpp"
#include "mrwb/gf16.hpp"
#include "mrwb/keccak.hpp"
#include "mrwb/matrix.hpp"
#include "mrwb/params.hpp"

namespace mrwb {

inline constexpr std::size_t kSeedBytes = 16;
using Seed = std::array<std::uint8_t, kSeedBytes>;
using Randomness = std::array<std::uint8_t, 32>;

struct PublicKey {
  ParameterSet params;
  Seed seed_pk{};
  Matrix m0_left;  // m_rows x (n_cols - r)

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct SecretKey {
  Seed seed_sk{};
  PublicKey pk;

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

/// M_0 (assembled as [m0_left | M_0^R]) and M_1..M_k, all m_rows x n_cols.
struct ExpandedPublicKey {
  Matrix m0;
  std::vector<Matrix> mats;
};

struct MinRankSecret {
  std::vector<Gf16> alpha;
  Matrix kernel;  // r x (n_cols - r)
};

/// One party's additive share of (alpha, K) plus auxiliary (A, C).
struct PartyShare {
  std::vector<Gf16> alpha;
  Matrix kernel;
  Matrix aux_a;  // s x r
  Matrix aux_c;  // s x (n_cols - r)
};

/// The explicit shares of the last party, chosen so that sums hit the secret.
struct Correction {
  std::vector<Gf16> alpha;
  Matrix kernel;
  Matrix aux_c;

  friend bool operator==(const Correction&, const Correction&) = default;
};

struct Broadcast {
  Matrix s_share;  // s x r
  Matrix v_share;  // s x (n_cols - r)
};

struct PartyView {
  Matrix pi_left;  // Pi * E^L_i
  Matrix s_share;
};

struct Phase3Result {
  Matrix s_open;
  std::vector<Broadcast> broadcasts;
};

struct RoundResponse {
  std::vector<Seed> seeds;  // N-1 seeds in party order, hidden party skipped
  Digest hidden_commitment{};
  Matrix s_share;  // hidden party's broadcast
  Matrix v_share;
  std::optional<Correction> correction;  // present iff the hidden party is not the last

  friend bool operator==(const RoundResponse&, const RoundResponse&) = default;
};

struct Signature {
  ParameterSet params;
  Digest salt{};
  Digest challenge{};  // second-challenge digest
  std::vector<RoundResponse> rounds;

  friend bool operator==(const Signature&, const Signature&) = default;
};

enum class Verdict { accept, reject };

namespace detail {

inline std::array<std::uint8_t, 2> le16(std::size_t v) {
  return {static_cast<std::uint8_t>(v & 0xFF), static_cast<std::uint8_t>((v >> 8) & 0xFF)};
}

inline Matrix matrix_from(Prng& prng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  prng.fill_field_elements(m.data());
  return m;
}

inline std::vector<Gf16> concat(std::span<const Gf16> a, std::span<const Gf16> b,
                                std::span<const Gf16> c) {
  std::vector<Gf16> out;
  out.reserve(a.size() + b.size() + c.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

inline std::vector<std::uint8_t> correction_bytes(const Correction& c) {
  return pack_nibbles(concat(c.alpha, c.kernel.data(), c.aux_c.data()));
}

inline void hash_matrix(Hasher& h, const Matrix& m) {
  const auto packed = pack_nibbles(m.data());
  h.update(packed);
}

}  // namespace detail

/// M_0^R followed by M_1..M_k, drawn from the public seed.
inline std::pair<Matrix, std::vector<Matrix>> expand_public_matrices(const ParameterSet& p,
                                                                     const Seed& seed_pk) {
  Prng prng(DomainTag::public_expand, {seed_pk});
  Matrix m0_right = detail::matrix_from(prng, p.m_rows, p.r);
  std::vector<Matrix> mats;
  mats.reserve(p.k);
  for (std::size_t j = 0; j < p.k; ++j) mats.push_back(detail::matrix_from(prng, p.m_rows, p.n_cols));
  return {std::move(m0_right), std::move(mats)};
}

inline ExpandedPublicKey expand_public_key(const PublicKey& pk) {
  auto [m0_right, mats] = expand_public_matrices(pk.params, pk.seed_pk);
  return {hconcat(pk.m0_left, m0_right), std::move(mats)};
}

inline MinRankSecret expand_secret(const ParameterSet& p, const Seed& seed_sk) {
  Prng prng(DomainTag::secret_expand, {seed_sk});
  std::vector<Gf16> alpha = prng.field_elements(p.k);
  Matrix kernel = detail::matrix_from(prng, p.r, p.left_cols());
  return {std::move(alpha), std::move(kernel)};
}

/// E^L - E^R * K for the given instance; zero iff (alpha, K) is a solution.
inline Matrix minrank_residual(const ExpandedPublicKey& pub, const MinRankSecret& secret,
                               std::size_t r) {
  Matrix e = scalar_mat_sum(secret.alpha, pub.mats);
  mat_add_assign(e, pub.m0);
  auto [left, right] = split_lr(e, r);
  return mat_add(left, mat_mul(right, secret.kernel));
}

/// Deterministic in `randomness`. M_0^L is solved for so that the sampled
/// (alpha, K) satisfies the relation.
inline KeyPair keygen(const ParameterSet& params, std::span<const std::uint8_t, 32> randomness) {
  params.validate();
  const Digest seeds = hash(DomainTag::keygen, {randomness});
  Seed seed_sk{};
  Seed seed_pk{};
  std::copy_n(seeds.begin(), kSeedBytes, seed_sk.begin());
  std::copy_n(seeds.begin() + kSeedBytes, kSeedBytes, seed_pk.begin());

  auto [m0_right, mats] = expand_public_matrices(params, seed_pk);
  const MinRankSecret secret = expand_secret(params, seed_sk);

  auto [sum_left, sum_right] = split_lr(scalar_mat_sum(secret.alpha, mats), params.r);
  mat_add_assign(sum_right, m0_right);
  Matrix m0_left = mat_add(mat_mul(sum_right, secret.kernel), sum_left);

  PublicKey pk{params, seed_pk, std::move(m0_left)};
  SecretKey sk{seed_sk, pk};
  return {std::move(pk), std::move(sk)};
}

inline Digest public_key_digest(const PublicKey& pk) {
  const ParameterSet& p = pk.params;
  Hasher h(DomainTag::public_key_digest);
  for (std::uint16_t v : {p.q, p.m_rows, p.n_cols, p.k, p.r, p.n_parties, p.tau, p.proj_rows}) {
    h.update(detail::le16(v));
  }
  h.update(pk.seed_pk);
  detail::hash_matrix(h, pk.m0_left);
  return h.finalize();
}

/// Expands a party's share from its seed. The last party only draws A from its
/// seed and takes the remaining shares from `correction`.
inline PartyShare expand_party_share(const ParameterSet& p, const Digest& salt, std::size_t round,
                                     std::size_t party, const Seed& seed,
                                     const Correction* correction) {
  const auto l = detail::le16(round);
  const auto i = detail::le16(party);
  Prng prng(DomainTag::share_expand, {salt, l, i, seed});
  Matrix aux_a = detail::matrix_from(prng, p.proj_rows, p.r);
  if (correction != nullptr) {
    return {correction->alpha, correction->kernel, std::move(aux_a), correction->aux_c};
  }
  std::vector<Gf16> alpha = prng.field_elements(p.k);
  Matrix kernel = detail::matrix_from(prng, p.r, p.left_cols());
  Matrix aux_c = detail::matrix_from(prng, p.proj_rows, p.left_cols());
  return {std::move(alpha), std::move(kernel), std::move(aux_a), std::move(aux_c)};
}

inline Digest party_commitment(const Digest& salt, std::size_t round, std::size_t party,
                               const Seed& seed, const Correction* correction) {
  Hasher h(DomainTag::commitment);
  h.update(salt).update(detail::le16(round)).update(detail::le16(party)).update(seed);
  if (correction != nullptr) h.update(detail::correction_bytes(*correction));
  return h.finalize();
}

inline Matrix projection_challenge(const ParameterSet& p, const Digest& first_challenge,
                                   std::size_t round) {
  Prng prng(DomainTag::projection, {first_challenge, detail::le16(round)});
  return detail::matrix_from(prng, p.proj_rows, p.m_rows);
}

/// Hidden party per round, uniform over 0..N-1 by byte rejection sampling.
inline std::vector<std::size_t> hidden_parties(const ParameterSet& p, const Digest& challenge) {
  Prng prng(DomainTag::hidden_party, {challenge});
  const unsigned n = p.n_parties;
  const unsigned limit = (256U / n) * n;
  std::vector<std::size_t> out;
  out.reserve(p.tau);
  while (out.size() < p.tau) {
    std::uint8_t b = 0;
    prng.fill(std::span(&b, 1));
    if (b < limit) out.push_back(b % n);
  }
  return out;
}

/// Phase-3 local computation of one party up to the opening of S.
/// The first party adds the public constant M_0.
inline PartyView party_view(const PartyShare& share, const ExpandedPublicKey& pub,
                            const Matrix& projection, std::size_t r, bool first_party) {
  if (share.alpha.size() != pub.mats.size()) {
    throw ProtocolError("alpha share has " + std::to_string(share.alpha.size()) +
                        " entries, expected " + std::to_string(pub.mats.size()));
  }
  const std::size_t m = pub.m0.rows();
  const std::size_t left = pub.m0.cols() - r;
  const std::size_t s = projection.rows();
  if (projection.cols() != m) throw ProtocolError("projection is " + projection.shape());
  if (share.kernel.rows() != r || share.kernel.cols() != left) {
    throw ProtocolError("kernel share is " + share.kernel.shape());
  }
  if (share.aux_a.rows() != s || share.aux_a.cols() != r) {
    throw ProtocolError("auxiliary A share is " + share.aux_a.shape());
  }
  if (share.aux_c.rows() != s || share.aux_c.cols() != left) {
    throw ProtocolError("auxiliary C share is " + share.aux_c.shape());
  }
  Matrix e = scalar_mat_sum(share.alpha, pub.mats);
  if (first_party) mat_add_assign(e, pub.m0);
  auto [e_left, e_right] = split_lr(e, r);
  Matrix s_share = mat_mul(projection, e_right);
  mat_add_assign(s_share, share.aux_a);
  return {mat_mul(projection, e_left), std::move(s_share)};
}

inline Matrix party_v_share(const Matrix& s_open, const PartyShare& share, const PartyView& view) {
  Matrix v = mat_mul(s_open, share.kernel);
  mat_add_assign(v, view.pi_left);
  mat_add_assign(v, share.aux_c);
  return v;
}

/// Runs Phase 3 for one round over a complete row of party shares. Party 0
/// carries the public constant.
inline Phase3Result phase3_mpc_round(std::span<const PartyShare> shares,
                                     const ExpandedPublicKey& pub, const Matrix& projection,
                                     std::size_t r) {
  if (shares.empty()) throw ProtocolError("phase 3 needs at least one party");
  std::vector<PartyView> views;
  views.reserve(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    views.push_back(party_view(shares[i], pub, projection, r, i == 0));
  }
  Matrix s_open = views.front().s_share;
  for (std::size_t i = 1; i < views.size(); ++i) mat_add_assign(s_open, views[i].s_share);
  std::vector<Broadcast> broadcasts;
  broadcasts.reserve(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    broadcasts.push_back({views[i].s_share, party_v_share(s_open, shares[i], views[i])});
  }
  return {std::move(s_open), std::move(broadcasts)};
}

namespace detail {

inline Digest first_challenge(std::span<const std::uint8_t> message, const Digest& salt,
                              const Digest& pk_digest,
                              const std::vector<std::vector<Digest>>& commitments) {
  Hasher h(DomainTag::first_challenge);
  h.update(message).update(salt).update(pk_digest);
  for (const auto& round : commitments) {
    for (const Digest& c : round) h.update(c);
  }
  return h.finalize();
}

inline Digest second_challenge(const Digest& first,
                               const std::vector<std::vector<Broadcast>>& broadcasts) {
  Hasher h(DomainTag::second_challenge);
  h.update(first);
  for (const auto& round : broadcasts) {
    for (const Broadcast& b : round) {
      hash_matrix(h, b.s_share);
      hash_matrix(h, b.v_share);
    }
  }
  return h.finalize();
}

}  // namespace detail

/// Deterministic in (sk, message, randomness).
inline Signature sign(const SecretKey& sk, std::span<const std::uint8_t> message,
                      std::span<const std::uint8_t, 32> randomness) {
  const ParameterSet& p = sk.pk.params;
  p.validate();
  const std::size_t n = p.n_parties;
  const std::size_t last = n - 1;
  const ExpandedPublicKey pub = expand_public_key(sk.pk);
  const MinRankSecret secret = expand_secret(p, sk.seed_sk);

  Signature sig;
  sig.params = p;
  sig.salt = hash(DomainTag::salt, {sk.seed_sk, message, randomness});

  // Phase 1: seeds, shares, corrections and commitments.
  Prng seed_stream(DomainTag::party_seeds, {sig.salt, sk.seed_sk, randomness});
  std::vector<std::vector<Seed>> seeds(p.tau, std::vector<Seed>(n));
  std::vector<std::vector<PartyShare>> shares(p.tau);
  std::vector<Correction> corrections;
  std::vector<std::vector<Digest>> commitments(p.tau, std::vector<Digest>(n));
  corrections.reserve(p.tau);
  for (std::size_t l = 0; l < p.tau; ++l) {
    for (Seed& s : seeds[l]) seed_stream.fill(s);
    shares[l].reserve(n);
    for (std::size_t i = 0; i < last; ++i) {
      shares[l].push_back(expand_party_share(p, sig.salt, l, i, seeds[l][i], nullptr));
    }
    const auto l16 = detail::le16(l);
    const auto i16 = detail::le16(last);
    Prng last_prng(DomainTag::share_expand, {sig.salt, l16, i16, seeds[l][last]});
    Matrix last_a = detail::matrix_from(last_prng, p.proj_rows, p.r);

    Matrix aux_a = last_a;
    Correction corr{secret.alpha, secret.kernel, Matrix(p.proj_rows, p.left_cols())};
    Matrix partial_c(p.proj_rows, p.left_cols());
    for (std::size_t i = 0; i < last; ++i) {
      const PartyShare& sh = shares[l][i];
      for (std::size_t j = 0; j < p.k; ++j) corr.alpha[j] += sh.alpha[j];
      mat_add_assign(corr.kernel, sh.kernel);
      mat_add_assign(aux_a, sh.aux_a);
      mat_add_assign(partial_c, sh.aux_c);
    }
    corr.aux_c = mat_add(mat_mul(aux_a, secret.kernel), partial_c);
    shares[l].push_back({corr.alpha, corr.kernel, std::move(last_a), corr.aux_c});

    for (std::size_t i = 0; i < n; ++i) {
      commitments[l][i] =
          party_commitment(sig.salt, l, i, seeds[l][i], i == last ? &corr : nullptr);
    }
    corrections.push_back(std::move(corr));
  }

  // Phase 2: first challenge.
  const Digest h1 =
      detail::first_challenge(message, sig.salt, public_key_digest(sk.pk), commitments);

  // Phase 3: simulated MPC per round.
  std::vector<std::vector<Broadcast>> broadcasts;
  broadcasts.reserve(p.tau);
  for (std::size_t l = 0; l < p.tau; ++l) {
    const Matrix projection = projection_challenge(p, h1, l);
    broadcasts.push_back(phase3_mpc_round(shares[l], pub, projection, p.r).broadcasts);
  }

  // Phase 4: second challenge and hidden parties.
  sig.challenge = detail::second_challenge(h1, broadcasts);
  const std::vector<std::size_t> hidden = hidden_parties(p, sig.challenge);

  // Phase 5: assembly.
  sig.rounds.reserve(p.tau);
  for (std::size_t l = 0; l < p.tau; ++l) {
    const std::size_t star = hidden[l];
    RoundResponse resp{{}, commitments[l][star], broadcasts[l][star].s_share,
                       broadcasts[l][star].v_share, std::nullopt};
    resp.seeds.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != star) resp.seeds.push_back(seeds[l][i]);
    }
    if (star != last) resp.correction = corrections[l];
    sig.rounds.push_back(std::move(resp));
  }
  return sig;
}

namespace detail {

inline bool has_shape(const Matrix& m, std::size_t rows, std::size_t cols) {
  return m.rows() == rows && m.cols() == cols;
}

inline std::optional<std::string> check_structure(const ParameterSet& p, const Signature& sig,
                                                  const std::vector<std::size_t>& hidden) {
  if (sig.rounds.size() != p.tau) return "round count";
  for (std::size_t l = 0; l < p.tau; ++l) {
    const RoundResponse& r = sig.rounds[l];
    if (r.seeds.size() != p.n_parties - 1u) return "seed count";
    if (!has_shape(r.s_share, p.proj_rows, p.r)) return "S share shape";
    if (!has_shape(r.v_share, p.proj_rows, p.left_cols())) return "V share shape";
    const bool needs_correction = hidden[l] != p.n_parties - 1u;
    if (r.correction.has_value() != needs_correction) return "correction presence";
    if (r.correction) {
      if (r.correction->alpha.size() != p.k) return "correction alpha length";
      if (!has_shape(r.correction->kernel, p.r, p.left_cols())) return "correction K shape";
      if (!has_shape(r.correction->aux_c, p.proj_rows, p.left_cols())) return "correction C shape";
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Verification. `reason`, when given, receives the first failed check.
inline Verdict open(const PublicKey& pk, std::span<const std::uint8_t> message,
                    const Signature& sig, std::string* reason = nullptr) {
  auto reject = [reason](std::string why) {
    if (reason != nullptr) *reason = std::move(why);
    return Verdict::reject;
  };
  const ParameterSet& p = pk.params;
  try {
    p.validate();
  } catch (const ConfigError& e) {
    return reject(e.what());
  }
  if (!(sig.params == p)) return reject("parameter set mismatch");
  const std::size_t n = p.n_parties;
  const std::size_t last = n - 1;
  const std::vector<std::size_t> hidden = hidden_parties(p, sig.challenge);
  if (auto bad = detail::check_structure(p, sig, hidden)) return reject("malformed " + *bad);

  const ExpandedPublicKey pub = expand_public_key(pk);

  // Re-derive opened parties and all commitments.
  std::vector<std::vector<std::optional<PartyShare>>> shares(p.tau);
  std::vector<std::vector<Digest>> commitments(p.tau, std::vector<Digest>(n));
  for (std::size_t l = 0; l < p.tau; ++l) {
    const RoundResponse& resp = sig.rounds[l];
    shares[l].resize(n);
    std::size_t next_seed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == hidden[l]) {
        commitments[l][i] = resp.hidden_commitment;
        continue;
      }
      const Seed& seed = resp.seeds[next_seed++];
      const Correction* corr = (i == last) ? &*resp.correction : nullptr;
      shares[l][i] = expand_party_share(p, sig.salt, l, i, seed, corr);
      commitments[l][i] = party_commitment(sig.salt, l, i, seed, corr);
    }
  }
  const Digest h1 = detail::first_challenge(message, sig.salt, public_key_digest(pk), commitments);

  std::vector<std::vector<Broadcast>> broadcasts(p.tau);
  for (std::size_t l = 0; l < p.tau; ++l) {
    const RoundResponse& resp = sig.rounds[l];
    const Matrix projection = projection_challenge(p, h1, l);
    std::vector<std::optional<PartyView>> views(n);
    Matrix s_open = resp.s_share;
    for (std::size_t i = 0; i < n; ++i) {
      if (!shares[l][i]) continue;
      views[i] = party_view(*shares[l][i], pub, projection, p.r, i == 0);
      mat_add_assign(s_open, views[i]->s_share);
    }
    Matrix v_sum = resp.v_share;
    broadcasts[l].reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!shares[l][i]) {
        broadcasts[l].push_back({resp.s_share, resp.v_share});
        continue;
      }
      Matrix v = party_v_share(s_open, *shares[l][i], *views[i]);
      mat_add_assign(v_sum, v);
      broadcasts[l].push_back({views[i]->s_share, std::move(v)});
    }
    if (!v_sum.is_zero()) return reject("MPC check failed in round " + std::to_string(l));
  }

  if (detail::second_challenge(h1, broadcasts) != sig.challenge) {
    return reject("challenge mismatch");
  }
  return Verdict::accept;
}

}  // namespace mrwb
