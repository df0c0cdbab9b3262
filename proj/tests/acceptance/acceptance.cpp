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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mrwb/mrwb.hpp"

namespace {

using namespace mrwb;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Randomness random_bytes32(std::mt19937_64& rng) {
  Randomness r{};
  for (auto& b : r) b = static_cast<std::uint8_t>(rng());
  return r;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (Gf16& e : m.data()) e = Gf16::from_nibble(static_cast<unsigned>(rng()));
  return m;
}

// 1. DSE golden replay.
Outcome dse_golden() {
  Outcome o;
  const auto t0 = Clock::now();
  const LibraryConfig cfg = bundled_library();
  const dse::BlockLibrary& lib = cfg.library;
  auto pr = [&](unsigned m, double kluts, double brams) {
    return dse::solve_pr(lib, {1.0, m}, {kluts, 30.0, brams, std::nullopt});
  };
  auto exact = [](double a, double b) { return std::abs(a - b) < 1e-9; };

  const auto a = pr(1, 23, 50);
  o.require(a.winner == "Cut 3" && exact(a.objective, 101.19), "(a) expected Cut 3 at 101.19");
  const auto b = pr(2, 23, 50);
  o.require(b.winner == "Cut 4" && exact(b.objective, 151.14), "(b) expected Cut 4 at 151.14");
  o.require(exact(dse::total_runtime(*lib.find("Cut 3"), {1.0, 2}), 161.86), "(b) Cut 3 should be 161.86");
  const auto c = pr(2, 26, 50);
  o.require(c.winner == "Cut 5" && std::abs(c.objective - 115.8) <= 1.0, "(c) expected Cut 5 within 1 ms of 115.8");
  const auto d = pr(2, 26, 70);
  o.require(d.winner == "Cut 7, P=8" && exact(d.objective, 79.94), "(d) expected Cut 7, P=8 at 79.94");
  const auto e = dse::solve_pt(lib, {1.0, 1}, 110.0, dse::Resource::kluts);
  o.require(e.winner == "Cut 1+2", "(e) expected Cut 1+2");
  const auto f1 = dse::solve_pt(lib, {1.0, 1}, 80.0, dse::Resource::kluts);
  const auto f2 = dse::solve_pt(lib, {1.0, 1}, 80.0, dse::Resource::brams);
  o.require(f1.winner == "Cut 7, P=4" && f2.winner == "Cut 5", "(f) expected Cut 7, P=4 and Cut 5");

  const double elapsed = seconds_since(t0);
  o.require(elapsed < 1.0, "took " + fmt("%.3f", elapsed) + " s");
  if (o.pass) {
    o.detail = "a: Cut 3 101.19, b: Cut 4 151.14 (Cut 3 161.86), c: Cut 5 " + fmt("%.2f", c.objective) +
               ", d: Cut 7 P=8 79.94, e: Cut 1+2, f: Cut 7 P=4 / Cut 5; " + fmt("%.1f", elapsed * 1e3) + " ms";
  }
  return o;
}

// 2. Zero MinRank residual for generated keys.
Outcome keygen_residual() {
  Outcome o;
  std::mt19937_64 rng(2);
  const auto t0 = Clock::now();
  for (const char* preset : {"desk", "ia-like"}) {
    const ParameterSet p = *ParameterSet::preset(preset);
    for (int i = 0; i < 100; ++i) {
      const KeyPair kp = keygen(p, random_bytes32(rng));
      const Matrix res = minrank_residual(expand_public_key(kp.pk), expand_secret(p, kp.sk.seed_sk), p.r);
      o.require(res.is_zero(), std::string(preset) + ": non-zero residual for key " + std::to_string(i));
    }
  }
  if (o.pass) o.detail = "200 key pairs (100 desk, 100 ia-like), " + fmt("%.2f", seconds_since(t0)) + " s";
  return o;
}

// 3. Completeness and soundness against tampering.
Outcome protocol() {
  Outcome o;
  std::mt19937_64 rng(3);
  const ParameterSet p = ParameterSet::desk();
  const auto t0 = Clock::now();
  for (int i = 0; i < 1000; ++i) {
    const KeyPair kp = keygen(p, random_bytes32(rng));
    const auto msg = random_bytes32(rng);
    const auto bytes = serialize(sign(kp.sk, msg, random_bytes32(rng)));
    std::string why;
    o.require(open_bytes(kp.pk, msg, bytes, &why) == Verdict::accept, "round trip " + std::to_string(i) + ": " + why);
  }
  const KeyPair kp = keygen(p, random_bytes32(rng));
  const auto msg = random_bytes32(rng);
  const auto bytes = serialize(sign(kp.sk, msg, random_bytes32(rng)));
  int rejected_msg = 0, rejected_sig = 0;
  for (int i = 0; i < 100; ++i) {
    auto m = msg;
    const std::size_t bit = rng() % (8 * m.size());
    m[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
    rejected_msg += open_bytes(kp.pk, m, bytes) == Verdict::reject;
    auto s = bytes;
    const std::size_t sbit = rng() % (8 * s.size());
    s[sbit / 8] ^= static_cast<std::uint8_t>(1U << (sbit % 8));
    rejected_sig += open_bytes(kp.pk, msg, s) == Verdict::reject;
  }
  o.require(rejected_msg == 100, std::to_string(100 - rejected_msg) + " tampered messages accepted");
  o.require(rejected_sig == 100, std::to_string(100 - rejected_sig) + " tampered signatures accepted");
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 60.0, "took " + fmt("%.1f", elapsed) + " s");
  if (o.pass) {
    o.detail = "1000/1000 accepted, 100/100 message and 100/100 signature tampers rejected, " +
               fmt("%.2f", elapsed) + " s";
  }
  return o;
}

// 4. Accelerator model against the naive oracle.
Outcome accelerator() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t k = 1 + rng() % 78;
    std::vector<Gf16> alphas(k);
    std::vector<Matrix> mats;
    std::vector<accel::PackedMatrix> packed;
    for (std::size_t j = 0; j < k; ++j) {
      alphas[j] = Gf16::from_nibble(static_cast<unsigned>(rng()));
      mats.push_back(random_matrix(rng, 15, 15));
      packed.push_back(accel::pack(mats.back()));
    }
    // Oracle: element by element with bit-serial multiplication.
    Matrix expect(15, 15);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t r = 0; r < 15; ++r) {
        for (std::size_t c = 0; c < 15; ++c) {
          unsigned a = alphas[j].value(), x = mats[j](r, c).value(), acc = 0;
          for (int bit = 0; bit < 4; ++bit) {
            if ((a >> bit) & 1U) acc ^= x;
            x <<= 1;
            if (x & 0x10U) x ^= 0x13U;
          }
          expect(r, c) = Gf16(expect(r, c).value() ^ acc);
        }
      }
    }
    std::uint64_t previous = UINT64_MAX;
    for (unsigned par : {1U, 4U, 8U, 16U}) {
      const accel::AccelConfig cfg{par, 125.0, 4};
      const accel::AccelResult res = accel::accel_scalar_mat_sum(alphas, packed, cfg);
      o.require(res.result == expect, "instance " + std::to_string(t) + ": result differs from oracle");
      o.require(res.prediction.cycles == (k * 15 + par - 1) / par + 4,
                "instance " + std::to_string(t) + ": cycle formula mismatch");
      o.require(res.prediction.cycles <= previous, "instance " + std::to_string(t) + ": cycles grew with P");
      previous = res.prediction.cycles;
    }
  }
  // Diminishing returns at the Ia-like workload (k = 78, 15 columns).
  auto cycles = [](unsigned par) { return static_cast<double>(accel::engine_cycles(78 * 15, {par, 125.0, 4})); };
  const double gain_1_4 = 1.0 - cycles(4) / cycles(1);
  const double gain_8_16 = 1.0 - cycles(16) / cycles(8);
  o.require(gain_8_16 < gain_1_4, "no diminishing returns");
  if (o.pass) {
    o.detail = "1000 instances bit-identical; k=78 cycles " + fmt("%.0f", cycles(1)) + "/" + fmt("%.0f", cycles(4)) +
               "/" + fmt("%.0f", cycles(8)) + "/" + fmt("%.0f", cycles(16)) + ", gain 1->4 " +
               fmt("%.1f%%", 100 * gain_1_4) + " > 8->16 " + fmt("%.1f%%", 100 * gain_8_16);
  }
  return o;
}

std::vector<std::uint8_t> openssl_shake(bool wide, std::uint8_t tag, std::span<const std::uint8_t> data,
                                        std::size_t n) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, wide ? EVP_shake256() : EVP_shake128(), nullptr);
  EVP_DigestUpdate(ctx, &tag, 1);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  std::vector<std::uint8_t> out(n);
  EVP_DigestFinalXOF(ctx, out.data(), n);
  EVP_MD_CTX_free(ctx);
  return out;
}

// 5. Field axioms and sponge known answers.
Outcome foundations() {
  Outcome o;
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned b = 0; b < 16; ++b) {
      const Gf16 x(a), y(b);
      o.require(x + y == y + x && x * y == y * x, "commutativity");
      o.require(x + Gf16(0) == x && x * Gf16(1) == x && x + x == Gf16(0), "identities");
      if (a != 0) o.require(x * gf16_inv(x) == Gf16(1), "inverse");
      for (unsigned c = 0; c < 16; ++c) {
        const Gf16 z(c);
        o.require((x + y) + z == x + (y + z) && (x * y) * z == x * (y * z), "associativity");
        o.require(x * (y + z) == x * y + x * z, "distributivity");
      }
    }
  }
  // Frozen vectors from Python hashlib.
  const Digest h0 = hash(0, {});
  o.require(std::vector<std::uint8_t>(h0.begin(), h0.end()) ==
                std::vector<std::uint8_t>{0xb8, 0xd0, 0x1d, 0xf8, 0x55, 0xf7, 0x07, 0x58, 0x82, 0xc6, 0x36,
                                          0xf6, 0xdd, 0xea, 0xcf, 0x41, 0xe5, 0xde, 0x0b, 0xbf, 0x30, 0x04,
                                          0x2e, 0xf0, 0xa8, 0x6e, 0x36, 0xf4, 0xb8, 0x60, 0x0d, 0x54},
            "hash KAT");
  const auto stream = Prng(0x41, {}).bytes(200);
  o.require(stream[0] == 0xa5 && stream[7] == 0x4a && stream[199] == 0xb7, "PRNG KAT");
  // Live comparison with OpenSSL.
  std::mt19937_64 rng(5);
  int vectors = 0;
  for (int t = 0; t < 300; ++t) {
    std::vector<std::uint8_t> data(rng() % 700);
    for (auto& byte : data) byte = static_cast<std::uint8_t>(rng());
    const auto tag = static_cast<std::uint8_t>(rng());
    const Digest d = hash(tag, {data});
    o.require(std::vector<std::uint8_t>(d.begin(), d.end()) == openssl_shake(true, tag, data, 32), "hash vs OpenSSL");
    const std::size_t n = rng() % 600;
    o.require(Prng(tag, {data}).bytes(n) == openssl_shake(false, tag, data, n), "PRNG vs OpenSSL");
    vectors += 2;
  }
  if (o.pass) o.detail = "4096 field triples, 2 frozen KATs, " + std::to_string(vectors) + " OpenSSL vectors";
  return o;
}

// 6. Stage shares of the measured software profile.
Outcome profile_shares() {
  Outcome o;
  ProfileOptions opts;
  opts.runs = 200;
  const SoftwareProfile prof = profile(ParameterSet::ia_like(), opts);
  const double sum_share = prof[DsaFunction::sign].percent(instr::Stage::scalar_mat_sum);
  const FunctionProfile& kg = prof[DsaFunction::keygen];
  const double keccak_share = 100.0 * kg.keccak_ms() / kg.total_ms();
  o.require(sum_share > 50.0, "sum share of sign is " + fmt("%.1f%%", sum_share));
  o.require(keccak_share > 50.0, "Keccak share of keygen is " + fmt("%.1f%%", keccak_share));
  o.detail = "sign: sum alpha*M " + fmt("%.1f%%", sum_share) + " of " + fmt("%.3f", prof.total_ms(DsaFunction::sign)) +
             " ms; keygen: Keccak " + fmt("%.1f%%", keccak_share) + " of " +
             fmt("%.3f", prof.total_ms(DsaFunction::keygen)) + " ms (" + std::to_string(opts.runs) + " runs)";
  return o;
}

// 7. Predicted Cut-1 sign speedup from the reference breakdown.
Outcome speedup() {
  Outcome o;
  const LibraryConfig cfg = bundled_library();
  const CompositionConfig& cut1 = *cfg.find_composition("Cut 1");
  const SoftwareProfile prof = table1_profile();
  const auto pred = accel::predict_cut_runtime(cut1.cut, ParameterSet::ia_like(), prof, cut1.accel);
  const double factor = prof.total_ms(DsaFunction::sign) / pred.sign_ms();
  o.require(factor >= 3.0 && factor <= 4.2, "factor " + fmt("%.3f", factor));
  o.detail = "sign " + fmt("%.2f", prof.total_ms(DsaFunction::sign)) + " -> " + fmt("%.2f", pred.sign_ms()) +
             " ms, factor " + fmt("%.3f", factor);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 dse golden replay", dse_golden},
      {"AC2 keygen residual", keygen_residual},
      {"AC3 protocol completeness and tamper rejection", protocol},
      {"AC4 accelerator oracle equivalence", accelerator},
      {"AC5 field and sponge foundations", foundations},
      {"AC6 profiling stage shares", profile_shares},
      {"AC7 cut-1 speedup plausibility", speedup},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
