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

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 infeasible / rejected, 2 usage or malformed input.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrwb/mrwb.hpp"

namespace mrwb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

/// Thrown for bad arguments that CLI11 cannot catch (bad hex, unknown cut...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string read_text(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

inline void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("cannot write '" + path + "'");
}

inline Randomness seed_from_hex(const std::string& hex, const std::string& flag) {
  Randomness out{};
  if (hex.size() != 2 * out.size()) throw UsageError(flag + ": expected 64 hex digits");
  auto nibble = [&](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw UsageError(flag + ": invalid hex digit '" + std::string(1, c) + "'");
  };
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

inline Randomness seed_or_random(const std::string& hex, const std::string& flag) {
  if (!hex.empty()) return seed_from_hex(hex, flag);
  std::random_device rd;
  Randomness out{};
  for (auto& b : out) b = static_cast<std::uint8_t>(rd());
  return out;
}

inline ParameterSet preset_or_usage(const std::string& name) {
  const auto p = ParameterSet::preset(name);
  if (!p) throw UsageError("--params: unknown preset '" + name + "' (expected desk or ia-like)");
  return *p;
}

/// Human-readable number: at most 6 decimals, trailing zeros dropped.
inline std::string num(double v) {
  std::string s = mrwb::detail::fixed(v, 6);
  if (s.find('.') == std::string::npos) return s;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

struct DseArgs {
  std::string lib = std::string(kBundledLibraryName);
  double sign_weight = 1.0;
  unsigned open_count = 1;
  double keygen_weight = 0.0;
  bool csv = false;

  dse::PkiProfile profile() const { return {sign_weight, open_count, keygen_weight}; }
};

inline void add_dse_args(CLI::App& cmd, DseArgs& a) {
  cmd.add_option("--lib", a.lib, "Bundled library name or JSON file")->capture_default_str();
  cmd.add_option("--sign-weight", a.sign_weight, "Sign operations per connection, in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--open-count", a.open_count, "Open operations per connection")->capture_default_str();
  cmd.add_option("--keygen-weight", a.keygen_weight, "KeyGen operations per connection")
      ->check(CLI::NonNegativeNumber);
  cmd.add_flag("--csv", a.csv, "Emit plot data (name,t_ms,kluts,kffs,brams,feasible)");
}

inline void print_candidates(std::ostream& out, const dse::BlockLibrary& lib,
                             const std::vector<dse::Candidate>& cands) {
  for (const dse::Candidate& c : cands) {
    const dse::CutEntry& e = *lib.find(c.name);
    out << "  " << c.name << ": T=" << num(c.t_ms) << " ms, kluts=" << num(e.kluts)
        << ", kffs=" << num(e.kffs) << ", brams=" << num(e.brams) << ", dsps=" << num(e.dsps) << '\n';
  }
}

inline void print_violations(std::ostream& out, const std::vector<dse::Candidate>& cands) {
  for (const dse::Candidate& c : cands) {
    out << "  " << c.name << ": " << c.violated;
    if (std::isinf(c.violation_ratio)) {
      out << " exceeds a zero bound\n";
    } else {
      out << " exceeds bound by factor " << num(c.violation_ratio) << '\n';
    }
  }
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"MinRank signature toolkit: keys, signatures, profiling and HW/SW design-space exploration",
               "mrwb"};
  app.require_subcommand(1);

  // keygen
  std::string kg_params = "desk", kg_seed, kg_pk, kg_sk;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair");
  keygen_cmd->add_option("--params", kg_params, "Parameter preset (desk, ia-like)")->capture_default_str();
  keygen_cmd->add_option("--seed", kg_seed, "32-byte seed as hex (random if omitted)");
  keygen_cmd->add_option("--pk", kg_pk, "Public key output file")->required();
  keygen_cmd->add_option("--sk", kg_sk, "Secret key output file")->required();

  // sign
  std::string sg_sk, sg_msg, sg_seed, sg_out;
  auto* sign_cmd = app.add_subcommand("sign", "Sign a message file");
  sign_cmd->add_option("--sk", sg_sk, "Secret key file")->required();
  sign_cmd->add_option("--msg", sg_msg, "Message file")->required();
  sign_cmd->add_option("--seed", sg_seed, "32-byte signing randomness as hex (random if omitted)");
  sign_cmd->add_option("--out", sg_out, "Signature output file")->required();

  // open
  std::string op_pk, op_msg, op_sig;
  auto* open_cmd = app.add_subcommand("open", "Verify a signature");
  open_cmd->add_option("--pk", op_pk, "Public key file")->required();
  open_cmd->add_option("--msg", op_msg, "Message file")->required();
  open_cmd->add_option("--sig", op_sig, "Signature file")->required();

  // profile
  std::string pf_params = "ia-like";
  std::size_t pf_runs = 1000;
  bool pf_csv = false;
  auto* profile_cmd = app.add_subcommand("profile", "Per-stage software runtime breakdown");
  profile_cmd->add_option("--params", pf_params, "Parameter preset (desk, ia-like)")->capture_default_str();
  profile_cmd->add_option("--runs", pf_runs, "Executions per function")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  profile_cmd->add_flag("--csv", pf_csv, "CSV instead of a table");

  // dse
  auto* dse_cmd = app.add_subcommand("dse", "Select a HW/SW partition from a block library");
  dse_cmd->require_subcommand(1);

  detail::DseArgs pr_args;
  std::optional<double> max_kluts, max_kffs, max_brams, max_dsps;
  auto* pr_cmd = dse_cmd->add_subcommand("pr", "Minimise runtime under a resource budget");
  detail::add_dse_args(*pr_cmd, pr_args);
  pr_cmd->add_option("--max-kluts", max_kluts, "LUT budget (thousands)")->check(CLI::NonNegativeNumber);
  pr_cmd->add_option("--max-kffs", max_kffs, "FF budget (thousands)")->check(CLI::NonNegativeNumber);
  pr_cmd->add_option("--max-brams", max_brams, "BRAM budget")->check(CLI::NonNegativeNumber);
  pr_cmd->add_option("--max-dsps", max_dsps, "DSP budget")->check(CLI::NonNegativeNumber);

  detail::DseArgs pt_args;
  double pt_tc = 0.0;
  std::string pt_objective = "kluts";
  auto* pt_cmd = dse_cmd->add_subcommand("pt", "Minimise a resource under a runtime budget");
  detail::add_dse_args(*pt_cmd, pt_args);
  pt_cmd->add_option("--tc", pt_tc, "Runtime budget T_c in ms")->required()->check(CLI::NonNegativeNumber);
  pt_cmd->add_option("--objective", pt_objective, "kluts, kffs, brams or dsps")->capture_default_str();

  detail::DseArgs pa_args;
  std::string pa_resource = "kluts";
  auto* pareto_cmd = dse_cmd->add_subcommand("pareto", "Runtime/resource Pareto front");
  detail::add_dse_args(*pareto_cmd, pa_args);
  pareto_cmd->add_option("--resource", pa_resource, "kluts, kffs, brams or dsps")->capture_default_str();

  std::string show_lib = std::string(kBundledLibraryName);
  auto* show_cmd = dse_cmd->add_subcommand("show-lib", "Print a library as JSON");
  show_cmd->add_option("--lib", show_lib, "Bundled library name or JSON file")->capture_default_str();

  // predict
  std::string pd_cut, pd_params = "ia-like", pd_profile = "table1", pd_lib = std::string(kBundledLibraryName);
  std::optional<unsigned> pd_parallelism;
  auto* predict_cmd = app.add_subcommand("predict", "Predict runtimes of a partition from a software profile");
  predict_cmd->add_option("--cut", pd_cut, "Composition name, e.g. \"Cut 1\"")->required();
  predict_cmd->add_option("--params", pd_params, "Parameter preset (desk, ia-like)")->capture_default_str();
  predict_cmd->add_option("--profile", pd_profile, "Profile CSV file, or 'table1' for the reference breakdown")
      ->capture_default_str();
  predict_cmd->add_option("--lib", pd_lib, "Library holding the composition")->capture_default_str();
  predict_cmd->add_option("--parallelism", pd_parallelism, "Override the sum-engine parallelism P")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto resource_or_usage = [](const std::string& s, const char* flag) {
    const auto r = dse::parse_resource(s);
    if (!r) throw detail::UsageError(std::string(flag) + ": expected kluts, kffs, brams or dsps");
    return *r;
  };

  try {
    if (*keygen_cmd) {
      const ParameterSet p = detail::preset_or_usage(kg_params);
      const KeyPair kp = keygen(p, detail::seed_or_random(kg_seed, "--seed"));
      detail::write_file(kg_pk, serialize(kp.pk));
      detail::write_file(kg_sk, serialize(kp.sk));
      out << "wrote " << kg_pk << " and " << kg_sk << " (" << p.to_string() << ")\n";
      return kExitOk;
    }
    if (*sign_cmd) {
      const SecretKey sk = parse_secret_key(detail::read_file(sg_sk));
      const auto msg = detail::read_file(sg_msg);
      const auto bytes = serialize(sign(sk, msg, detail::seed_or_random(sg_seed, "--seed")));
      detail::write_file(sg_out, bytes);
      out << "wrote " << sg_out << " (" << bytes.size() << " bytes)\n";
      return kExitOk;
    }
    if (*open_cmd) {
      const PublicKey pk = parse_public_key(detail::read_file(op_pk));
      const auto msg = detail::read_file(op_msg);
      std::string reason;
      if (open_bytes(pk, msg, detail::read_file(op_sig), &reason) == Verdict::accept) {
        out << "accept\n";
        return kExitOk;
      }
      out << "reject: " << reason << '\n';
      return kExitNegative;
    }
    if (*profile_cmd) {
      ProfileOptions opts;
      opts.runs = pf_runs;
      const SoftwareProfile prof = profile(detail::preset_or_usage(pf_params), opts);
      out << emit_breakdown(prof, pf_csv ? BreakdownFormat::csv : BreakdownFormat::table);
      return kExitOk;
    }
    if (*pr_cmd) {
      const LibraryConfig cfg = load_library(pr_args.lib);
      const dse::ResourceBudget budget{max_kluts, max_kffs, max_brams, max_dsps};
      const dse::SolveReport rep = dse::solve_pr(cfg.library, pr_args.profile(), budget);
      if (pr_args.csv) {
        out << plot_to_csv(plot_rows(cfg.library, rep));
      } else if (rep.is_feasible()) {
        out << "winner: " << *rep.winner << "\nT_ms: " << detail::num(rep.objective) << "\nfeasible ("
            << rep.feasible.size() << " of " << cfg.library.size() << "):\n";
        detail::print_candidates(out, cfg.library, rep.feasible);
      } else {
        out << "infeasible: no configuration fits the budget\ntightest violated constraint per entry:\n";
        detail::print_violations(out, rep.infeasible);
      }
      return rep.is_feasible() ? kExitOk : kExitNegative;
    }
    if (*pt_cmd) {
      const dse::Resource objective = resource_or_usage(pt_objective, "--objective");
      const LibraryConfig cfg = load_library(pt_args.lib);
      const dse::SolveReport rep = dse::solve_pt(cfg.library, pt_args.profile(), pt_tc, objective);
      if (pt_args.csv) {
        out << plot_to_csv(plot_rows(cfg.library, rep));
      } else if (rep.is_feasible()) {
        const dse::CutEntry& w = *cfg.library.find(*rep.winner);
        out << "winner: " << *rep.winner << '\n'
            << dse::resource_name(objective) << ": " << detail::num(rep.objective) << "\nT_ms: "
            << detail::num(dse::total_runtime(w, pt_args.profile())) << "\nfeasible (" << rep.feasible.size()
            << " of " << cfg.library.size() << "):\n";
        detail::print_candidates(out, cfg.library, rep.feasible);
      } else {
        out << "infeasible: no configuration meets T_c=" << detail::num(pt_tc)
            << " ms\nminimum achievable T_ms: " << detail::num(*rep.min_achievable_t_ms) << '\n';
      }
      return rep.is_feasible() ? kExitOk : kExitNegative;
    }
    if (*pareto_cmd) {
      const dse::Resource resource = resource_or_usage(pa_resource, "--resource");
      const LibraryConfig cfg = load_library(pa_args.lib);
      const auto front = dse::pareto_front(cfg.library, pa_args.profile(), resource);
      if (pa_args.csv) {
        out << plot_to_csv(plot_rows(front, pa_args.profile()));
      } else {
        out << "pareto front (T_ms vs " << dse::resource_name(resource) << "):\n";
        for (const dse::CutEntry& e : front) {
          out << "  " << e.name << ": T=" << detail::num(dse::total_runtime(e, pa_args.profile())) << " ms, "
              << dse::resource_name(resource) << "=" << detail::num(e.resource(resource)) << '\n';
        }
      }
      return kExitOk;
    }
    if (*show_cmd) {
      out << library_to_json(load_library(show_lib));
      return kExitOk;
    }
    if (*predict_cmd) {
      const ParameterSet p = detail::preset_or_usage(pd_params);
      const LibraryConfig cfg = load_library(pd_lib);
      const CompositionConfig* comp = cfg.find_composition(pd_cut);
      if (comp == nullptr) throw detail::UsageError("--cut: no composition named '" + pd_cut + "' in " + cfg.name);
      accel::AccelConfig acfg = comp->accel;
      if (pd_parallelism) acfg.parallelism = *pd_parallelism;
      const SoftwareProfile prof =
          pd_profile == "table1" ? table1_profile() : profile_from_csv(detail::read_text(pd_profile));
      const auto pred = accel::predict_cut_runtime(comp->cut, p, prof, acfg);
      out << "cut: " << comp->cut.name << " (P=" << acfg.parallelism << ", " << detail::num(acfg.clock_mhz)
          << " MHz)\n";
      for (DsaFunction f : kAllFunctions) {
        const double sw = prof.total_ms(f);
        out << function_name(f) << "_ms: " << mrwb::detail::fixed(pred[f], 3) << " (software "
            << mrwb::detail::fixed(sw, 3) << ", factor " << mrwb::detail::fixed(sw / pred[f], 2) << ")\n";
      }
      return kExitOk;
    }
  } catch (const FormatError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mrwb::cli
