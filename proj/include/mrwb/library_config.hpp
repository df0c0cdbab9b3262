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

// Block-library config files (JSON).
//
//   {
//     "format": "mrwb-library/1",
//     "name": "...",
//     "entries": [
//       {"name": "Cut 3", "t_keygen_ms": 0.07, "t_sign_ms": 40.52, "t_open_ms": 60.67,
//        "kluts": 22.3, "kffs": 25.1, "brams": 15.5, "dsps": 2}
//     ],
//     "compositions": [
//       {"name": "Cut 3", "keygen": ["keccak_permute", ...], "sign": [...], "open": [...],
//        "concurrent": true, "accel": {"parallelism": 1, "clock_mhz": 142, "pipeline_latency": 4}}
//     ]
//   }
//
// Units: ms, thousands of LUTs / FFs, BRAM and DSP counts. "dsps",
// "compositions", "concurrent" and every "accel" key are optional. Any other
// key is rejected.

#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mrwb/accel.hpp"
#include "mrwb/dse.hpp"
#include "mrwb/error.hpp"

namespace mrwb {

inline constexpr std::string_view kLibraryFormat = "mrwb-library/1";
inline constexpr std::string_view kBundledLibraryName = "table3_zynq7000";

struct CompositionConfig {
  accel::CutComposition cut;
  accel::AccelConfig accel;

  friend bool operator==(const CompositionConfig&, const CompositionConfig&) = default;
};

struct LibraryConfig {
  std::string name;
  dse::BlockLibrary library;
  std::vector<CompositionConfig> compositions;

  const CompositionConfig* find_composition(std::string_view cut_name) const {
    for (const CompositionConfig& c : compositions) {
      if (c.cut.name == cut_name) return &c;
    }
    return nullptr;
  }

  friend bool operator==(const LibraryConfig&, const LibraryConfig&) = default;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline void check_keys(const Json& obj, const std::string& path,
                       std::initializer_list<std::string_view> required,
                       std::initializer_list<std::string_view> optional) {
  if (!obj.is_object()) throw FormatError(path.empty() ? "<root>" : path, "expected an object");
  for (std::string_view k : required) {
    if (!obj.contains(std::string(k))) {
      throw FormatError(path.empty() ? std::string(k) : path + "." + std::string(k), "missing key");
    }
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view k : required) known = known || k == key;
    for (std::string_view k : optional) known = known || k == key;
    if (!known) throw FormatError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

inline std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline double get_number(const Json& obj, const std::string& path, std::string_view key) {
  const Json& v = obj.at(std::string(key));
  if (!v.is_number()) throw FormatError(join(path, key), "expected a number");
  return v.get<double>();
}

inline unsigned get_count(const Json& obj, const std::string& path, std::string_view key) {
  const Json& v = obj.at(std::string(key));
  if (!v.is_number_unsigned()) throw FormatError(join(path, key), "expected a non-negative integer");
  return v.get<unsigned>();
}

inline std::string get_string(const Json& obj, const std::string& path, std::string_view key) {
  const Json& v = obj.at(std::string(key));
  if (!v.is_string()) throw FormatError(join(path, key), "expected a string");
  return v.get<std::string>();
}

inline dse::CutEntry parse_entry(const Json& j, const std::string& path) {
  check_keys(j, path, {"name", "t_keygen_ms", "t_sign_ms", "t_open_ms", "kluts", "kffs", "brams"},
             {"dsps"});
  dse::CutEntry e;
  e.name = get_string(j, path, "name");
  e.t_keygen_ms = get_number(j, path, "t_keygen_ms");
  e.t_sign_ms = get_number(j, path, "t_sign_ms");
  e.t_open_ms = get_number(j, path, "t_open_ms");
  e.kluts = get_number(j, path, "kluts");
  e.kffs = get_number(j, path, "kffs");
  e.brams = get_number(j, path, "brams");
  if (j.contains("dsps")) e.dsps = get_number(j, path, "dsps");
  try {
    e.validate();
  } catch (const ConfigError& err) {
    throw FormatError(path, err.what());
  }
  return e;
}

inline CompositionConfig parse_composition(const Json& j, const std::string& path) {
  check_keys(j, path, {"name", "keygen", "sign", "open"}, {"concurrent", "accel"});
  const std::string name = get_string(j, path, "name");
  std::array<std::vector<std::string>, 3> stages;
  for (DsaFunction f : kAllFunctions) {
    const std::string key(function_name(f));
    const Json& list = j.at(key);
    if (!list.is_array()) throw FormatError(join(path, key), "expected an array of stage names");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = join(path, key) + "[" + std::to_string(i) + "]";
      if (!list[i].is_string()) throw FormatError(where, "expected a stage name");
      const std::string s = list[i].get<std::string>();
      const auto stage = instr::parse_stage(s);
      if (!stage) throw FormatError(where, "unknown stage '" + s + "'");
      if (!accel::is_accelerable(*stage)) throw FormatError(where, "stage '" + s + "' has no hardware model");
      stages[index_of(f)].push_back(s);
    }
  }
  bool concurrent = true;
  if (j.contains("concurrent")) {
    if (!j.at("concurrent").is_boolean()) throw FormatError(join(path, "concurrent"), "expected true or false");
    concurrent = j.at("concurrent").get<bool>();
  }
  CompositionConfig out{accel::CutComposition::from_names(name, stages, concurrent), {}};
  if (j.contains("accel")) {
    const std::string apath = join(path, "accel");
    const Json& a = j.at("accel");
    check_keys(a, apath, {}, {"parallelism", "clock_mhz", "pipeline_latency"});
    if (a.contains("parallelism")) out.accel.parallelism = get_count(a, apath, "parallelism");
    if (a.contains("clock_mhz")) out.accel.clock_mhz = get_number(a, apath, "clock_mhz");
    if (a.contains("pipeline_latency")) out.accel.pipeline_latency = get_count(a, apath, "pipeline_latency");
    try {
      out.accel.validate();
    } catch (const ConfigError& err) {
      throw FormatError(apath, err.what());
    }
  }
  return out;
}

}  // namespace detail

inline LibraryConfig parse_library(std::string_view text) {
  detail::Json root;
  try {
    root = detail::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("<root>", std::string("invalid JSON: ") + e.what());
  }
  detail::check_keys(root, "", {"format", "name", "entries"}, {"compositions"});
  const std::string format = detail::get_string(root, "", "format");
  if (format != kLibraryFormat) {
    throw UnsupportedVersionError("format", "unsupported library format '" + format + "'");
  }
  const std::string name = detail::get_string(root, "", "name");

  const detail::Json& entries = root.at("entries");
  if (!entries.is_array()) throw FormatError("entries", "expected an array");
  if (entries.empty()) throw FormatError("entries", "library is empty");
  std::vector<dse::CutEntry> cuts;
  std::set<std::string> names;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = "entries[" + std::to_string(i) + "]";
    cuts.push_back(detail::parse_entry(entries[i], path));
    if (!names.insert(cuts.back().name).second) {
      throw FormatError(path + ".name", "duplicate cut name '" + cuts.back().name + "'");
    }
  }

  std::vector<CompositionConfig> comps;
  if (root.contains("compositions")) {
    const detail::Json& list = root.at("compositions");
    if (!list.is_array()) throw FormatError("compositions", "expected an array");
    std::set<std::string> comp_names;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "compositions[" + std::to_string(i) + "]";
      comps.push_back(detail::parse_composition(list[i], path));
      if (!comp_names.insert(comps.back().cut.name).second) {
        throw FormatError(path + ".name", "duplicate composition '" + comps.back().cut.name + "'");
      }
    }
  }
  return {name, dse::BlockLibrary(std::move(cuts)), std::move(comps)};
}

inline std::string library_to_json(const LibraryConfig& cfg) {
  detail::Json root;
  root["format"] = kLibraryFormat;
  root["name"] = cfg.name;
  root["entries"] = detail::Json::array();
  for (const dse::CutEntry& e : cfg.library.entries()) {
    root["entries"].push_back({{"name", e.name},
                               {"t_keygen_ms", e.t_keygen_ms},
                               {"t_sign_ms", e.t_sign_ms},
                               {"t_open_ms", e.t_open_ms},
                               {"kluts", e.kluts},
                               {"kffs", e.kffs},
                               {"brams", e.brams},
                               {"dsps", e.dsps}});
  }
  if (!cfg.compositions.empty()) {
    root["compositions"] = detail::Json::array();
    for (const CompositionConfig& c : cfg.compositions) {
      detail::Json j;
      j["name"] = c.cut.name;
      for (DsaFunction f : kAllFunctions) {
        detail::Json stages = detail::Json::array();
        for (instr::Stage s : c.cut.stages(f)) stages.push_back(instr::stage_name(s));
        j[std::string(function_name(f))] = stages;
      }
      j["concurrent"] = c.cut.concurrent;
      j["accel"] = {{"parallelism", c.accel.parallelism},
                    {"clock_mhz", c.accel.clock_mhz},
                    {"pipeline_latency", c.accel.pipeline_latency}};
      root["compositions"].push_back(j);
    }
  }
  return root.dump(2) + "\n";
}

/// Measured ZYNQ-7000 library: 18 hardware/software partitions. DSPs are not
/// reported per cut (at most 2 were used), so every entry assumes 2.
///
/// Compositions map each partition to accelerated stages: the sum engine
/// always; key unpack and Phase 1 as the Keccak stages of the affected
/// functions; Phases 1-4 additionally as the matrix products.
inline constexpr std::string_view kTable3Json = R"json({
  "format": "mrwb-library/1",
  "name": "table3_zynq7000",
  "entries": [
    {"name": "Cut 1", "t_keygen_ms": 1.19, "t_sign_ms": 69.62, "t_open_ms": 61.85, "kluts": 3.8, "kffs": 5.4, "brams": 9},
    {"name": "Cut 2", "t_keygen_ms": 1.05, "t_sign_ms": 230.92, "t_open_ms": 218.28, "kluts": 9, "kffs": 8.6, "brams": 6.5},
    {"name": "Cut 1+2", "t_keygen_ms": 0.88, "t_sign_ms": 53.16, "t_open_ms": 53.35, "kluts": 13.0, "kffs": 14.5, "brams": 15.5},
    {"name": "Cut 3", "t_keygen_ms": 0.07, "t_sign_ms": 40.52, "t_open_ms": 60.67, "kluts": 22.3, "kffs": 25.1, "brams": 15.5},
    {"name": "Cut 6", "t_keygen_ms": 0.12, "t_sign_ms": 11.75, "t_open_ms": 60.51, "kluts": 26.0, "kffs": 26.0, "brams": 59},
    {"name": "Cut 6, P=4", "t_keygen_ms": 0.11, "t_sign_ms": 6.36, "t_open_ms": 60.59, "kluts": 26.0, "kffs": 25.1, "brams": 61},
    {"name": "Cut 6, P=8", "t_keygen_ms": 0.11, "t_sign_ms": 5.62, "t_open_ms": 60.57, "kluts": 29.4, "kffs": 25.7, "brams": 64},
    {"name": "Cut 6, P=16", "t_keygen_ms": 0.11, "t_sign_ms": 5.23, "t_open_ms": 60.56, "kluts": 34.0, "kffs": 26.4, "brams": 73},
    {"name": "Cut 4", "t_keygen_ms": 0.07, "t_sign_ms": 72.00, "t_open_ms": 39.57, "kluts": 19.3, "kffs": 22.4, "brams": 15},
    {"name": "Cut 7", "t_keygen_ms": 0.10, "t_sign_ms": 68.52, "t_open_ms": 11.52, "kluts": 22.2, "kffs": 23.8, "brams": 59.5},
    {"name": "Cut 7, P=4", "t_keygen_ms": 0.11, "t_sign_ms": 68.52, "t_open_ms": 6.50, "kluts": 22.2, "kffs": 23.1, "brams": 61},
    {"name": "Cut 7, P=8", "t_keygen_ms": 0.11, "t_sign_ms": 68.32, "t_open_ms": 5.81, "kluts": 25.6, "kffs": 23.6, "brams": 66},
    {"name": "Cut 7, P=16", "t_keygen_ms": 0.10, "t_sign_ms": 68.25, "t_open_ms": 5.45, "kluts": 26.6, "kffs": 24.3, "brams": 74},
    {"name": "Cut 5", "t_keygen_ms": 0.07, "t_sign_ms": 40.24, "t_open_ms": 37.38, "kluts": 25.4, "kffs": 28.5, "brams": 18},
    {"name": "Cut 8", "t_keygen_ms": 0.12, "t_sign_ms": 11.75, "t_open_ms": 11.62, "kluts": 30.9, "kffs": 33.0, "brams": 63.5},
    {"name": "Cut 8, P=4", "t_keygen_ms": 0.11, "t_sign_ms": 6.36, "t_open_ms": 6.56, "kluts": 31.7, "kffs": 32.4, "brams": 65},
    {"name": "Cut 8, P=8", "t_keygen_ms": 0.11, "t_sign_ms": 5.62, "t_open_ms": 5.87, "kluts": 34.8, "kffs": 32.4, "brams": 69},
    {"name": "Cut 8, P=16", "t_keygen_ms": 0.11, "t_sign_ms": 5.23, "t_open_ms": 5.51, "kluts": 35.6, "kffs": 33.1, "brams": 78}
  ],
  "compositions": [
    {"name": "Cut 1", "keygen": ["scalar_mat_sum"], "sign": ["scalar_mat_sum"], "open": ["scalar_mat_sum"]},
    {"name": "Cut 2",
     "keygen": ["keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["keccak_permute", "keccak_squeeze", "keccak_absorb"]},
    {"name": "Cut 1+2",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"]},
    {"name": "Cut 3",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum"],
     "accel": {"clock_mhz": 142}},
    {"name": "Cut 4",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum"],
     "open": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "accel": {"clock_mhz": 142}},
    {"name": "Cut 5",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "accel": {"clock_mhz": 142}},
    {"name": "Cut 6",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum"]},
    {"name": "Cut 6, P=4",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum"],
     "accel": {"parallelism": 4}},
    {"name": "Cut 6, P=8",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum"],
     "accel": {"parallelism": 8}},
    {"name": "Cut 6, P=16",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum"],
     "accel": {"parallelism": 16}},
    {"name": "Cut 7",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum"],
     "open": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"]},
    {"name": "Cut 7, P=4",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum"],
     "open": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "accel": {"parallelism": 4}},
    {"name": "Cut 7, P=8",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum"],
     "open": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "accel": {"parallelism": 8}},
    {"name": "Cut 7, P=16",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum"],
     "open": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "accel": {"parallelism": 16}},
    {"name": "Cut 8",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"]},
    {"name": "Cut 8, P=4",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "accel": {"parallelism": 4}},
    {"name": "Cut 8, P=8",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "accel": {"parallelism": 8}},
    {"name": "Cut 8, P=16",
     "keygen": ["scalar_mat_sum", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "sign": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "open": ["scalar_mat_sum", "mat_prod", "keccak_permute", "keccak_squeeze", "keccak_absorb"],
     "accel": {"parallelism": 16}}
  ]
}
)json";

inline LibraryConfig bundled_library() { return parse_library(kTable3Json); }

/// Accepts the bundled library name or a path to a JSON file.
inline LibraryConfig load_library(const std::string& name_or_path) {
  if (name_or_path == kBundledLibraryName) return bundled_library();
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open library '" + name_or_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_library(buf.str());
}

}  // namespace mrwb
