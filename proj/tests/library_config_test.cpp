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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mrwb/library_config.hpp"
#include "mrwb/plot_data.hpp"

namespace mrwb {
namespace {

std::string field_of(const std::string& json) {
  try {
    parse_library(json);
  } catch (const FormatError& e) {
    return e.field();
  }
  return "<accepted>";
}

constexpr const char* kMinimal = R"({"format": "mrwb-library/1", "name": "t", "entries": [
  {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kluts": 4, "kffs": 5, "brams": 6}]})";

TEST(LibraryConfig, BundledTable) {
  const LibraryConfig cfg = bundled_library();
  EXPECT_EQ(cfg.name, "table3_zynq7000");
  EXPECT_EQ(cfg.library.size(), 18U);
  EXPECT_EQ(cfg.compositions.size(), 18U);
  for (const dse::CutEntry& e : cfg.library.entries()) {
    EXPECT_DOUBLE_EQ(e.dsps, dse::kDefaultDsps);
    EXPECT_NE(cfg.find_composition(e.name), nullptr) << e.name;
  }
  const dse::CutEntry& c3 = *cfg.library.find("Cut 3");
  EXPECT_DOUBLE_EQ(c3.t_sign_ms, 40.52);
  EXPECT_DOUBLE_EQ(c3.t_open_ms, 60.67);
  EXPECT_DOUBLE_EQ(c3.kluts, 22.3);
  EXPECT_DOUBLE_EQ(cfg.find_composition("Cut 5")->accel.clock_mhz, 142.0);
  EXPECT_DOUBLE_EQ(cfg.find_composition("Cut 6")->accel.clock_mhz, 125.0);
  EXPECT_EQ(cfg.find_composition("Cut 8, P=16")->accel.parallelism, 16U);
}

TEST(LibraryConfig, LoadsByNameOrPath) {
  const auto path = std::filesystem::temp_directory_path() / "mrwb_library_test.json";
  const LibraryConfig cfg = load_library("table3_zynq7000");
  {
    std::ofstream out(path);
    out << library_to_json(cfg);
  }
  EXPECT_EQ(load_library(path.string()), cfg);
  std::filesystem::remove(path);
  EXPECT_THROW(load_library("/nonexistent/lib.json"), ConfigError);
}

TEST(LibraryConfig, RoundTripPreservesValues) {
  const LibraryConfig cfg = bundled_library();
  EXPECT_EQ(parse_library(library_to_json(cfg)), cfg);
  const LibraryConfig minimal = parse_library(kMinimal);
  EXPECT_TRUE(minimal.compositions.empty());
  EXPECT_EQ(parse_library(library_to_json(minimal)), minimal);
}

TEST(LibraryConfig, StrictParsingNamesTheField) {
  EXPECT_EQ(field_of(kMinimal), "<accepted>");
  EXPECT_EQ(field_of(R"({"format": "mrwb-library/1", "name": "t", "entries": [
    {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kluts": 4, "kffs": 5, "brams": 6, "luts": 1}]})"),
            "entries[0].luts");
  EXPECT_EQ(field_of(R"({"format": "mrwb-library/1", "name": "t", "entries": [
    {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kluts": "4", "kffs": 5, "brams": 6}]})"),
            "entries[0].kluts");
  EXPECT_EQ(field_of(R"({"format": "mrwb-library/1", "name": "t", "entries": [
    {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kffs": 5, "brams": 6}]})"),
            "entries[0].kluts");
  EXPECT_EQ(field_of(R"({"format": "mrwb-library/1", "name": "t", "entries": [], "extra": 1})"), "extra");
  EXPECT_EQ(field_of(R"({"format": "mrwb-library/1", "name": "t", "entries": []})"), "entries");
  EXPECT_EQ(field_of("{not json"), "<root>");
  EXPECT_EQ(field_of(R"({"format": "mrwb-library/1", "name": "t", "entries": [
    {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kluts": 4, "kffs": 5, "brams": 6},
    {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kluts": 4, "kffs": 5, "brams": 6}]})"),
            "entries[1].name");
  EXPECT_EQ(field_of(R"({"format": "mrwb-library/1", "name": "t", "entries": [
    {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kluts": 4, "kffs": 5, "brams": 6}],
    "compositions": [{"name": "A", "keygen": [], "sign": ["warp"], "open": []}]})"),
            "compositions[0].sign[0]");
  EXPECT_EQ(field_of(R"({"format": "mrwb-library/1", "name": "t", "entries": [
    {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kluts": 4, "kffs": 5, "brams": 6}],
    "compositions": [{"name": "A", "keygen": [], "sign": [], "open": [], "accel": {"p": 4}}]})"),
            "compositions[0].accel.p");
}

TEST(LibraryConfig, RejectsOtherFormatVersions) {
  EXPECT_THROW(parse_library(R"({"format": "mrwb-library/2", "name": "t", "entries": []})"),
               UnsupportedVersionError);
}

TEST(PlotData, OneRowPerLibraryEntry) {
  const LibraryConfig cfg = bundled_library();
  const auto rows = plot_rows(cfg.library, dse::solve_pr(cfg.library, {1, 1}, {23.0, 30.0, 50.0, {}}));
  ASSERT_EQ(rows.size(), 18U);
  EXPECT_EQ(rows.front().name, "Cut 1");
  const auto csv = plot_to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "name,t_ms,kluts,kffs,brams,feasible");
  EXPECT_NE(csv.find("\"Cut 6, P=4\",66.95,26,25.1,61,false"), std::string::npos) << csv;
  EXPECT_EQ(plot_from_csv(csv), rows);
}

TEST(PlotData, EmptyFeasibleSetStillEmitsRows) {
  const LibraryConfig cfg = bundled_library();
  const auto rows = plot_rows(cfg.library, dse::solve_pr(cfg.library, {1, 1}, {0.0, 0.0, 0.0, {}}));
  ASSERT_EQ(rows.size(), 18U);
  for (const PlotRow& r : rows) EXPECT_FALSE(r.feasible);
}

TEST(PlotData, ValuesSurviveLibraryReload) {
  const LibraryConfig cfg = bundled_library();
  const LibraryConfig again = parse_library(library_to_json(cfg));
  const dse::PkiProfile p{1, 2};
  const auto a = plot_rows(cfg.library, dse::solve_pt(cfg.library, p, 100, dse::Resource::brams));
  const auto b = plot_rows(again.library, dse::solve_pt(again.library, p, 100, dse::Resource::brams));
  EXPECT_EQ(plot_to_csv(a), plot_to_csv(b));
  EXPECT_EQ(plot_from_csv(plot_to_csv(plot_rows(dse::pareto_front(cfg.library, p, dse::Resource::kluts), p))),
            plot_rows(dse::pareto_front(cfg.library, p, dse::Resource::kluts), p));
}

TEST(PlotData, RejectsMalformedCsv) {
  EXPECT_THROW(plot_from_csv("bad header\n"), FormatError);
  EXPECT_THROW(plot_from_csv("name,t_ms,kluts,kffs,brams,feasible\n\"A,1,2,3,4,true\n"), FormatError);
  EXPECT_THROW(plot_from_csv("name,t_ms,kluts,kffs,brams,feasible\n\"A\",x,2,3,4,true\n"), FormatError);
  EXPECT_THROW(plot_from_csv("name,t_ms,kluts,kffs,brams,feasible\n\"A\",1,2,3,4,maybe\n"), FormatError);
}

}  // namespace
}  // namespace mrwb
