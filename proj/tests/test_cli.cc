// Copyright 2026 The Authors.
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.h"
#include "gsmarket/cli.h"
#include "gsmarket/error.h"

namespace gsmarket {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun RunGsm(std::vector<std::string> args) {
  args.insert(args.begin(), "gsmarket");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("gsmarket_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string Slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(InstanceFile, RoundTripFixtures) {
  for (const char* name : {"valuation_change_1", "no_walrasian", "packing_not_lattice",
                           "covering_not_lattice", "max_price_row_2", "exchange_graph"}) {
    const Instance inst = testing::LoadFixture(name);
    const std::string text = SerializeInstance(inst);
    const Instance back = ParseInstance(text);
    EXPECT_EQ(back, inst) << name;
    EXPECT_EQ(SerializeInstance(back), text) << name;
    EXPECT_EQ(back.valuation(1).sgs_status(), inst.valuation(1).sgs_status()) << name;
  }
}

TEST(InstanceFile, RoundTripCorpusAndExtensions) {
  for (const Instance& inst : testing::Corpus()) EXPECT_EQ(ParseInstance(SerializeInstance(inst)), inst);
  const Instance capped(Bundle{2, 1}, {Valuation::MakeAdditive({3, 1}), Valuation::MakeUnitDemand({1, 2})},
                        std::vector<int>{1, 1});
  EXPECT_EQ(ParseInstance(SerializeInstance(capped)), capped);
  const CopiedInstance c = CopyToUnitSupply(capped);
  EXPECT_EQ(ParseInstance(SerializeInstance(c.instance)), c.instance);
}

TEST(InstanceFile, SchemaErrors) {
  const char* bad[] = {
      "{",
      R"({"version":1,"items":1,"supply":[1]})",
      R"({"version":2,"items":1,"supply":[1],"buyers":[]})",
      R"({"version":1,"items":2,"supply":[1],"buyers":[{"kind":"additive","weights":[1]}]})",
      R"({"version":1,"items":1,"supply":[1],"buyers":[{"kind":"additive","weights":[-1]}]})",
      R"({"version":1,"items":1,"supply":[1],"buyers":[{"kind":"magic"}]})",
      R"({"version":1,"items":2,"supply":[1,1],"buyers":[{"kind":"table","values":{"0,0":0,"1,0":1,"0,1":1}}]})",
  };
  for (const char* text : bad) EXPECT_THROW(ParseInstance(text), MarketError) << text;
}

TEST(InstanceFile, TableKeysAreCsv) {
  const std::string text = SerializeInstance(testing::CoveringNotLattice());
  EXPECT_NE(text.find("\"1,1,0\": 14"), std::string::npos);
}

TEST(TraceFile, RoundTrip) {
  const Instance inst = testing::MaxPriceRow(1);
  const AuctionTrace t = RunDescending(inst);
  const std::string digest = InstanceDigest(inst);
  const Json j = TraceToJson(t, digest);
  std::string back_digest;
  const AuctionTrace back = TraceFromJson(Json::parse(j.dump()), &back_digest);
  EXPECT_EQ(back_digest, digest);
  EXPECT_EQ(TraceToJson(back, back_digest).dump(), j.dump());
  EXPECT_EQ(back.final_prices, t.final_prices);
  EXPECT_EQ(back.rounds.size(), t.rounds.size());
  EXPECT_EQ(back.allocation, t.allocation);
}

TEST(TraceFile, ReplayReproducesFinalPrices) {
  for (const Instance& inst : testing::Corpus()) {
    for (AuctionMode mode : {AuctionMode::kAscending, AuctionMode::kDescending, AuctionMode::kGreedy}) {
      const AuctionTrace t = RunAuction(inst, mode, mode == AuctionMode::kGreedy
                                                        ? std::optional(DefaultDescendingStart(inst))
                                                        : std::nullopt);
      const ReplayResult r = ReplayTrace(inst, t);
      EXPECT_TRUE(r.ok) << r.detail;
      EXPECT_EQ(r.final_prices, t.final_prices);
    }
  }
}

TEST(TraceFile, CorruptedReplayNamesTheRound) {
  const Instance inst = testing::MaxPriceRow(1);
  AuctionTrace t = RunDescending(inst);
  ASSERT_GE(t.rounds.size(), 3u);
  t.rounds[2].set = ItemSet::Of({3});
  const ReplayResult r = ReplayTrace(inst, t);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.first_divergent_round, 2);
}

TEST(Digest, Deterministic) {
  GenSpec spec;
  spec.family = Family::kMixed;
  spec.m = 4;
  spec.n = 3;
  spec.max_supply = 2;
  spec.seed = 99;
  EXPECT_EQ(InstanceDigest(GenerateInstance(spec)), InstanceDigest(GenerateInstance(spec)));
  spec.seed = 100;
  const std::string other = InstanceDigest(GenerateInstance(spec));
  spec.seed = 99;
  EXPECT_NE(InstanceDigest(GenerateInstance(spec)), other);
  EXPECT_EQ(InstanceDigest(GenerateInstance(spec)).size(), 16u);
}

TEST(Pcg32, ReferenceStream) {
  // pcg32_srandom(42, 54) reference output.
  Pcg32 rng(42, 54);
  const uint32_t expect[] = {0xa15c02b7, 0x7b47f409, 0xba1d3330, 0x83d2f293, 0xbfa4784b, 0xcbed606e};
  for (uint32_t x : expect) EXPECT_EQ(rng.Next(), x);
}

TEST(Gen, UnitDemandIsMnatConcave) {
  const CliRun r = RunGsm({"gen", "--family", "unit_demand", "--m", "3", "--n", "3", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Instance inst = ParseInstance(r.out);
  EXPECT_EQ(inst.item_count(), 3);
  EXPECT_EQ(inst.buyer_count(), 3);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(CheckMnatConcave(inst.valuation(i), inst.supply()));
}

TEST(Gen, TableIsMonotoneAndCertified) {
  const CliRun r = RunGsm({"gen", "--family", "table", "--m", "2", "--B", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Instance inst = ParseInstance(r.out);
  for (int i = 0; i < inst.buyer_count(); ++i) {
    EXPECT_EQ(inst.valuation(i).sgs_status(), SgsStatus::kCertified);
    EXPECT_LE(inst.valuation(i).Value(Bundle{1, 0}), inst.valuation(i).Value(Bundle{1, 1}));
  }
}

TEST(Gen, SameSeedSameBytes) {
  const auto a = RunGsm({"gen", "--family", "mixed", "--m", "4", "--n", "3", "--B", "2", "--seed", "5"});
  const auto b = RunGsm({"gen", "--family", "mixed", "--m", "4", "--n", "3", "--B", "2", "--seed", "5"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(InstanceDigest(ParseInstance(a.out)), InstanceDigest(ParseInstance(b.out)));
}

TEST(Gen, ValueCapHolds) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    GenSpec spec;
    spec.m = 4;
    spec.n = 3;
    spec.max_supply = 2;
    spec.value_cap = 6;
    spec.seed = seed;
    EXPECT_LE(GenerateInstance(spec).MaxValue(), 6);
  }
}

TEST(Gen, UnknownFamily) {
  EXPECT_EQ(RunGsm({"gen", "--family", "nope"}).code, kExitInput);
}

TEST(Solve, PrintsMinimalPrices) {
  TempDir dir;
  const std::string trace = dir.File("trace.json");
  const CliRun r = RunGsm({"solve", testing::FixturePath("valuation_change_1"), "--trace-out", trace});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("(0, 1, 1)"), std::string::npos);
  const Json j = Json::parse(Slurp(trace));
  EXPECT_EQ(j["mode"], "ascending");
  EXPECT_EQ(j["final"]["prices"], Json::parse("[0,1,1]"));
  EXPECT_TRUE(j["final"]["walrasian"].get<bool>());
  for (const char* key : {"do", "exo", "pushes_sat", "pushes_nonsat", "relabels"})
    EXPECT_TRUE(j["final"]["counters"].contains(key));
}

TEST(Solve, NoWalrasianExitsTwo) {
  TempDir dir;
  const CliRun r = RunGsm({"solve", testing::FixturePath("no_walrasian"), "--trace-out", dir.File("t.json")});
  EXPECT_EQ(r.code, kExitGuard);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.File("t.json")));
}

TEST(Solve, StartAboveMinimalWarnsAndFlags) {
  const CliRun r = RunGsm({"solve", testing::FixturePath("valuation_change_2"), "--start", "1,1,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning:"), std::string::npos);
  EXPECT_NE(r.out.find("minimal: false"), std::string::npos);
  const CliRun ok = RunGsm({"solve", testing::FixturePath("valuation_change_1"), "--start", "0,1,0"});
  EXPECT_NE(ok.out.find("minimal: true"), std::string::npos);
}

TEST(Solve, Modes) {
  for (const char* mode : {"descending", "two-phase", "greedy"}) {
    const CliRun r = RunGsm({"solve", testing::FixturePath("max_price_row_1"), "--mode", mode, "--json"});
    ASSERT_EQ(r.code, 0) << mode << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["trace"]["final"]["walrasian"].get<bool>());
  }
  const CliRun d = RunGsm({"solve", testing::FixturePath("max_price_row_1"), "--mode", "descending"});
  EXPECT_NE(d.out.find("(4, 8, 0, 0)"), std::string::npos);
}

TEST(Solve, InputErrors) {
  EXPECT_EQ(RunGsm({"solve", "/nonexistent.json"}).code, kExitInput);
  EXPECT_EQ(RunGsm({"solve", testing::FixturePath("valuation_change_1"), "--mode", "sideways"}).code,
            kExitInput);
  EXPECT_EQ(RunGsm({"solve", testing::FixturePath("valuation_change_1"), "--start", "1,2"}).code, kExitInput);
  EXPECT_EQ(RunGsm({"frobnicate"}).code, kExitInput);
}

TEST(Verify, ExchangeGraphSets) {
  const CliRun r = RunGsm({"verify", testing::FixturePath("exchange_graph"), "--scope", "sets"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(Json::parse(r.out)["pass"].get<bool>());
}

TEST(Verify, CorruptedTraceReplay) {
  TempDir dir;
  const std::string inst = testing::FixturePath("max_price_row_1");
  const std::string trace = dir.File("trace.json");
  ASSERT_EQ(RunGsm({"solve", inst, "--mode", "descending", "--trace-out", trace}).code, 0);
  const CliRun good = RunGsm({"verify", inst, "--scope", "sets", "--trace", trace});
  EXPECT_EQ(good.code, 0) << good.out;
  Json j = Json::parse(Slurp(trace));
  j["rounds"][1]["magnitude"] = 99;
  std::ofstream(trace) << j.dump(2);
  const CliRun bad = RunGsm({"verify", inst, "--scope", "sets", "--trace", trace});
  EXPECT_EQ(bad.code, kExitInput);
  const Json v = Json::parse(bad.out);
  EXPECT_FALSE(v["pass"].get<bool>());
  EXPECT_EQ(v["trace"]["first_divergent_round"], 1);
}

TEST(Verify, RandomBatchAllScopes) {
  TempDir dir;
  std::vector<std::string> args{"verify"};
  for (int k = 0; k < 6; ++k) {
    const std::string path = dir.File("inst" + std::to_string(k) + ".json");
    std::ofstream(path) << SerializeInstance(testing::Corpus()[k]);
    args.push_back(path);
  }
  args.insert(args.end(), {"--scope", "all"});
  const CliRun r = RunGsm(args);
  EXPECT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["instances"].size(), 6u);
  for (size_t k = 1; k < 6; ++k)
    EXPECT_LE(j["instances"][k - 1]["instance_digest"].get<std::string>(),
              j["instances"][k]["instance_digest"].get<std::string>());
}

TEST(Verify, NonSgsFixtureFails) {
  const CliRun r = RunGsm({"verify", testing::FixturePath("covering_not_lattice"), "--scope", "walrasian"});
  EXPECT_EQ(r.code, kExitInput);
}

TEST(Verify, BudgetRefusalExitsThree) {
  const CliRun r =
      RunGsm({"verify", testing::FixturePath("valuation_change_1"), "--scope", "walrasian", "--max-price", "1"});
  EXPECT_EQ(r.code, kExitBudget);
}

TEST(Bench, SingleBuyerOneDemandCall) {
  BenchSpec spec;
  spec.n = 1;
  spec.m_min = 4;
  spec.m_max = 6;
  for (const BenchRow& row : CmdBench(spec)) EXPECT_EQ(row.counters.oracle.do_calls, 1);
}

TEST(Bench, CsvColumns) {
  const CliRun r = RunGsm({"bench", "--n", "2", "--m-min", "4", "--m-max", "5", "--reps", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  for (const char* col : {"m", "do_calls", "exo_calls", "pushes_nonsat", "relabels", "wall_us",
                          "exo_per_nm3", "exo_per_unit_bound"})
    EXPECT_NE(header.find(col), std::string::npos) << col;
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 2);
}

}  // namespace
}  // namespace gsmarket
