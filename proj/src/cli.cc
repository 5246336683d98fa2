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

#include "gsmarket/cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "gsmarket/demand_sets.h"
#include "gsmarket/error.h"
#include "gsmarket/polymatroid_sum.h"

namespace gsmarket {

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEnumerationLimit:
      return kExitBudget;
    case ErrorCode::kRoundLimitExceeded:
    case ErrorCode::kStalledNotWalrasian:
    case ErrorCode::kInternalInvariant:
      return kExitGuard;
    default:
      return kExitInput;
  }
}

// ---------------------------------------------------------------- solve

SolveResult CmdSolve(const Instance& inst, AuctionMode mode, std::optional<PriceVector> start,
                     int64_t round_limit) {
  SolveResult r;
  AuctionOptions opt;
  opt.round_limit = round_limit;
  if (start && start->size() != inst.item_count()) {
    r.exit_code = kExitInput;
    r.diagnostic = "start has " + std::to_string(start->size()) + " entries, instance has " +
                   std::to_string(inst.item_count()) + " items";
    return r;
  }
  if (start && mode == AuctionMode::kAscending && *start != PriceVector(inst.item_count()))
    r.warnings.push_back(
        "ascending start must not exceed the minimal Walrasian prices; the result is minimal "
        "only if it does not");
  if (start && mode == AuctionMode::kDescending && *start != DefaultDescendingStart(inst))
    r.warnings.push_back(
        "descending start must not lie below the maximal Walrasian prices; the result is "
        "maximal only if it does not");
  try {
    r.trace = RunAuction(inst, mode, start, opt);
    r.has_trace = true;
    if (start && (mode == AuctionMode::kAscending || mode == AuctionMode::kDescending)) {
      const AuctionTrace ref = RunAuction(inst, mode, std::nullopt, opt);
      r.extreme = ref.final_prices == r.trace.final_prices;
      if (!*r.extreme)
        r.warnings.push_back(std::string("result is not the ") +
                             (mode == AuctionMode::kAscending ? "minimal" : "maximal") +
                             " Walrasian price vector " + FormatPrices(ref.final_prices));
    }
  } catch (const AuctionError& e) {
    r.trace = e.trace();
    r.has_trace = true;
    r.exit_code = ExitCodeFor(e.code());
    r.diagnostic = e.what();
  } catch (const MarketError& e) {
    r.exit_code = ExitCodeFor(e.code());
    r.diagnostic = e.what();
  }
  return r;
}

// ---------------------------------------------------------------- verify

std::optional<VerifyScope> ParseVerifyScope(const std::string& name) {
  for (VerifyScope s : {VerifyScope::kAll, VerifyScope::kSum, VerifyScope::kSets,
                        VerifyScope::kWalrasian, VerifyScope::kMonotonicity})
    if (name == VerifyScopeName(s)) return s;
  return std::nullopt;
}

const char* VerifyScopeName(VerifyScope scope) {
  switch (scope) {
    case VerifyScope::kAll: return "all";
    case VerifyScope::kSum: return "sum";
    case VerifyScope::kSets: return "sets";
    case VerifyScope::kWalrasian: return "walrasian";
    case VerifyScope::kMonotonicity: return "monotonicity";
  }
  return "?";
}

namespace {

struct Check {
  std::string name;
  int64_t cases = 0;
  int64_t failed = 0;
  std::vector<std::string> failures;
  int64_t max_listed = 8;

  void Expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failed;
    if (static_cast<int64_t>(failures.size()) < max_listed) failures.push_back(what);
  }
  Json ToJson() const {
    Json j;
    j["name"] = name;
    j["pass"] = failed == 0;
    j["cases"] = cases;
    j["failed"] = failed;
    j["failures"] = failures;
    return j;
  }
};

// Runs fn and turns solver errors other than budget refusals into failures.
template <typename Fn>
void Guarded(Check& check, const std::string& label, Fn fn) {
  try {
    fn();
  } catch (const MarketError& e) {
    if (e.code() == ErrorCode::kEnumerationLimit) throw;
    check.Expect(false, label + ": " + e.what());
  }
}

std::optional<AuctionTrace> TryAuction(const Instance& inst, AuctionMode mode,
                                       std::optional<PriceVector> start,
                                       AuctionTrace* partial = nullptr) {
  try {
    return RunAuction(inst, mode, start);
  } catch (const AuctionError& e) {
    if (partial) *partial = e.trace();
    return std::nullopt;
  }
}

// Whole grid [0, maxV+1]^m when small, otherwise the prices the two
// extreme auctions visit.
std::vector<PriceVector> PricePoints(const Instance& inst) {
  const int m = inst.item_count();
  const int64_t side = inst.MaxValue() + 2;
  int64_t count = 1;
  for (int e = 0; e < m && count <= 256; ++e) count *= side;
  std::set<PriceVector> points;
  if (count <= 256) {
    std::vector<int64_t> p(m, 0);
    for (int64_t k = 0; k < count; ++k) {
      int64_t r = k;
      for (int e = m - 1; e >= 0; --e) {
        p[e] = r % side;
        r /= side;
      }
      points.insert(PriceVector(p));
    }
  } else {
    points.insert(PriceVector(m));
    points.insert(DefaultDescendingStart(inst));
    for (AuctionMode mode : {AuctionMode::kAscending, AuctionMode::kDescending}) {
      AuctionTrace partial;
      auto t = TryAuction(inst, mode, std::nullopt, &partial);
      const AuctionTrace& tr = t ? *t : partial;
      for (const AuctionRound& r : tr.rounds) points.insert(r.prices);
    }
  }
  return {points.begin(), points.end()};
}

SolverOptions DebugSolver() {
  SolverOptions o;
  o.debug_checks = true;
  return o;
}

void SumChecks(const Instance& inst, const std::vector<PriceVector>& points,
               const EnumerationBudget& budget, Check& check) {
  for (const PriceVector& p : points) {
    for (DemandSide side : {DemandSide::kMinimal, DemandSide::kMaximal}) {
      const std::string label = p.ToString() + " " + DemandSideName(side);
      Guarded(check, label, [&] {
        const SumSolution sol =
            SolvePolymatroidSum(inst, p, side, DefaultMode(inst), nullptr, DebugSolver());
        const BruteSumResult brute = BrutePolymatroidSum(inst, p, side, budget);
        check.Expect(sol.value == brute.primal && brute.primal == brute.dual,
                     label + ": solver " + std::to_string(sol.value) + ", brute primal " +
                         std::to_string(brute.primal) + ", dual " + std::to_string(brute.dual));
        check.Expect(CheckCertificate(sol.bundles, sol.certificate, inst, p, side,
                                      budget.max_bundles),
                     label + ": certificate " + sol.certificate.ToString() + " rejected");
      });
    }
  }
}

void SetChecks(const Instance& inst, const std::vector<PriceVector>& points,
               const EnumerationBudget& budget, Check& check) {
  DemandSetOptions opt{DebugSolver()};
  for (const PriceVector& p : points) {
    Guarded(check, p.ToString(), [&] {
      const DemandReport over = MinMaxOverdemanded(inst, p, nullptr, opt);
      const ItemSet bo = BruteMinMaxSet(inst, p, DemandKind::kOverdemanded, budget);
      check.Expect(over.set == bo, p.ToString() + ": overdemanded " + over.set.ToString() +
                                       ", brute " + bo.ToString());
      if (!over.set.Empty()) {
        check.Expect(over.magnitude == BruteOverdemandedness(inst, p, over.set, budget),
                     p.ToString() + ": od magnitude");
        check.Expect(Lyapunov(inst, p.Shifted(over.set, 1)) - Lyapunov(inst, p) ==
                         -over.magnitude,
                     p.ToString() + ": Lyapunov step up");
      }
      const DemandReport under = MinMaxUnderdemanded(inst, p, nullptr, opt);
      const ItemSet bu = BruteMinMaxSet(inst, p, DemandKind::kUnderdemanded, budget);
      check.Expect(under.set == bu, p.ToString() + ": underdemanded " + under.set.ToString() +
                                        ", brute " + bu.ToString());
      if (!under.set.Empty()) {
        check.Expect(under.magnitude == BruteUnderdemandedness(inst, p, under.set, budget),
                     p.ToString() + ": ud magnitude");
        check.Expect(Lyapunov(inst, p.Shifted(under.set, -1)) - Lyapunov(inst, p) ==
                         -under.magnitude,
                     p.ToString() + ": Lyapunov step down");
      }
    });
  }
}

void WalrasianChecks(const Instance& inst, const EnumerationBudget& budget, Check& check) {
  const BruteWalrasianResult bw = BruteWalrasian(inst, budget);
  const auto asc = TryAuction(inst, AuctionMode::kAscending, std::nullopt);
  const auto desc = TryAuction(inst, AuctionMode::kDescending, std::nullopt);
  if (bw.prices.empty()) {
    check.Expect(!asc, "ascending returned prices although none are Walrasian");
    check.Expect(!desc, "descending returned prices although none are Walrasian");
    return;
  }
  check.Expect(asc && asc->final_prices == *bw.minimal,
               "ascending " + (asc ? asc->final_prices.ToString() : std::string("failed")) +
                   ", minimal " + bw.minimal->ToString());
  check.Expect(desc && desc->final_prices == *bw.maximal,
               "descending " + (desc ? desc->final_prices.ToString() : std::string("failed")) +
                   ", maximal " + bw.maximal->ToString());
  check.Expect(bw.lattice_closed, "Walrasian grid set not closed under meet and join");
  const std::vector<PriceVector> starts = {PriceVector(inst.item_count()),
                                           DefaultDescendingStart(inst)};
  for (AuctionMode mode : {AuctionMode::kTwoPhase, AuctionMode::kGreedy}) {
    for (const PriceVector& s : starts) {
      const auto t = TryAuction(inst, mode, s);
      check.Expect(t && std::binary_search(bw.prices.begin(), bw.prices.end(), t->final_prices),
                   std::string(AuctionModeName(mode)) + " from " + s.ToString() + " gave " +
                       (t ? t->final_prices.ToString() : std::string("failure")));
    }
  }
  for (const ExtremesReport& rep :
       {CheckPackingExtremes(inst, budget), CheckCoveringExtremes(inst, budget)}) {
    check.Expect(rep.ok, rep.violations.empty() ? "extreme price check" : rep.violations.front());
  }
}

void MonotonicityChecks(const Instance& inst, const EnumerationBudget& budget, Check& check) {
  std::vector<Perturbation> perts;
  for (int e = 0; e < inst.item_count(); ++e)
    perts.push_back({Perturbation::kSupplyDecrease, e});
  for (int i = 0; i < inst.buyer_count(); ++i)
    perts.push_back({Perturbation::kDemandDecrease, i});
  for (const Perturbation& pt : perts) {
    const MonotonicityVerdict v = MonotonicityHarness(inst, pt, budget);
    if (!v.applicable) continue;
    check.Expect(v.holds, std::string(pt.kind == Perturbation::kSupplyDecrease ? "supply" : "demand") +
                              " decrease at " + std::to_string(pt.index) + ": " + v.detail);
  }
}

}  // namespace

Json CmdVerify(const Instance& inst, const VerifyOptions& options, int* exit_code) {
  Json verdict;
  verdict["instance_digest"] = InstanceDigest(inst);
  verdict["scope"] = VerifyScopeName(options.scope);
  const bool all = options.scope == VerifyScope::kAll;
  std::vector<Check> checks;
  auto add = [&](const char* name) -> Check& {
    checks.emplace_back();
    checks.back().name = name;
    checks.back().max_listed = options.max_failures;
    return checks.back();
  };
  try {
    std::vector<PriceVector> points;
    if (all || options.scope == VerifyScope::kSum || options.scope == VerifyScope::kSets)
      points = PricePoints(inst);
    if (all || options.scope == VerifyScope::kSum) SumChecks(inst, points, options.budget, add("sum"));
    if (all || options.scope == VerifyScope::kSets)
      SetChecks(inst, points, options.budget, add("sets"));
    if (all || options.scope == VerifyScope::kWalrasian)
      WalrasianChecks(inst, options.budget, add("walrasian"));
    if (all || options.scope == VerifyScope::kMonotonicity)
      MonotonicityChecks(inst, options.budget, add("monotonicity"));
  } catch (const MarketError& e) {
    verdict["pass"] = false;
    verdict["error"] = e.what();
    *exit_code = ExitCodeFor(e.code());
    return verdict;
  }
  bool pass = true;
  Json cj = Json::array();
  for (const Check& c : checks) {
    pass = pass && c.failed == 0;
    cj.push_back(c.ToJson());
  }
  verdict["checks"] = cj;
  if (options.trace) {
    Json tj;
    if (options.trace_digest && *options.trace_digest != InstanceDigest(inst)) {
      tj["pass"] = false;
      tj["first_divergent_round"] = nullptr;
      tj["detail"] = "trace digest " + *options.trace_digest + " does not match the instance";
    } else {
      ReplayResult rr;
      try {
        rr = ReplayTrace(inst, *options.trace);
      } catch (const MarketError& e) {
        rr.ok = false;
        rr.detail = e.what();
      }
      tj["pass"] = rr.ok;
      tj["first_divergent_round"] = rr.ok ? Json(nullptr) : Json(rr.first_divergent_round);
      tj["detail"] = rr.detail;
    }
    pass = pass && tj["pass"].get<bool>();
    verdict["trace"] = tj;
  }
  verdict["pass"] = pass;
  *exit_code = pass ? kExitOk : kExitInput;
  return verdict;
}

// ---------------------------------------------------------------- bench

std::vector<BenchRow> CmdBench(const BenchSpec& spec) {
  std::vector<BenchRow> rows;
  for (int m = spec.m_min; m <= spec.m_max; ++m) {
    for (int rep = 0; rep < spec.reps; ++rep) {
      GenSpec g;
      g.family = spec.family;
      g.m = m;
      g.n = spec.n;
      g.max_supply = spec.max_supply;
      g.value_cap = spec.value_cap;
      g.seed = spec.seed * 1000003ull + static_cast<uint64_t>(m) * 101u + rep;
      const Instance inst = GenerateInstance(g);
      Pcg32 rng(g.seed, 7);
      std::vector<int64_t> pv(m);
      for (auto& x : pv) x = rep == 0 ? 0 : rng.Between(0, std::max<int64_t>(1, spec.value_cap / 2));
      const PriceVector p(pv);
      BenchRow row;
      row.m = m;
      row.n = spec.n;
      row.max_supply = spec.max_supply;
      row.digest = InstanceDigest(inst);
      row.mode = DefaultMode(inst);
      row.side = rep % 2 == 0 ? DemandSide::kMinimal : DemandSide::kMaximal;
      const auto t0 = std::chrono::steady_clock::now();
      const SumSolution sol = SolvePolymatroidSum(inst, p, row.side, row.mode);
      const auto t1 = std::chrono::steady_clock::now();
      row.wall_us = std::chrono::duration<double, std::micro>(t1 - t0).count();
      row.counters = sol.counters;
      for (int64_t c : sol.counters.pushes_per_level)
        row.max_level_pushes = std::max(row.max_level_pushes, c);
      const int64_t m3 = int64_t{m} * m * m;
      GSM_CHECK(sol.counters.oracle.do_calls == spec.n, "demand oracle calls != n");
      GSM_CHECK(sol.counters.nonsaturating_pushes <= m3, "non-saturating pushes above m^3");
      if (row.mode == SumMode::kUnitSupply)
        GSM_CHECK(row.max_level_pushes <= m, "pushes on one level above m");
      row.exo_per_nm3 = static_cast<double>(sol.counters.oracle.exo_calls) / (spec.n * m3);
      if (row.mode == SumMode::kUnitSupply)
        row.exo_per_unit_bound = static_cast<double>(sol.counters.oracle.exo_calls) /
                                 (m3 + int64_t{spec.n} * m * m);
      rows.push_back(row);
    }
  }
  return rows;
}

void WriteBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "m,n,B,digest,mode,side,do_calls,exo_calls,value_calls,pushes_sat,pushes_nonsat,"
         "relabels,max_level_pushes,wall_us,exo_per_nm3,exo_per_unit_bound\n";
  for (const BenchRow& r : rows) {
    char ratio[64], unit[64] = "", wall[64];
    std::snprintf(ratio, sizeof ratio, "%.6f", r.exo_per_nm3);
    if (r.exo_per_unit_bound) std::snprintf(unit, sizeof unit, "%.6f", *r.exo_per_unit_bound);
    std::snprintf(wall, sizeof wall, "%.1f", r.wall_us);
    out << r.m << ',' << r.n << ',' << r.max_supply << ',' << r.digest << ','
        << SumModeName(r.mode) << ',' << DemandSideName(r.side) << ','
        << r.counters.oracle.do_calls << ',' << r.counters.oracle.exo_calls << ','
        << r.counters.oracle.value_calls << ',' << r.counters.saturating_pushes << ','
        << r.counters.nonsaturating_pushes << ',' << r.counters.relabels << ','
        << r.max_level_pushes << ',' << wall << ',' << ratio << ',' << unit << '\n';
  }
}

// ---------------------------------------------------------------- entry

namespace {

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw MarketError(ErrorCode::kParse, "cannot write " + path);
  f << text;
}

std::string ReadFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw MarketError(ErrorCode::kParse, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string CountersLine(const AuctionTrace& t) {
  const SolverCounters& c = t.totals;
  return "do=" + std::to_string(c.oracle.do_calls) + " exo=" + std::to_string(c.oracle.exo_calls) +
         " value=" + std::to_string(c.oracle.value_calls) +
         " pushes_sat=" + std::to_string(c.saturating_pushes) +
         " pushes_nonsat=" + std::to_string(c.nonsaturating_pushes) +
         " relabels=" + std::to_string(c.relabels) + " solver_runs=" + std::to_string(t.solver_runs);
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Walrasian prices for strong gross substitutes markets", "gsmarket"};
  app.require_subcommand(1);

  GenSpec gen;
  std::string gen_family = "mixed", gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--family", gen_family, "unit_demand|additive|matroid_rank|oxs|table|mixed");
  gen_cmd->add_option("--m", gen.m, "items");
  gen_cmd->add_option("--n", gen.n, "buyers");
  gen_cmd->add_option("--B", gen.max_supply, "largest supply per item");
  gen_cmd->add_option("--value-cap", gen.value_cap, "largest v_i(b)");
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

  std::string solve_path, solve_mode = "ascending", solve_start, solve_trace;
  int64_t round_limit = 0;
  bool solve_json = false;
  auto* solve_cmd = app.add_subcommand("solve", "run a dynamic auction");
  solve_cmd->add_option("instance", solve_path, "instance file")->required();
  solve_cmd->add_option("--mode", solve_mode, "ascending|descending|two-phase|greedy");
  solve_cmd->add_option("--start", solve_start, "start prices, comma separated");
  solve_cmd->add_option("--trace-out", solve_trace, "trace file");
  solve_cmd->add_option("--round-limit", round_limit, "0 for the default limit");
  solve_cmd->add_flag("--json", solve_json, "machine-readable output");

  std::vector<std::string> verify_paths;
  std::string verify_scope = "all", verify_trace;
  EnumerationBudget budget;
  auto* verify_cmd = app.add_subcommand("verify", "cross-check against brute force");
  verify_cmd->add_option("instances", verify_paths, "instance files")->required();
  verify_cmd->add_option("--scope", verify_scope, "all|sum|sets|walrasian|monotonicity");
  verify_cmd->add_option("--trace", verify_trace, "trace file to replay (single instance)");
  verify_cmd->add_option("--max-price", budget.max_price, "price grid side limit");
  verify_cmd->add_option("--max-bundles", budget.max_bundles, "bundle box limit");
  verify_cmd->add_flag("--json", "accepted for symmetry; output is always JSON");

  BenchSpec bench;
  std::string bench_family = "unit_demand", bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "counter sweep over m");
  bench_cmd->add_option("--family", bench_family, "instance family");
  bench_cmd->add_option("--n", bench.n, "buyers");
  bench_cmd->add_option("--B", bench.max_supply, "largest supply per item");
  bench_cmd->add_option("--m-min", bench.m_min, "smallest m");
  bench_cmd->add_option("--m-max", bench.m_max, "largest m");
  bench_cmd->add_option("--reps", bench.reps, "runs per m");
  bench_cmd->add_option("--value-cap", bench.value_cap, "largest v_i(b)");
  bench_cmd->add_option("--seed", bench.seed, "64-bit seed");
  bench_cmd->add_option("--out", bench_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*gen_cmd) {
      const auto fam = ParseFamily(gen_family);
      if (!fam) throw MarketError(ErrorCode::kInvalidInstance, "unknown family '" + gen_family + "'");
      gen.family = *fam;
      const std::string text = SerializeInstance(GenerateInstance(gen));
      if (gen_out.empty()) out << text;
      else WriteFile(gen_out, text);
      return kExitOk;
    }

    if (*solve_cmd) {
      const Instance inst = LoadInstance(solve_path);
      const auto mode = ParseAuctionMode(solve_mode);
      if (!mode) throw MarketError(ErrorCode::kParse, "unknown mode '" + solve_mode + "'");
      std::optional<PriceVector> start;
      if (!solve_start.empty()) start = ParsePrices(solve_start, inst.item_count());
      const SolveResult r = CmdSolve(inst, *mode, start, round_limit);
      for (const std::string& w : r.warnings) err << "warning: " << w << "\n";
      const std::string digest = InstanceDigest(inst);
      if (r.has_trace && !solve_trace.empty())
        WriteFile(solve_trace, TraceToJson(r.trace, digest).dump(2) + "\n");
      if (solve_json) {
        Json j;
        j["exit_code"] = r.exit_code;
        j["diagnostic"] = r.diagnostic;
        j["extreme"] = r.extreme ? Json(*r.extreme) : Json(nullptr);
        j["trace"] = r.has_trace ? TraceToJson(r.trace, digest) : Json(nullptr);
        out << j.dump(2) << "\n";
      } else if (r.has_trace) {
        out << (r.exit_code == kExitOk ? "final prices: " : "last prices: ")
            << FormatPrices(r.trace.final_prices) << "\n";
        out << "walrasian: " << (r.trace.walrasian ? "true" : "false") << "\n";
        out << "rounds: " << r.trace.rounds.size() << "\n";
        out << "counters: " << CountersLine(r.trace) << "\n";
        if (r.extreme)
          out << (*mode == AuctionMode::kAscending ? "minimal: " : "maximal: ")
              << (*r.extreme ? "true" : "false") << "\n";
      }
      if (r.exit_code != kExitOk) err << "error: " << r.diagnostic << "\n";
      return r.exit_code;
    }

    if (*verify_cmd) {
      const auto scope = ParseVerifyScope(verify_scope);
      if (!scope) throw MarketError(ErrorCode::kParse, "unknown scope '" + verify_scope + "'");
      VerifyOptions opt;
      opt.scope = *scope;
      opt.budget = budget;
      if (!verify_trace.empty()) {
        if (verify_paths.size() != 1)
          throw MarketError(ErrorCode::kParse, "--trace needs exactly one instance");
        Json tj;
        try {
          tj = Json::parse(ReadFile(verify_trace));
        } catch (const Json::exception& ex) {
          throw MarketError(ErrorCode::kParse, std::string("trace: ") + ex.what());
        }
        std::string digest;
        opt.trace = TraceFromJson(tj, &digest);
        opt.trace_digest = digest;
      }
      std::vector<std::pair<std::string, Json>> verdicts;
      int exit_code = kExitOk;
      for (const std::string& path : verify_paths) {
        int code = kExitOk;
        Json v = CmdVerify(LoadInstance(path), opt, &code);
        v["file"] = path;
        exit_code = std::max(exit_code, code);
        verdicts.emplace_back(v["instance_digest"].get<std::string>() + "\n" + path, v);
      }
      if (verdicts.size() == 1) {
        out << verdicts.front().second.dump(2) << "\n";
      } else {
        std::sort(verdicts.begin(), verdicts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Json j;
        j["pass"] = exit_code == kExitOk;
        Json list = Json::array();
        for (auto& [key, v] : verdicts) list.push_back(v);
        j["instances"] = list;
        out << j.dump(2) << "\n";
      }
      return exit_code;
    }

    if (*bench_cmd) {
      const auto fam = ParseFamily(bench_family);
      if (!fam) throw MarketError(ErrorCode::kInvalidInstance, "unknown family '" + bench_family + "'");
      bench.family = *fam;
      const auto rows = CmdBench(bench);
      if (bench_out.empty()) {
        WriteBenchCsv(rows, out);
      } else {
        std::ofstream f(bench_out);
        if (!f) throw MarketError(ErrorCode::kParse, "cannot write " + bench_out);
        WriteBenchCsv(rows, f);
      }
      return kExitOk;
    }
  } catch (const MarketError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace gsmarket
