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

#include "gsmarket/io.h"

#include <fstream>
#include <sstream>

#include "gsmarket/demand_sets.h"
#include "gsmarket/error.h"

namespace gsmarket {

namespace {

[[noreturn]] void ParseFail(const std::string& what) {
  throw MarketError(ErrorCode::kParse, what);
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) ParseFail(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
std::vector<T> IntList(const Json& j, const char* what) {
  if (!j.is_array()) ParseFail(std::string(what) + " must be a list");
  std::vector<T> out;
  for (const Json& x : j) {
    if (!x.is_number_integer()) ParseFail(std::string(what) + " must hold integers");
    out.push_back(x.get<T>());
  }
  return out;
}

std::string BundleKey(const Bundle& z) {
  std::string s;
  for (int e = 0; e < z.size(); ++e) s += (e ? "," : "") + std::to_string(z[e]);
  return s;
}

Json ItemSetJson(ItemSet s) {
  Json a = Json::array();
  for (int e : s.Items()) a.push_back(e);
  return a;
}

}  // namespace

Json ValuationToJson(const Valuation& v) {
  Json j;
  j["kind"] = v.kind_name();
  if (auto* f = v.As<Valuation::UnitDemand>()) {
    j["weights"] = f->weights;
  } else if (auto* f = v.As<Valuation::Additive>()) {
    j["weights"] = f->weights;
  } else if (auto* f = v.As<Valuation::MatroidRank>()) {
    Json mj;
    if (auto* u = std::get_if<UniformMatroid>(&f->matroid)) {
      mj["kind"] = "uniform";
      mj["rank"] = u->rank;
    } else if (auto* pm = std::get_if<PartitionMatroid>(&f->matroid)) {
      mj["kind"] = "partition";
      mj["blocks"] = pm->blocks;
      mj["caps"] = pm->caps;
    } else {
      const auto& g = std::get<GraphicMatroid>(f->matroid);
      mj["kind"] = "graphic";
      mj["vertices"] = g.vertex_count;
      Json edges = Json::array();
      for (auto [a, b] : g.edges) edges.push_back({a, b});
      mj["edges"] = edges;
    }
    j["matroid"] = mj;
    j["weights"] = f->weights;
  } else if (auto* f = v.As<Valuation::Oxs>()) {
    j["right_size"] = f->right_size;
    Json edges = Json::array();
    for (const OxsEdge& ed : f->edges) edges.push_back({ed.item, ed.right, ed.weight});
    j["edges"] = edges;
  } else if (auto* f = v.As<Valuation::Table>()) {
    j["box"] = f->box.values();
    if (v.sgs_status() == SgsStatus::kCertified) j["certify"] = true;
    Json values = Json::object();
    ForEachBundle(f->box, [&](const Bundle& z) {
      values[BundleKey(z)] = f->values[BoxIndex(z, f->box)];
    });
    j["values"] = values;
  } else if (auto* f = v.As<Valuation::Truncated>()) {
    j["cap"] = f->cap;
    j["inner"] = ValuationToJson(f->inner);
  } else if (auto* f = v.As<Valuation::CopyProjected>()) {
    j["projection"] = f->projection;
    j["inner_items"] = f->inner.item_count();
    j["inner"] = ValuationToJson(f->inner);
  }
  return j;
}

Valuation ValuationFromJson(const Json& j, int m) {
  const std::string kind = Field(j, "kind").get<std::string>();
  auto weights = [&]() {
    auto w = IntList<int64_t>(Field(j, "weights"), "weights");
    if (static_cast<int>(w.size()) != m) ParseFail(kind + ": need one weight per item");
    return w;
  };
  try {
    if (kind == "unit_demand") return Valuation::MakeUnitDemand(weights());
    if (kind == "additive") return Valuation::MakeAdditive(weights());
    if (kind == "matroid_rank") {
      const Json& mj = Field(j, "matroid");
      const std::string mk = Field(mj, "kind").get<std::string>();
      MatroidDesc desc;
      if (mk == "uniform") {
        desc = UniformMatroid{Field(mj, "rank").get<int>()};
      } else if (mk == "partition") {
        PartitionMatroid pm;
        for (const Json& block : Field(mj, "blocks")) pm.blocks.push_back(IntList<int>(block, "block"));
        pm.caps = IntList<int>(Field(mj, "caps"), "caps");
        desc = pm;
      } else if (mk == "graphic") {
        GraphicMatroid g;
        int vmax = 0;
        for (const Json& ed : Field(mj, "edges")) {
          auto pr = IntList<int>(ed, "edge");
          if (pr.size() != 2) ParseFail("graphic edge needs two endpoints");
          g.edges.emplace_back(pr[0], pr[1]);
          vmax = std::max({vmax, pr[0] + 1, pr[1] + 1});
        }
        g.vertex_count = mj.contains("vertices") ? mj.at("vertices").get<int>() : vmax;
        desc = g;
      } else {
        ParseFail("unknown matroid kind '" + mk + "'");
      }
      return Valuation::MakeMatroidRank(desc, weights());
    }
    if (kind == "oxs") {
      std::vector<OxsEdge> edges;
      for (const Json& ed : Field(j, "edges")) {
        auto t = IntList<int64_t>(ed, "oxs edge");
        if (t.size() != 3) ParseFail("oxs edge is [item, right, weight]");
        edges.push_back({static_cast<int>(t[0]), static_cast<int>(t[1]), t[2]});
      }
      return Valuation::MakeOxs(m, Field(j, "right_size").get<int>(), edges);
    }
    if (kind == "table") {
      const Json& values = Field(j, "values");
      if (!values.is_object()) ParseFail("table values must be an object");
      Bundle box;
      if (j.contains("box")) {
        box = Bundle(IntList<int>(j.at("box"), "box"));
      } else {
        // Box from the largest key in every coordinate.
        box = Bundle(m);
        for (auto it = values.begin(); it != values.end(); ++it) {
          std::stringstream ss(it.key());
          std::string tok;
          for (int e = 0; std::getline(ss, tok, ','); ++e)
            if (e < m) box[e] = std::max(box[e], std::stoi(tok));
        }
      }
      if (box.size() != m) ParseFail("table box length");
      std::vector<int64_t> vals(BoxCount(box), -1);
      for (auto it = values.begin(); it != values.end(); ++it) {
        std::stringstream ss(it.key());
        std::string tok;
        std::vector<int> q;
        while (std::getline(ss, tok, ',')) q.push_back(std::stoi(tok));
        Bundle z(q);
        if (!z.Fits(box)) ParseFail("table key '" + it.key() + "' outside the box");
        if (!it.value().is_number_integer()) ParseFail("table values must be integers");
        vals[BoxIndex(z, box)] = it.value().get<int64_t>();
      }
      for (int64_t x : vals)
        if (x < 0) ParseFail("table must define every bundle with a nonnegative value");
      return Valuation::MakeTable(box, vals, j.value("certify", false));
    }
    if (kind == "truncated")
      return Valuation::MakeTruncated(ValuationFromJson(Field(j, "inner"), m),
                                      Field(j, "cap").get<int>());
    if (kind == "copy_projected") {
      auto proj = IntList<int>(Field(j, "projection"), "projection");
      if (static_cast<int>(proj.size()) != m) ParseFail("projection length");
      return Valuation::MakeCopyProjected(
          ValuationFromJson(Field(j, "inner"), Field(j, "inner_items").get<int>()), proj);
    }
  } catch (const Json::exception& ex) {
    ParseFail(std::string("bad valuation: ") + ex.what());
  } catch (const std::invalid_argument&) {
    ParseFail("bad table key");
  }
  ParseFail("unknown valuation kind '" + kind + "'");
}

Json InstanceToJson(const Instance& inst) {
  Json j;
  j["version"] = 1;
  j["items"] = inst.item_count();
  j["supply"] = inst.supply().values();
  Json buyers = Json::array();
  for (const Valuation& v : inst.raw_buyers()) buyers.push_back(ValuationToJson(v));
  j["buyers"] = buyers;
  if (inst.demand_caps()) j["demand_caps"] = *inst.demand_caps();
  return j;
}

Instance InstanceFromJson(const Json& j) {
  try {
    if (Field(j, "version").get<int>() != 1) ParseFail("unsupported version");
    const int m = Field(j, "items").get<int>();
    Bundle supply(IntList<int>(Field(j, "supply"), "supply"));
    if (supply.size() != m) ParseFail("supply length != items");
    std::vector<Valuation> buyers;
    const Json& bj = Field(j, "buyers");
    if (!bj.is_array()) ParseFail("buyers must be a list");
    for (const Json& v : bj) buyers.push_back(ValuationFromJson(v, m));
    std::optional<std::vector<int>> caps;
    if (j.contains("demand_caps")) caps = IntList<int>(j.at("demand_caps"), "demand_caps");
    return Instance(supply, buyers, caps);
  } catch (const Json::exception& ex) {
    ParseFail(std::string("bad instance: ") + ex.what());
  }
}

std::string SerializeInstance(const Instance& inst) { return InstanceToJson(inst).dump(2) + "\n"; }

Instance ParseInstance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& ex) {
    ParseFail(std::string("invalid JSON: ") + ex.what());
  }
  return InstanceFromJson(j);
}

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) ParseFail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseInstance(ss.str());
}

std::string InstanceDigest(const Instance& inst) {
  const std::string s = InstanceToJson(inst).dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json TraceToJson(const AuctionTrace& t, const std::string& digest) {
  Json j;
  j["version"] = 1;
  j["instance_digest"] = digest;
  j["mode"] = AuctionModeName(t.mode);
  j["start"] = t.start.values();
  Json rounds = Json::array();
  for (const AuctionRound& r : t.rounds) {
    Json rj;
    rj["round"] = r.index;
    rj["direction"] = r.direction;
    rj["set"] = ItemSetJson(r.set);
    rj["magnitude"] = r.magnitude;
    rj["lyapunov_before"] = r.lyapunov_before;
    rj["lyapunov_after"] = r.lyapunov_after;
    rj["counters"] = {{"do", r.counters.do_calls},
                      {"exo", r.counters.exo_calls},
                      {"value", r.counters.value_calls}};
    rj["prices"] = r.prices.values();
    rounds.push_back(rj);
  }
  j["rounds"] = rounds;
  Json fin;
  fin["prices"] = t.final_prices.values();
  fin["walrasian"] = t.walrasian;
  Json alloc = Json::array();
  for (const Bundle& z : t.allocation) alloc.push_back(z.values());
  fin["allocation"] = alloc;
  fin["counters"] = {{"do", t.totals.oracle.do_calls},
                     {"exo", t.totals.oracle.exo_calls},
                     {"value", t.totals.oracle.value_calls},
                     {"pushes_sat", t.totals.saturating_pushes},
                     {"pushes_nonsat", t.totals.nonsaturating_pushes},
                     {"relabels", t.totals.relabels},
                     {"solver_runs", t.solver_runs}};
  j["final"] = fin;
  return j;
}

AuctionTrace TraceFromJson(const Json& j, std::string* digest) {
  try {
    AuctionTrace t;
    if (digest) *digest = Field(j, "instance_digest").get<std::string>();
    auto mode = ParseAuctionMode(Field(j, "mode").get<std::string>());
    if (!mode) ParseFail("unknown auction mode");
    t.mode = *mode;
    t.start = PriceVector(IntList<int64_t>(Field(j, "start"), "start"));
    for (const Json& rj : Field(j, "rounds")) {
      AuctionRound r;
      r.index = Field(rj, "round").get<int>();
      r.direction = Field(rj, "direction").get<int>();
      for (int e : IntList<int>(Field(rj, "set"), "set")) {
        if (e < 0 || e >= kMaxItems) ParseFail("set item out of range");
        r.set.Insert(e);
      }
      r.magnitude = Field(rj, "magnitude").get<int64_t>();
      r.lyapunov_before = Field(rj, "lyapunov_before").get<int64_t>();
      r.lyapunov_after = Field(rj, "lyapunov_after").get<int64_t>();
      const Json& c = Field(rj, "counters");
      r.counters = {Field(c, "do").get<int64_t>(), Field(c, "exo").get<int64_t>(),
                    Field(c, "value").get<int64_t>()};
      r.prices = PriceVector(IntList<int64_t>(Field(rj, "prices"), "prices"));
      t.rounds.push_back(r);
    }
    const Json& fin = Field(j, "final");
    t.final_prices = PriceVector(IntList<int64_t>(Field(fin, "prices"), "prices"));
    t.walrasian = Field(fin, "walrasian").get<bool>();
    for (const Json& z : Field(fin, "allocation")) t.allocation.emplace_back(IntList<int>(z, "bundle"));
    const Json& c = Field(fin, "counters");
    t.totals.oracle = {Field(c, "do").get<int64_t>(), Field(c, "exo").get<int64_t>(),
                       Field(c, "value").get<int64_t>()};
    t.totals.saturating_pushes = Field(c, "pushes_sat").get<int64_t>();
    t.totals.nonsaturating_pushes = Field(c, "pushes_nonsat").get<int64_t>();
    t.totals.relabels = Field(c, "relabels").get<int64_t>();
    t.solver_runs = Field(c, "solver_runs").get<int64_t>();
    return t;
  } catch (const Json::exception& ex) {
    ParseFail(std::string("bad trace: ") + ex.what());
  }
}

ReplayResult ReplayTrace(const Instance& inst, const AuctionTrace& trace) {
  ReplayResult r;
  PriceVector p = trace.start;
  for (size_t k = 0; k < trace.rounds.size(); ++k) {
    const AuctionRound& rec = trace.rounds[k];
    DemandReport rep = rec.direction > 0 ? MinMaxOverdemanded(inst, p)
                                         : MinMaxUnderdemanded(inst, p);
    PriceVector next = p.Shifted(rep.set, rec.direction > 0 ? 1 : -1);
    if (rec.direction == 0 || rep.set != rec.set || rep.magnitude != rec.magnitude ||
        next != rec.prices) {
      r.ok = false;
      r.first_divergent_round = static_cast<int>(k);
      r.detail = "round " + std::to_string(k) + ": recomputed set " + rep.set.ToString() +
                 " magnitude " + std::to_string(rep.magnitude) + ", recorded " +
                 rec.set.ToString() + " magnitude " + std::to_string(rec.magnitude);
      r.final_prices = p;
      return r;
    }
    p = next;
  }
  r.final_prices = p;
  if (p != trace.final_prices) {
    r.ok = false;
    r.first_divergent_round = static_cast<int>(trace.rounds.size());
    r.detail = "final prices differ: replay " + p.ToString() + ", recorded " +
               trace.final_prices.ToString();
  }
  return r;
}

std::string FormatPrices(const PriceVector& p) {
  std::string s = "(";
  for (int e = 0; e < p.size(); ++e) s += (e ? ", " : "") + std::to_string(p[e]);
  return s + ")";
}

PriceVector ParsePrices(const std::string& csv, int m) {
  std::vector<int64_t> v;
  std::stringstream ss(csv);
  std::string tok;
  try {
    while (std::getline(ss, tok, ',')) v.push_back(std::stoll(tok));
  } catch (const std::exception&) {
    ParseFail("bad price list '" + csv + "'");
  }
  if (static_cast<int>(v.size()) != m) ParseFail("price list needs " + std::to_string(m) + " entries");
  for (int64_t x : v)
    if (x < 0) ParseFail("prices must be nonnegative");
  return PriceVector(v);
}

}  // namespace gsmarket
