#include "costshare/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "costshare/corpus.hpp"
#include "costshare/dmv_facility_location.hpp"
#include "costshare/incentives.hpp"
#include "costshare/instance_io.hpp"
#include "costshare/lower_bound.hpp"
#include "costshare/moulin.hpp"
#include "costshare/summability.hpp"

namespace costshare {

Caps parse_caps(const std::string& spec, Caps base) {
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("cap override '" + item + "' needs name=value", "COSTSHARE_CAPS");
    const std::string name = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidInput("cap override '" + item + "' needs an integer value", "COSTSHARE_CAPS");
    }
    std::size_t* slot = name == "subsets"                ? &base.subsets
                        : name == "orderings"            ? &base.orderings
                        : name == "facilities"           ? &base.facilities
                        : name == "steiner_terminals"    ? &base.steiner_terminals
                        : name == "rent_or_buy_vertices" ? &base.rent_or_buy_vertices
                        : name == "cover_sets"           ? &base.cover_sets
                        : name == "gst_exact_players"    ? &base.gst_exact_players
                        : name == "incentive_players"    ? &base.incentive_players
                        : name == "lower_bound_players"  ? &base.lower_bound_players
                                                         : nullptr;
    if (!slot) throw InvalidInput("unknown cap '" + name + "'", "COSTSHARE_CAPS");
    *slot = value;
  }
  return base;
}

namespace {

struct Problem {
  std::unique_ptr<CostOracle> oracle;
  std::unique_ptr<CostShareMethod> method;  // null for DMV mechanisms
};

Json money_json(Money x) { return std::isinf(x) ? Json("inf") : Json(x); }

Json set_json(const PlayerSet& s) { return s.members(); }

PlayerSet parse_set(const std::string& text, std::size_t n) {
  PlayerSet s(n);
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      s.insert(std::stoul(item));
    } catch (const InvalidInput& e) {
      throw InvalidInput(e.what(), "--set");
    } catch (const std::exception&) {
      throw InvalidInput("'" + item + "' is not a player id", "--set");
    }
  }
  return s;
}

std::vector<PlayerId> parse_ids(const std::string& text) {
  std::vector<PlayerId> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw InvalidInput("'" + item + "' is not a player id", "--ordering");
    }
  }
  return out;
}

std::vector<Money> read_amounts(const std::string& path, bool allow_infinite) {
  Json doc = read_json_file(path);
  if (doc.is_object() && doc.contains("values")) doc = doc["values"];
  if (!doc.is_array()) throw InvalidInput("expected an array of amounts", path);
  std::vector<Money> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (allow_infinite && doc[i].is_string() && doc[i].get<std::string>() == "inf") {
      out.push_back(kInfinity);
    } else if (doc[i].is_number() && doc[i].get<double>() >= 0.0) {
      out.push_back(doc[i].get<double>());
    } else {
      throw InvalidInput("expected a nonnegative number", p);
    }
  }
  return out;
}

void require_size(std::size_t got, std::size_t want, const std::string& what) {
  if (got != want) {
    throw InvalidInput(what + " has " + std::to_string(got) + " entries; the instance has " +
                       std::to_string(want) + " players", what);
  }
}

struct GstFlags {
  std::string mode = "exact";
  std::size_t samples = 20000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

Problem make_problem(const InstanceFile& file, const std::string& method, const GstFlags& gst,
                     const Caps& caps) {
  Problem p;
  auto wrong = [&](const std::string& want) {
    return InvalidInput("method '" + method + "' needs a " + want + " instance; got " + file.kind(), "$.kind");
  };
  if (method == "pt" || method == "dmv-fl") {
    const auto* fl = std::get_if<FacilityLocationInstance>(&file.body);
    if (!fl) throw wrong("facility-location");
    p.oracle = std::make_unique<FacilityLocationCost>(*fl, caps);
    if (method == "pt") p.method = std::make_unique<PalTardosMethod>(*fl);
  } else if (method == "jv") {
    const auto* st = std::get_if<SteinerInstance>(&file.body);
    if (!st) throw wrong("steiner");
    p.oracle = std::make_unique<SteinerTreeCost>(*st, caps);
    p.method = std::make_unique<JainVaziraniMethod>(*st);
  } else if (method == "gst") {
    const auto* rb = std::get_if<RentOrBuyInstance>(&file.body);
    if (!rb) throw wrong("ssrob");
    GstOptions options;
    if (gst.mode == "mc") {
      options.mode = GstMode::kMonteCarlo;
    } else if (gst.mode != "exact") {
      throw InvalidInput("GST mode must be exact or mc", "--gst-mode");
    }
    options.samples = gst.samples;
    options.seed = gst.seed;
    options.workers = gst.workers;
    options.caps = caps;
    p.oracle = std::make_unique<RentOrBuyCost>(*rb, caps);
    p.method = std::make_unique<GstMethod>(*rb, options);
  } else if (method == "dmv-sc") {
    const auto* sc = std::get_if<SetCoverInstance>(&file.body);
    if (!sc) throw wrong("set-cover");
    p.oracle = std::make_unique<SetCoverCost>(*sc, caps);
  } else {
    throw InvalidInput("unknown method '" + method + "'", "--method");
  }
  return p;
}

std::string method_of(const std::string& mechanism) {
  if (mechanism == "moulin-pt") return "pt";
  if (mechanism == "moulin-jv") return "jv";
  if (mechanism == "moulin-gst") return "gst";
  if (mechanism == "dmv-sc" || mechanism == "dmv-fl") return mechanism;
  throw InvalidInput("unknown mechanism '" + mechanism + "'", "--mechanism");
}

MechanismRunner make_runner(const InstanceFile& file, const std::string& mechanism, const Problem& problem,
                            RemovalPolicy policy) {
  if (mechanism == "dmv-sc") {
    const auto sc = std::get<SetCoverInstance>(file.body);
    return [sc](const BidProfile& b) { return run_dmv_setcover(sc, b); };
  }
  if (mechanism == "dmv-fl") {
    const auto fl = std::get<FacilityLocationInstance>(file.body);
    return [fl](const BidProfile& b) { return run_dmv_fl(fl, b); };
  }
  const CostShareMethod* method = problem.method.get();
  const CostOracle* oracle = problem.oracle.get();
  return [method, oracle, policy](const BidProfile& b) {
    MoulinConfig config;
    config.removal_policy = policy;
    return run_moulin(*method, *oracle, b, config);
  };
}

Json trace_json(const std::vector<TraceEvent>& trace) {
  Json out = Json::array();
  for (const TraceEvent& e : trace) {
    Json row = {{"kind", to_string(e.kind)}, {"step", e.step}, {"time", e.time}, {"amount", money_json(e.amount)}};
    if (e.kind != TraceKind::kSetBought && e.kind != TraceKind::kFacilityOpened) {
      row["player"] = e.player;
      row["bid"] = money_json(e.bid);
    }
    if (e.resource != kNoResource) row["resource"] = e.resource;
    out.push_back(row);
  }
  return out;
}

void emit(const Json& report, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(output);
  if (!file) throw InvalidInput("cannot write file " + output, "--output");
  file << report.dump(2) << '\n';
}

Json summability_json(const SummabilityReport& r) {
  Json j = {{"value", r.value},         {"cost", r.cost},
            {"ratio", money_json(r.ratio)}, {"set", set_json(r.set)},
            {"ordering", r.ordering},   {"prefix_shares", r.prefix_shares},
            {"mode", to_string(r.mode)}};
  if (r.mode == SearchMode::kRandom) {
    j["seed"] = r.seed;
    j["trials"] = r.trials;
  }
  return j;
}

Json violations_json(const std::vector<IncentiveViolation>& violations) {
  Json out = Json::array();
  for (const auto& v : violations) {
    Json bids = Json::array();
    for (Money b : v.bids.values()) bids.push_back(money_json(b));
    out.push_back({{"coalition", v.coalition},
                   {"bids", bids},
                   {"truthful_utility", v.truthful_utility},
                   {"deviation_utility", v.deviation_utility}});
  }
  return out;
}

struct Options {
  std::string instance;
  std::string mechanism;
  std::string method;
  std::string bids;
  std::string valuations;
  bool truthful = false;
  std::string output;
  std::string csv;
  std::string policy = "lowest-index";
  GstFlags gst;
  bool exhaustive = false;
  bool random = false;
  bool fixed = false;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string set;
  std::string ordering;
  std::size_t k = 16;
  double beta = 2.0;
  std::size_t m = 0;
  std::string check;
  std::size_t max_coalition = 3;
  double grid_step = 0.25;
  double grid_max = 2.0;
  std::string kind;
  std::size_t players = 3;
  std::size_t facilities = 1;
  std::size_t vertices = 5;
  std::size_t elements = 3;
  std::size_t sets = 3;
  double opening_cost = 1.0;
};

RemovalPolicy policy_of(const std::string& name) {
  if (name == "lowest-index") return RemovalPolicy::kLowestIndex;
  if (name == "batch") return RemovalPolicy::kBatch;
  throw InvalidInput("removal policy must be lowest-index or batch", "--policy");
}

int cmd_run(const Options& o, const Caps& caps, std::ostream& out) {
  const InstanceFile file = load_instance(o.instance);
  const std::size_t n = file.num_players();
  const Problem problem = make_problem(file, method_of(o.mechanism), o.gst, caps);
  std::optional<ValuationProfile> valuations;
  if (!o.valuations.empty()) {
    auto v = read_amounts(o.valuations, false);
    require_size(v.size(), n, "--valuations");
    valuations = ValuationProfile(std::move(v));
  }
  BidProfile bids;
  if (o.truthful) {
    if (!valuations) throw InvalidInput("--truthful needs --valuations", "--valuations");
    bids = truthful_bids(*valuations);
  } else {
    if (o.bids.empty()) throw InvalidInput("either --bids or --truthful is required", "--bids");
    auto b = read_amounts(o.bids, true);
    require_size(b.size(), n, "--bids");
    bids = BidProfile(std::move(b));
  }
  const MechanismOutcome outcome = make_runner(file, o.mechanism, problem, policy_of(o.policy))(bids);

  Json report;
  report["mechanism"] = o.mechanism;
  report["instance_digest"] = instance_digest(file);
  report["served"] = set_json(outcome.served);
  report["prices"] = outcome.prices;
  report["revenue"] = outcome.revenue();
  report["incurred_cost"] = outcome.incurred_cost;
  report["served_cost"] = problem.oracle->evaluate(outcome.served);
  report["budget_balance_recovery"] =
      outcome.incurred_cost > kEps ? Json(outcome.revenue() / outcome.incurred_cost) : Json(nullptr);
  Json social = nullptr;
  Json optimum = nullptr;
  Json ratio = nullptr;
  if (valuations) {
    const Money measured = social_cost(*problem.oracle, *valuations, outcome.served, outcome.incurred_cost);
    const OptimalSocialCost best = optimal_social_cost(*problem.oracle, *valuations, caps);
    social = measured;
    optimum = {{"cost", best.cost}, {"witness", set_json(best.witness)}};
    ratio = best.cost > kEps ? Json(measured / best.cost) : Json(nullptr);
  }
  report["social_cost"] = social;
  report["optimal_social_cost"] = optimum;
  report["social_cost_ratio"] = ratio;
  report["trace"] = trace_json(outcome.trace);
  emit(report, o.output, out);

  if (!o.csv.empty()) {
    const bool fresh = !std::filesystem::exists(o.csv);
    std::ofstream csv(o.csv, std::ios::app);
    if (!csv) throw InvalidInput("cannot write file " + o.csv, "--csv");
    if (fresh) csv << "mechanism,instance_digest,served,revenue,incurred_cost,social_cost,optimal_social_cost\n";
    std::string served = outcome.served.to_string();
    std::replace(served.begin(), served.end(), ',', ' ');
    csv << o.mechanism << ',' << report["instance_digest"].get<std::string>() << ',' << served << ','
        << outcome.revenue() << ',' << outcome.incurred_cost << ','
        << (valuations ? social.dump() : "") << ',' << (valuations ? optimum["cost"].dump() : "") << '\n';
  }
  return kExitOk;
}

int cmd_summability(const Options& o, const Caps& caps, std::ostream& out) {
  const InstanceFile file = load_instance(o.instance);
  const Problem problem = make_problem(file, o.method, o.gst, caps);
  if (!problem.method) throw InvalidInput("summability needs a cost-share method (pt, jv, gst)", "--method");
  SummabilitySearch search;
  search.caps = caps;
  search.workers = o.workers;
  const int modes = int(o.exhaustive) + int(o.random) + int(o.fixed);
  if (modes > 1) throw InvalidInput("choose one of --exhaustive, --random, --fixed", "--exhaustive");
  if (o.random) {
    search.mode = SearchMode::kRandom;
    search.trials = o.trials;
    search.seed = o.seed;
  } else if (o.fixed) {
    search.mode = SearchMode::kFixed;
    search.fixed_set = parse_set(o.set, file.num_players());
    search.fixed_ordering = o.ordering.empty() ? search.fixed_set.members() : parse_ids(o.ordering);
  }
  emit(summability_json(worst_summability(*problem.method, *problem.oracle, search)), o.output, out);
  return kExitOk;
}

int cmd_lowerbound(const Options& o, const Caps& caps, std::ostream& out) {
  LowerBoundSpec spec{o.k, o.beta, o.m ? std::optional<std::size_t>(o.m) : std::nullopt};
  if (!o.instance.empty()) {
    const InstanceFile file = load_instance(o.instance);
    const auto* s = std::get_if<LowerBoundSpec>(&file.body);
    if (!s) throw InvalidInput("lowerbound needs a lower-bound-spec instance", "$.kind");
    spec = *s;
  }
  if (o.method != "jv") throw InvalidInput("lowerbound supports the jv method", "--method");
  const LowerBoundConstruction c = build_lower_bound(spec.k, spec.beta, spec.m, caps);
  const SteinerTreeCost oracle(c.instance, caps);
  const JainVaziraniMethod method(c.instance);
  const GoodGroupSelection sel = select_good_groups(c, method, oracle);

  Json edges = Json::array();
  for (const auto& level : c.edges) edges.push_back(level.size());
  Json vertices = Json::array();
  for (const auto& level : c.vertices) vertices.push_back(level.size());
  Json choices = Json::array();
  for (const GroupChoice& g : sel.choices) {
    choices.push_back({{"level", g.level},
                       {"parent_edge", g.parent_edge == kNoResource ? Json(nullptr) : Json(g.parent_edge)},
                       {"group", g.group},
                       {"vertex", g.vertex},
                       {"good", g.good},
                       {"source", to_string(g.source)},
                       {"groups_tested", g.groups_tested},
                       {"ordering", g.ordering},
                       {"shares", g.shares},
                       {"thresholds", g.thresholds}});
  }
  Json report = {
      {"k", c.k},
      {"beta", c.beta},
      {"m", c.m},
      {"guaranteed_m", c.guaranteed_m},
      {"guaranteed_scale", c.guaranteed_scale},
      {"note", c.guaranteed_scale ? "m meets the size needed for guaranteed good groups"
                             : "desk-scale m: good groups are guaranteed only for m >= guaranteed_m"},
      {"levels", c.levels},
      {"vertices_per_level", vertices},
      {"edges_per_level", edges},
      {"players", c.num_players()},
      {"method", o.method},
      {"selection",
       {{"selected", set_json(sel.selected)},
        {"ordering", sel.ordering},
        {"level_sizes", sel.level_sizes},
        {"level_costs", sel.level_costs},
        {"all_good", sel.all_good},
        {"sizes_ok", sel.sizes_ok},
        {"costs_ok", sel.costs_ok},
        {"cost", sel.cost},
        {"prefix_sum", sel.prefix_sum},
        {"bound", sel.bound},
        {"groups", choices}}}};
  emit(report, o.output, out);
  return kExitOk;
}

int cmd_verify(const Options& o, const Caps& caps, std::ostream& out) {
  const InstanceFile file = load_instance(o.instance);
  const std::size_t n = file.num_players();
  Json report = {{"check", o.check}, {"instance_digest", instance_digest(file)}};
  if (o.check == "sp" || o.check == "gsp" || o.check == "weak-gsp" ||
      (o.check == "core" && !o.mechanism.empty())) {
    const Problem problem = make_problem(file, method_of(o.mechanism), o.gst, caps);
    if (o.valuations.empty()) throw InvalidInput("this check needs --valuations", "--valuations");
    auto v = read_amounts(o.valuations, false);
    require_size(v.size(), n, "--valuations");
    const ValuationProfile valuations(std::move(v));
    const MechanismRunner runner = make_runner(file, o.mechanism, problem, policy_of(o.policy));
    report["mechanism"] = o.mechanism;
    if (o.check == "core") {
      const MechanismOutcome outcome = runner(truthful_bids(valuations));
      const auto violations = check_price_core(outcome.prices, *problem.oracle, outcome.served, caps);
      Json list = Json::array();
      for (const auto& c : violations) list.push_back({{"coalition", set_json(c.coalition)}, {"paid", c.paid}, {"cost", c.cost}});
      report["violations"] = list;
    } else {
      BidGridOptions grid;
      grid.step = o.grid_step;
      grid.max_multiple = o.grid_max;
      const auto grids = bid_grids(valuations, grid);
      GspOptions options;
      options.caps = caps;
      options.workers = o.workers;
      options.max_coalition = o.check == "sp" ? 1 : std::min(o.max_coalition, n);
      options.predicate = o.check == "weak-gsp" ? GspPredicate::kWeak : GspPredicate::kFull;
      report["max_coalition"] = options.max_coalition;
      report["violations"] = violations_json(check_gsp(runner, valuations, grids, options));
    }
  } else if (o.check == "core" || o.check == "cross-monotonic") {
    const Problem problem = make_problem(file, o.method, o.gst, caps);
    if (!problem.method) throw InvalidInput("this check needs a cost-share method (pt, jv, gst)", "--method");
    report["method"] = o.method;
    Json list = Json::array();
    if (o.check == "core") {
      const PlayerSet s = o.set.empty() ? PlayerSet::full(n) : parse_set(o.set, n);
      for (const auto& c : check_core(*problem.method, *problem.oracle, s, caps)) {
        list.push_back({{"coalition", set_json(c.coalition)}, {"paid", c.paid}, {"cost", c.cost}});
      }
    } else {
      for (const auto& c : check_cross_monotonic(*problem.method, caps.orderings)) {
        list.push_back({{"player", c.player},
                        {"smaller", set_json(c.smaller)},
                        {"larger", set_json(c.larger)},
                        {"share_in_smaller", c.share_in_smaller},
                        {"share_in_larger", c.share_in_larger}});
      }
    }
    report["violations"] = list;
  } else {
    throw InvalidInput("check must be sp, gsp, weak-gsp, core or cross-monotonic", "--check");
  }
  report["passed"] = report["violations"].empty();
  emit(report, o.output, out);
  return kExitOk;
}

int cmd_oracle(const Options& o, const Caps& caps, std::ostream& out) {
  const InstanceFile file = load_instance(o.instance);
  const std::size_t n = file.num_players();
  const std::string method = file.kind() == "facility-location" ? "pt"
                             : file.kind() == "steiner"         ? "jv"
                             : file.kind() == "ssrob"           ? "gst"
                             : file.kind() == "set-cover"       ? "dmv-sc"
                                                                : "";
  if (method.empty()) throw InvalidInput("oracle needs a cost-function instance", "$.kind");
  const Problem problem = make_problem(file, method, o.gst, caps);
  const PlayerSet s = o.set.empty() ? PlayerSet::full(n) : parse_set(o.set, n);
  Json report = {{"kind", file.kind()}, {"set", set_json(s)}, {"cost", problem.oracle->evaluate(s)}};
  if (!o.valuations.empty()) {
    auto v = read_amounts(o.valuations, false);
    require_size(v.size(), n, "--valuations");
    const OptimalSocialCost best = optimal_social_cost(*problem.oracle, ValuationProfile(std::move(v)), caps);
    report["optimal_social_cost"] = {{"cost", best.cost}, {"witness", set_json(best.witness)}};
  }
  emit(report, o.output, out);
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto diagnostics = validate_instance(read_json_file(o.instance));
  Json list = Json::array();
  for (const auto& d : diagnostics) list.push_back({{"path", d.path}, {"message", d.message}});
  if (!diagnostics.empty()) {
    err << Json{{"error", "validation"}, {"diagnostics", list}}.dump() << '\n';
    return kExitValidation;
  }
  out << Json{{"diagnostics", list}}.dump() << '\n';
  return kExitOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  InstanceFile file{kFormatVersion, LowerBoundSpec{}};
  if (o.kind == "facility-location") {
    file.body = random_facility_location(o.seed, o.players, o.facilities);
  } else if (o.kind == "colocated") {
    file.body = FacilityLocationInstance::colocated(o.players, o.opening_cost);
  } else if (o.kind == "steiner") {
    file.body = random_steiner(o.seed, o.vertices, o.players);
  } else if (o.kind == "ssrob") {
    file.body = random_rent_or_buy(o.seed, o.vertices, o.players);
  } else if (o.kind == "set-cover") {
    file.body = random_set_cover(o.seed, o.elements, o.sets);
  } else if (o.kind == "lower-bound-spec") {
    file.body = LowerBoundSpec{o.k, o.beta, o.m ? std::optional<std::size_t>(o.m) : std::nullopt};
  } else {
    throw InvalidInput("unknown kind '" + o.kind + "'", "--kind");
  }
  emit(to_json(file), o.output, out);
  return kExitOk;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  const std::string& path = {}) {
  Json e = {{"error", kind}, {"message", message}};
  if (!path.empty()) e["path"] = path;
  err << e.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost-sharing mechanisms: run, measure and verify", "costshare"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Run a mechanism on an instance");
  run->add_option("--mechanism", o.mechanism, "moulin-pt | moulin-jv | moulin-gst | dmv-sc | dmv-fl")->required();
  run->add_option("--instance", o.instance, "Instance file")->required();
  run->add_option("--bids", o.bids, "Bid file (JSON array; \"inf\" allowed)");
  run->add_flag("--truthful", o.truthful, "Bid the valuations");
  run->add_option("--valuations", o.valuations, "Valuation file (JSON array)");
  run->add_option("--output", o.output, "Report file (default: stdout)");
  run->add_option("--csv", o.csv, "Append a CSV row to this file");
  run->add_option("--policy", o.policy, "lowest-index | batch");

  auto* summ = app.add_subcommand("summability", "Measure summability of a method");
  summ->add_option("--method", o.method, "pt | jv | gst")->required();
  summ->add_option("--instance", o.instance, "Instance file")->required();
  summ->add_flag("--exhaustive", o.exhaustive, "All sets and orderings (default)");
  summ->add_flag("--random", o.random, "Seeded random draws plus greedy orderings");
  summ->add_flag("--fixed", o.fixed, "One set and ordering");
  summ->add_option("--trials", o.trials, "Random draws");
  summ->add_option("--set", o.set, "Comma-separated players (fixed mode)");
  summ->add_option("--ordering", o.ordering, "Comma-separated ordering (fixed mode)");
  summ->add_option("--output", o.output, "Report file (default: stdout)");

  auto* lb = app.add_subcommand("lowerbound", "Build the recursive network and select groups");
  lb->add_option("--k", o.k, "Number of selected players (power of 4)");
  lb->add_option("--beta", o.beta, "Budget-balance factor");
  lb->add_option("--m", o.m, "Paths per edge (default: the guaranteed size)");
  lb->add_option("--instance", o.instance, "lower-bound-spec file (overrides --k/--beta/--m)");
  lb->add_option("--output", o.output, "Report file (default: stdout)");
  lb->add_option("--method", o.method, "Cost-share method (jv)");
  o.method = "jv";

  auto* verify = app.add_subcommand("verify", "Incentive, core and cross-monotonicity checks");
  verify->add_option("--check", o.check, "sp | gsp | weak-gsp | core | cross-monotonic")->required();
  verify->add_option("--instance", o.instance, "Instance file")->required();
  verify->add_option("--mechanism", o.mechanism, "Mechanism for sp/gsp/weak-gsp/core");
  verify->add_option("--method", o.method, "Method for core/cross-monotonic: pt | jv | gst");
  verify->add_option("--valuations", o.valuations, "Valuation file");
  verify->add_option("--max-coalition", o.max_coalition, "Largest coalition for gsp checks");
  verify->add_option("--grid-step", o.grid_step, "Bid grid step as a multiple of the valuation");
  verify->add_option("--grid-max", o.grid_max, "Largest bid grid multiple");
  verify->add_option("--set", o.set, "Player set for the core check of a method");
  verify->add_option("--output", o.output, "Report file (default: stdout)");
  verify->add_option("--policy", o.policy, "lowest-index | batch");

  auto* oracle = app.add_subcommand("oracle", "Evaluate C(S) and the optimal social cost");
  oracle->add_option("--instance", o.instance, "Instance file")->required();
  oracle->add_option("--set", o.set, "Comma-separated players (default: everyone)");
  oracle->add_option("--valuations", o.valuations, "Valuation file for the optimal social cost");
  oracle->add_option("--output", o.output, "Report file (default: stdout)");

  auto* validate = app.add_subcommand("validate", "Validate an instance file");
  validate->add_option("--instance", o.instance, "Instance file")->required();

  auto* generate = app.add_subcommand("generate", "Write a seeded instance");
  generate->add_option("--kind", o.kind, "facility-location | colocated | steiner | ssrob | set-cover | lower-bound-spec")
      ->required();
  generate->add_option("--players", o.players, "Players");
  generate->add_option("--facilities", o.facilities, "Facilities");
  generate->add_option("--vertices", o.vertices, "Graph vertices");
  generate->add_option("--elements", o.elements, "Set-cover elements");
  generate->add_option("--sets", o.sets, "Set-cover sets");
  generate->add_option("--opening-cost", o.opening_cost, "Colocated opening cost");
  generate->add_option("--k", o.k, "Lower-bound k");
  generate->add_option("--beta", o.beta, "Lower-bound beta");
  generate->add_option("--m", o.m, "Lower-bound m");
  generate->add_option("--output", o.output, "Instance file (default: stdout)");

  for (auto* sub : {run, summ, verify}) {
    sub->add_option("--gst-mode", o.gst.mode, "GST expectation: exact | mc");
    sub->add_option("--samples", o.gst.samples, "GST Monte Carlo samples");
    sub->add_option("--gst-seed", o.gst.seed, "GST Monte Carlo seed");
  }
  for (auto* sub : {summ, generate}) sub->add_option("--seed", o.seed, "Random seed");
  for (auto* sub : {summ, verify}) sub->add_option("--workers", o.workers, "Worker threads");
  summ->add_option("--gst-workers", o.gst.workers, "GST Monte Carlo worker threads");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "validation", e.what());
    return kExitValidation;
  }

  try {
    Caps caps;
    if (const char* env = std::getenv("COSTSHARE_CAPS")) caps = parse_caps(env);
    if (run->parsed()) return cmd_run(o, caps, out);
    if (summ->parsed()) return cmd_summability(o, caps, out);
    if (lb->parsed()) return cmd_lowerbound(o, caps, out);
    if (verify->parsed()) return cmd_verify(o, caps, out);
    if (oracle->parsed()) return cmd_oracle(o, caps, out);
    if (validate->parsed()) return cmd_validate(o, out, err);
    return cmd_generate(o, out);
  } catch (const CapacityError& e) {
    report_error(err, "capacity", e.what());
    return kExitCapacity;
  } catch (const InvalidInput& e) {
    report_error(err, "validation", e.what(), e.path());
    return kExitValidation;
  } catch (const InfeasibleError& e) {
    report_error(err, "validation", e.what());
    return kExitValidation;
  } catch (const Error& e) {
    report_error(err, "internal", e.what());
    return kExitValidation;
  }
}

}  // namespace costshare
