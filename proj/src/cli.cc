// Copyright 2026 The carshare Authors
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

#include "carshare/cli.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "carshare/errors.h"
#include "carshare/instance.h"
#include "carshare/oracle.h"
#include "carshare/solvers.h"
#include "json.hpp"

namespace carshare {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Integers print without a fractional part.
std::string num(double x) {
  char buf[32];
  if (std::abs(x - std::round(x)) < 1e-9 && std::abs(x) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(std::llround(x)));
  } else {
    std::snprintf(buf, sizeof(buf), "%.6g", x);
  }
  return buf;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Flags {
  std::string alg = "ca";
  int alpha = 1;
  std::string flavor = "u";
  std::string objective = "sum";
  std::string ties = "lex";
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<int> ns;
  int a = 2;
  std::string mode = "general";
  int grid = 100;
  std::string out;
  std::string instance;
  bool oracle = false;
  bool pad = false;
};

const std::map<std::string, Algorithm> kAlgorithms = {
    {"ma", Algorithm::kMA},
    {"ta", Algorithm::kTA},
    {"ca", Algorithm::kCA},
    {"ta-gen-sum", Algorithm::kTAGeneralSum},
    {"ta-gen-lat", Algorithm::kTAGeneralLat},
};

AlgoConfig config_from(const Flags& f) {
  AlgoConfig cfg;
  cfg.alpha = f.alpha;
  cfg.flavor = f.flavor == "u" ? Flavor::kU : Flavor::kMu;
  cfg.objective = f.objective == "sum" ? Objective::kSum : Objective::kLatency;
  cfg.ties = f.ties == "lex" ? TiePolicy::kLexicographic : TiePolicy::kAdversarial;
  return cfg;
}

InstanceMode mode_from(const std::string& mode) {
  return mode == "st" ? InstanceMode::kSEqualsT : InstanceMode::kGeneral;
}

// Unbalanced files are accepted only when they are going to be padded.
Instance load_named(const std::string& name, bool allow_unbalanced = false) {
  if (name == "fig1" || name == "fig2" || name == "fig3") return fixture_by_name(name);
  Instance instance = load_instance(name, /*check=*/false);
  check_instance(instance, /*require_balanced=*/!allow_unbalanced);
  return instance;
}

json optional_number(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

json allocation_json(const Allocation& allocation) {
  json cars = json::array();
  for (std::size_t k = 0; k < allocation.groups.size(); ++k) {
    json order = json::array();
    for (const Stop& s : allocation.orders[k]) order.push_back(to_string(s));
    cars.push_back({{"car", k}, {"requests", allocation.groups[k]}, {"order", order}});
  }
  return cars;
}

json record_json(const RatioRecord& rec) {
  return {{"type", "record"},
          {"index", rec.index},
          {"instance", rec.digest},
          {"algorithm", rec.tag},
          {"variant", to_string(rec.variant)},
          {"objective", rec.objective},
          {"optimum", rec.optimum},
          {"ratio", rec.ratio},
          {"bound", optional_number(rec.bound)},
          {"within_bound", rec.within_bound},
          {"degenerate", rec.degenerate}};
}

int cmd_solve(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  Instance instance = load_named(f.instance, f.pad);
  const Algorithm algorithm = kAlgorithms.at(f.alg);
  AlgoConfig cfg = config_from(f);
  if (algorithm == Algorithm::kTAGeneralSum) cfg.objective = Objective::kSum;
  if (algorithm == Algorithm::kTAGeneralLat) cfg.objective = Objective::kLatency;

  const bool padding = f.pad && !instance.balanced();
  const Instance original = instance;
  if (padding) instance = pad_instance(instance);
  const SolveReport report = solve(instance, algorithm, cfg);

  json doc = {{"type", "solve"},
              {"instance", instance_digest(original)},
              {"algorithm", report.tag()},
              {"branch", to_string(report.branch)},
              {"ties", to_string(cfg.ties)},
              {"objective_kind", to_string(cfg.objective)},
              {"objective", report.allocation.objective},
              {"v1", optional_number(report.v1)},
              {"v2", optional_number(report.v2)},
              {"v3", optional_number(report.v3)},
              {"allocation", allocation_json(report.allocation)},
              {"tie_candidates", report.tie_candidates}};
  int status = kExitOk;
  if (report.v3_bound_checked) {
    doc["v3_bound_holds"] = report.v3_bound_holds;
    if (!report.v3_bound_holds) status = kExitViolation;
  }
  double realized = report.allocation.objective;
  if (padding) {
    realized = restrict_to_real(instance, report.allocation, cfg.objective).objective;
    doc["padded"] = {{"dummy_cars", instance.dummy_cars},
                     {"dummy_requests", instance.dummy_requests},
                     {"real_objective", realized}};
  }
  if (f.oracle) {
    const double optimum =
        padding ? brute_force_opt_capacitated(real_requests_only(instance), cfg.objective).objective
                : brute_force_opt(instance, cfg.objective).objective;
    doc["optimum"] = optimum;
    doc["ratio"] = optimum > kTolerance ? json(realized / optimum) : json(nullptr);
    const auto bound = table_bound(algorithm, cfg, variant_of(instance, cfg.objective),
                                   instance.capacity);
    doc["bound"] = optional_number(bound);
  }
  out << doc.dump() << "\n";
  err << report.tag() << " " << to_string(cfg.objective) << " objective " << num(realized)
      << " (" << to_string(cfg.ties) << " ties, " << num(ms_since(start)) << " ms)\n";
  return status;
}

struct Check {
  std::string fixture;
  std::string name;
  double expected;
  double actual;
  bool pass() const { return std::abs(expected - actual) <= 1e-9 * std::max(1.0, std::abs(expected)); }
};

AlgoConfig adversarial(int alpha, Flavor flavor, Objective objective) {
  AlgoConfig cfg;
  cfg.alpha = alpha;
  cfg.flavor = flavor;
  cfg.objective = objective;
  cfg.ties = TiePolicy::kAdversarial;
  return cfg;
}

int cmd_verify_paper(std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::vector<Check> checks;
  int failed = 0;

  auto emit_ratio = [&](const std::string& fixture, const std::string& tag, double objective,
                        double optimum, double expected_ratio) {
    const std::string line = fixture + " " + tag + ": " + num(objective) + "/" + num(optimum);
    err << line << "\n";
    const double ratio = objective / optimum;
    Check c{fixture, tag + " ratio", expected_ratio, ratio};
    out << json{{"type", "ratio"}, {"line", line},        {"fixture", fixture},
                {"algorithm", tag}, {"objective", objective}, {"optimum", optimum},
                {"ratio", ratio},   {"expected", expected_ratio}, {"pass", c.pass()}}
               .dump()
        << "\n";
    checks.push_back(c);
  };

  const AlgoConfig sum1 = adversarial(1, Flavor::kU, Objective::kSum);
  const AlgoConfig lat2 = adversarial(2, Flavor::kMu, Objective::kLatency);

  {
    const Instance fig1 = fixture_fig1();
    const Allocation opt = brute_force_opt(fig1, Objective::kSum);
    const SolveReport ma = ma_solve(fig1, sum1);
    const SolveReport ta = ta_solve(fig1, sum1);
    const SolveReport ca = ca_solve(fig1, sum1);
    const bool twin = (opt.groups == std::vector<std::vector<int>>{{0, 2}, {1, 3}}) ||
                      (opt.groups == std::vector<std::vector<int>>{{1, 3}, {0, 2}});
    checks.push_back({"fig1", "oracle sum", 2, opt.objective});
    checks.push_back({"fig1", "oracle groups {r1,r3},{r2,r4}", 1, twin ? 1.0 : 0.0});
    checks.push_back({"fig1", "MA(1,u) sum", 4, ma.allocation.objective});
    checks.push_back({"fig1", "MA(1,u) v1", 3, *ma.v1});
    checks.push_back({"fig1", "TA(1) sum", 4, ta.allocation.objective});
    checks.push_back({"fig1", "TA(1) v3", 6, *ta.v3});
    checks.push_back({"fig1", "CA(1,u) sum", 4, ca.allocation.objective});
    emit_ratio("fig1", "CA(1,u)", ca.allocation.objective, opt.objective, 2.0);
  }
  {
    const Instance fig2 = fixture_fig2();
    const double opt = brute_force_opt(fig2, Objective::kSum).objective;
    const SolveReport ma = ma_solve(fig2, sum1);
    const SolveReport ta = ta_solve(fig2, sum1);
    const SolveReport ca = ca_solve(fig2, sum1);
    checks.push_back({"fig2", "oracle sum", 10, opt});
    checks.push_back({"fig2", "MA(1,u) sum", 14, ma.allocation.objective});
    checks.push_back({"fig2", "TA(1) sum", 14, ta.allocation.objective});
    checks.push_back({"fig2", "CA(1,u) sum", 14, ca.allocation.objective});
    emit_ratio("fig2", "CA(1,u)", ca.allocation.objective, opt, 7.0 / 5);

    const std::vector<int> cars = {2, 3}, requests = {4, 5, 6, 7};
    const Instance bottom = sub_instance(fig2, cars, requests);
    const double bottom_opt = brute_force_opt(bottom, Objective::kSum).objective;
    const SolveReport bottom_ta = ta_solve(bottom, sum1);
    checks.push_back({"fig2-bottom", "TA(1) v3", 6, *bottom_ta.v3});
    emit_ratio("fig2-bottom", "TA(1)", bottom_ta.allocation.objective, bottom_opt, 3.0);
  }
  {
    const Instance fig3 = fixture_fig3();
    const double opt = brute_force_opt(fig3, Objective::kLatency).objective;
    const SolveReport ma = ma_solve(fig3, lat2);
    const SolveReport ta = ta_solve(fig3, lat2);
    const SolveReport ca = ca_solve(fig3, lat2);
    checks.push_back({"fig3", "oracle lat", 8, opt});
    checks.push_back({"fig3", "MA(2,mu) lat", 12, ma.allocation.objective});
    checks.push_back({"fig3", "TA(2) lat", 12, ta.allocation.objective});
    checks.push_back({"fig3", "CA(2,mu) lat", 12, ca.allocation.objective});
    emit_ratio("fig3", "CA(2,mu)", ca.allocation.objective, opt, 3.0 / 2);

    const std::vector<int> top_cars = {0, 1}, top_requests = {0, 1, 2, 3};
    const std::vector<int> bottom_cars = {2, 3}, bottom_requests = {4, 5, 6, 7};
    const Instance top = sub_instance(fig3, top_cars, top_requests);
    const Instance bottom = sub_instance(fig3, bottom_cars, bottom_requests);
    const double top_opt = brute_force_opt(top, Objective::kLatency).objective;
    const double bottom_opt = brute_force_opt(bottom, Objective::kLatency).objective;
    const SolveReport top_ma = ma_solve(top, lat2);
    const SolveReport bottom_ta = ta_solve(bottom, lat2);
    checks.push_back({"fig3-bottom", "TA(2) v3", 8, *bottom_ta.v3});
    emit_ratio("fig3-top", "MA(2,mu)", top_ma.allocation.objective, top_opt, 2.0);
    emit_ratio("fig3-bottom", "TA(2)", bottom_ta.allocation.objective, bottom_opt, 2.0);
  }

  for (const Check& c : checks) {
    if (c.name.ends_with(" ratio")) {
      // Already emitted as a ratio line.
      if (!c.pass()) {
        ++failed;
        err << "MISMATCH " << c.fixture << " " << c.name << ": expected " << num(c.expected)
            << ", got " << num(c.actual) << "\n";
      }
      continue;
    }
    out << json{{"type", "check"}, {"fixture", c.fixture}, {"check", c.name},
                {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass()}}
               .dump()
        << "\n";
    if (!c.pass()) {
      ++failed;
      err << "MISMATCH " << c.fixture << " " << c.name << ": expected " << num(c.expected)
          << ", got " << num(c.actual) << "\n";
    }
  }
  out << json{{"type", "verify-summary"}, {"checks", checks.size()}, {"failed", failed}}.dump()
      << "\n";
  err << checks.size() - failed << "/" << checks.size() << " checks passed in "
      << num(ms_since(start)) << " ms\n";
  return failed == 0 ? kExitOk : kExitViolation;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  SweepOptions options;
  options.count = f.count;
  if (!f.ns.empty()) options.ns = f.ns;
  options.a = f.a;
  options.mode = mode_from(f.mode);
  options.seed = f.seed;
  options.grid = f.grid;
  const SweepResult result = ratio_sweep(options);

  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw ParseError("cannot write " + f.out);
  }
  std::ostream& sink = f.out.empty() ? out : file;
  for (const RatioRecord& rec : result.records) sink << record_json(rec).dump() << "\n";
  for (const SweepSummaryRow& row : result.summary) {
    out << json{{"type", "summary"},
                {"algorithm", row.tag},
                {"variant", to_string(row.variant)},
                {"bound", optional_number(row.bound)},
                {"max_ratio", row.max_ratio},
                {"records", row.records},
                {"degenerate", row.degenerate},
                {"violations", row.violations}}
               .dump()
        << "\n";
    err << row.tag << " " << to_string(row.variant) << ": max ratio " << num(row.max_ratio);
    if (row.bound) err << " (bound " << num(*row.bound) << ")";
    err << ", " << row.violations << " violations, " << row.degenerate << " degenerate\n";
  }
  err << options.count << " instances, " << result.records.size() << " records, "
      << result.violations << " violations, " << num(ms_since(start)) << " ms\n";
  return result.violations == 0 ? kExitOk : kExitViolation;
}

int cmd_gen(const Flags& f, std::ostream& out, std::ostream& err) {
  const int n = f.ns.empty() ? 2 : f.ns.front();
  const Instance instance = random_instance(n, f.a, mode_from(f.mode), f.seed, f.grid);
  if (f.out.empty()) {
    out << serialize_instance(instance) << "\n";
  } else {
    save_instance(instance, f.out);
    out << json{{"type", "gen"}, {"out", f.out}, {"instance", instance_digest(instance)}}.dump()
        << "\n";
  }
  err << "generated " << n << " cars, " << instance.num_requests() << " requests, "
      << instance.metric.size() << " locations\n";
  return kExitOk;
}

int cmd_validate(const Flags& f, std::ostream& out, std::ostream& err) {
  const Instance instance = f.instance == "fig1" || f.instance == "fig2" || f.instance == "fig3"
                                ? fixture_by_name(f.instance)
                                : load_instance(f.instance, /*check=*/false);
  const ValidationReport report = instance.padded ? ValidationReport{} : validate_metric(instance.metric);
  json violations = json::array();
  for (const MetricViolation& v : report.violations) {
    violations.push_back({{"kind", to_string(v.kind)}, {"x", v.x}, {"y", v.y}, {"z", v.z},
                          {"amount", v.amount}});
  }
  std::string structural;
  if (report.ok()) {
    try {
      check_instance(instance, /*require_balanced=*/false);
    } catch (const DomainError& e) {
      structural = e.what();
    }
  }
  const bool ok = report.ok() && structural.empty();
  json doc = {{"type", "validate"},
              {"instance", instance_digest(instance)},
              {"ok", ok},
              {"balanced", instance.balanced()},
              {"violations", violations}};
  if (!structural.empty()) doc["error"] = structural;
  out << doc.dump() << "\n";
  err << (ok ? "valid" : "invalid") << ": " << report.violations.size() << " metric violations";
  if (!structural.empty()) err << "; " << structural;
  err << "\n";
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Car-sharing allocation algorithms and verification harness", "carshare"};
  app.require_subcommand(1);
  Flags f;

  auto add_algo_flags = [&f](CLI::App* cmd) {
    cmd->add_option("--alg", f.alg, "Algorithm")
        ->check(CLI::IsMember({"ma", "ta", "ca", "ta-gen-sum", "ta-gen-lat"}));
    cmd->add_option("--alpha", f.alpha, "Weight of the first leg")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--flavor", f.flavor, "Pair table: u (travel) or mu (latency)")
        ->check(CLI::IsMember({"u", "mu"}));
    cmd->add_option("--objective", f.objective, "sum or lat")->check(CLI::IsMember({"sum", "lat"}));
    cmd->add_option("--ties", f.ties, "Tie-break policy")
        ->check(CLI::IsMember({"lex", "adversarial"}));
  };
  auto add_gen_flags = [&f](CLI::App* cmd) {
    cmd->add_option("--n", f.ns, "Car count(s), comma separated")->delimiter(',');
    cmd->add_option("--a", f.a, "Requests per car")->check(CLI::Range(2, 4));
    cmd->add_option("--mode", f.mode, "general or st (pickup = dropoff)")
        ->check(CLI::IsMember({"general", "st"}));
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--grid", f.grid, "Coordinate range of random points")->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out, "Output file");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "Run an algorithm on an instance");
  solve_cmd->add_option("instance", f.instance, "Instance file or fixture name (fig1, fig2, fig3)")
      ->required();
  add_algo_flags(solve_cmd);
  solve_cmd->add_flag("--oracle", f.oracle, "Also compute the exact optimum");
  solve_cmd->add_flag("--pad", f.pad, "Pad an unbalanced instance first");

  CLI::App* verify_cmd = app.add_subcommand("verify-paper", "Check the worst-case fixtures");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Empirical ratio sweep against the oracle");
  sweep_cmd->add_option("--count", f.count, "Number of instances")->check(CLI::NonNegativeNumber);
  add_gen_flags(sweep_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a random instance");
  add_gen_flags(gen_cmd);

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check an instance's metric");
  validate_cmd->add_option("instance", f.instance, "Instance file or fixture name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(f, out, err);
    if (verify_cmd->parsed()) return cmd_verify_paper(out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(f, out, err);
    if (gen_cmd->parsed()) return cmd_gen(f, out, err);
    if (validate_cmd->parsed()) return cmd_validate(f, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapabilityError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace carshare
