// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Batch harness: load registry fixtures, calibrate thresholds, run fuzzing
// campaigns and sweeps, triage, classify, and replay flags.
//
// Exit codes: 0 completed with no flags (or informational subcommand),
// 10 completed with at least one true-positive candidate, 2 configuration
// error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "spider/fixtures.hpp"
#include "spider/report.hpp"
#include "spider/sweep.hpp"
#include "spider/typegen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCandidate = 10;
constexpr int kExitConfig = 2;

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* env = std::getenv("SPIDER_SEED");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    throw spider::ConfigError("SPIDER_SEED must be an unsigned integer");
  }
  return v;
}

std::uint64_t resolve_threshold(const std::string& spec,
                                const spider::ServiceRegistry& registry,
                                const std::string& workload) {
  if (spec != "auto") {
    char* end = nullptr;
    unsigned long long v = std::strtoull(spec.c_str(), &end, 10);
    if (end == spec.c_str() || *end != '\0' || v == 0) {
      throw spider::ConfigError("--threshold must be 'auto' or a positive integer");
    }
    return v;
  }
  spider::ControllerInstance instance(registry);
  auto samples = spider::run_baseline(
      instance, spider::fixtures::resolve_workload(workload));
  std::vector<std::uint64_t> lengths;
  lengths.reserve(samples.size());
  for (const auto& s : samples) lengths.push_back(s.path_length);
  return spider::compute_threshold(lengths);
}

spider::GenMode parse_mode(const std::string& mode) {
  if (mode == "full") return spider::GenMode::Full;
  if (mode == "generic-only") return spider::GenMode::GenericOnly;
  throw spider::ConfigError("--mode must be full or generic-only");
}

int cmd_calibrate(const std::string& fixture, const std::string& workload,
                  size_t exclude, const std::string& csv_path) {
  auto registry = spider::fixtures::resolve(fixture);
  spider::ControllerInstance instance(registry);
  auto samples = spider::run_baseline(
      instance, spider::fixtures::resolve_workload(workload), exclude);
  std::vector<std::uint64_t> lengths;
  double mean = 0;
  for (const auto& s : samples) {
    lengths.push_back(s.path_length);
    mean += static_cast<double>(s.path_length);
  }
  mean /= static_cast<double>(samples.size());
  double var = 0;
  for (auto v : lengths) {
    double d = static_cast<double>(v) - mean;
    var += d * d;
  }
  var /= static_cast<double>(lengths.size());
  spider::Json out{{"samples", samples.size()},
                   {"mean", mean},
                   {"stddev", std::sqrt(var)},
                   {"t_max", spider::compute_threshold(lengths)}};
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw spider::ConfigError("cannot write '" + csv_path + "'");
    spider::write_baseline_csv(samples, csv);
    out["csv"] = csv_path;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& fixture, const std::string& target,
                size_t seq_len, std::uint64_t budget_execs,
                double budget_secs, const std::string& threshold,
                std::uint64_t seed, const std::string& mode,
                const std::string& workload, const std::string& out_path) {
  auto registry = spider::fixtures::resolve(fixture);

  spider::CampaignConfig config;
  config.fixture = fixture;
  config.target = target;
  config.seq_len = seq_len;
  if (budget_execs > 0) config.budget_execs = budget_execs;
  if (budget_secs > 0) config.budget_secs = budget_secs;
  if (!config.budget_execs && !config.budget_secs) config.budget_execs = 5000;
  config.t_max = resolve_threshold(threshold, registry, workload);
  config.seed = env_seed(seed);
  config.mode = parse_mode(mode);

  spider::FuzzReport report = spider::run_campaign(registry, config);
  auto [dep, types] = spider::campaign_scope(registry, target);
  spider::write_report_file(report, types, out_path);

  size_t candidates = 0;
  for (const auto& flag : report.flags) {
    if (spider::triage(flag).true_positive_candidate) ++candidates;
  }
  spider::Json summary{{"report", out_path},
                       {"t_max", config.t_max},
                       {"executions", report.executions},
                       {"queue_size", report.queue_size},
                       {"flags", report.flags.size()},
                       {"true_positive_candidates", candidates}};
  std::cout << summary.dump(2) << "\n";
  if (candidates > 0) return kExitCandidate;
  return kExitOk;
}

int cmd_sweep(spider::SweepPlan plan, const std::string& threshold,
              const std::string& mode, const std::string& out_path) {
  plan.seed = env_seed(plan.seed);
  plan.mode = parse_mode(mode);
  if (threshold != "auto") {
    char* end = nullptr;
    unsigned long long v = std::strtoull(threshold.c_str(), &end, 10);
    if (end == threshold.c_str() || *end != '\0' || v == 0) {
      throw spider::ConfigError("--threshold must be 'auto' or a positive integer");
    }
    plan.threshold = v;
  }
  auto registry = spider::fixtures::resolve(plan.fixture);
  spider::SweepReport report = spider::run_sweep(registry, plan);
  spider::Json j = spider::sweep_to_json(report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw spider::ConfigError("cannot write '" + out_path + "'");
    out << j.dump() << "\n";
  }
  std::cout << j.dump(2) << "\n";
  size_t candidates = 0;
  for (const auto& r : report.results) {
    for (const auto& c : r.campaigns) candidates += c.candidate_count;
  }
  return candidates > 0 ? kExitCandidate : kExitOk;
}

int cmd_deps(const std::string& fixture, const std::string& target) {
  auto registry = spider::fixtures::resolve(fixture);
  if (!registry.has(target)) {
    throw spider::ConfigError("unknown target service '" + target + "'");
  }
  auto dep = spider::dependency_set(registry, target);
  std::cout << spider::dependency_to_json(registry, dep).dump(2) << "\n";
  return kExitOk;
}

int cmd_replay(const std::string& report_path, size_t flag_index) {
  spider::LoadedReport report = spider::load_report_file(report_path);
  if (flag_index >= report.flags.size()) {
    throw spider::ConfigError("flag index " + std::to_string(flag_index) +
                              " out of range (report has " +
                              std::to_string(report.flags.size()) + " flags)");
  }
  const auto& flag = report.flags[flag_index];
  auto registry = spider::fixtures::resolve(report.config.fixture);
  auto [dep, types] = spider::campaign_scope(registry, report.config.target);
  spider::ControllerInstance instance(registry.restrict(dep.members));

  std::vector<spider::Event> events;
  try {
    events = spider::decode_for_replay(types, report.config.seq_len,
                                       report.config.mode, flag.stream);
  } catch (const spider::Error& e) {
    throw spider::ReplayError(std::string("replay decode diverged: ") + e.what());
  }
  spider::CostTrace trace = spider::execute_sequence(instance, events);
  if (trace.path_length != flag.path_length) {
    throw spider::ReplayError(
        "replay divergence: recorded path_length " +
        std::to_string(flag.path_length) + ", re-executed " +
        std::to_string(trace.path_length));
  }
  auto verdicts = spider::validate_sequence(events);
  spider::Json violations = spider::Json::array();
  for (const auto& v : verdicts) {
    if (v.violation) {
      violations.push_back({{"index", v.index}, {"message", *v.violation}});
    }
  }
  spider::Json out{{"flag", flag_index},
                   {"path_length", trace.path_length},
                   {"match", true},
                   {"trace", trace.to_json()},
                   {"violations", violations}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_classify(const std::string& report_path, size_t flag_index,
                 std::vector<size_t> lengths, const std::string& csv_path) {
  spider::LoadedReport report = spider::load_report_file(report_path);
  if (flag_index >= report.flags.size()) {
    throw spider::ConfigError("flag index " + std::to_string(flag_index) +
                              " out of range (report has " +
                              std::to_string(report.flags.size()) + " flags)");
  }
  const auto& loaded = report.flags[flag_index];
  auto registry = spider::fixtures::resolve(report.config.fixture);

  spider::Flag flag;
  flag.stream = loaded.stream;
  flag.path_length = loaded.path_length;
  auto verdict = spider::classify_complexity(registry, report.config, flag,
                                             std::move(lengths));
  if (!verdict) {
    std::cout << R"({"class":null,"error":"verdict unavailable"})" << "\n";
    return kExitOk;
  }
  spider::Json out = spider::verdict_to_json(*verdict);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw spider::ConfigError("cannot write '" + csv_path + "'");
    spider::write_measurements_csv(*verdict, csv);
    out["csv"] = csv_path;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_fixture(const std::string& name, const std::string& out_path) {
  spider::Json j;
  if (name == "event-types") {
    j = spider::Json::parse(spider::event_types_schema_text());
  } else if (name == "normal-traffic") {
    j = spider::fixtures::events_to_json(
        spider::fixtures::normal_traffic_workload());
  } else {
    j = spider::fixtures::to_json(spider::fixtures::builtin(name));
  }
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw spider::ConfigError("cannot write '" + out_path + "'");
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grey-box semantic performance fuzzer for event-driven controllers"};
  app.require_subcommand(1);

  // calibrate
  std::string cal_fixture = spider::fixtures::kDefaultFixture;
  std::string cal_workload = spider::fixtures::kDefaultWorkload;
  size_t cal_exclude = spider::kDefaultInitExclusion;
  std::string cal_csv;
  auto* calibrate = app.add_subcommand(
      "calibrate", "derive the alerting threshold from a normal workload");
  calibrate->add_option("--fixture", cal_fixture, "registry fixture (builtin name or file)");
  calibrate->add_option("--workload", cal_workload,
                        "workload: normal-traffic, a .jsonl message file, or a .json event file");
  calibrate->add_option("--exclude", cal_exclude, "initialization events to drop");
  calibrate->add_option("--csv", cal_csv, "write per-event samples as CSV");

  // analyze
  std::string an_fixture = spider::fixtures::kDefaultFixture;
  std::string an_target;
  size_t an_seq_len = 50;
  std::uint64_t an_budget_execs = 0;
  double an_budget_secs = 0;
  std::string an_threshold = "auto";
  std::uint64_t an_seed = 1;
  std::string an_mode = "full";
  std::string an_workload = spider::fixtures::kDefaultWorkload;
  std::string an_out = "spider-report.json";
  auto* analyze = app.add_subcommand("analyze", "fuzz one target service");
  analyze->add_option("--fixture", an_fixture, "registry fixture");
  analyze->add_option("--target", an_target, "target service id")->required();
  analyze->add_option("--seq-len", an_seq_len, "event sequence length N");
  analyze->add_option("--budget-execs", an_budget_execs, "execution budget");
  analyze->add_option("--budget-secs", an_budget_secs, "wall-clock budget (seconds)");
  analyze->add_option("--threshold", an_threshold, "auto or a fixed path-length threshold");
  analyze->add_option("--seed", an_seed, "campaign seed (SPIDER_SEED overrides)");
  analyze->add_option("--mode", an_mode, "full | generic-only");
  analyze->add_option("--workload", an_workload, "baseline workload for --threshold auto");
  analyze->add_option("--out", an_out, "report file path");

  // sweep
  spider::SweepPlan plan;
  std::string sw_threshold = "auto";
  std::string sw_mode = "full";
  std::string sw_out;
  bool sw_full = false;
  auto* sweep = app.add_subcommand(
      "sweep", "sweep services x sequence lengths, reporting the smallest flagged N");
  sweep->add_option("--fixture", plan.fixture, "registry fixture");
  sweep->add_option("--targets", plan.targets, "target services (default: all analyzable)");
  sweep->add_option("--lengths", plan.lengths, "ascending sequence lengths");
  sweep->add_option("--budget-execs", plan.budget_execs, "per-campaign execution budget");
  sweep->add_option("--threshold", sw_threshold, "auto or a fixed threshold");
  sweep->add_option("--workload", plan.workload, "baseline workload for auto threshold");
  sweep->add_option("--seed", plan.seed, "base seed (SPIDER_SEED overrides)");
  sweep->add_option("--mode", sw_mode, "full | generic-only");
  sweep->add_option("--jobs", plan.jobs, "parallel target workers");
  sweep->add_option("--out-dir", plan.out_dir, "directory for per-campaign reports");
  sweep->add_option("--out", sw_out, "sweep summary file");
  sweep->add_flag("--full", sw_full, "continue past the first flagged N per target");

  // deps
  std::string dp_fixture = spider::fixtures::kDefaultFixture;
  std::string dp_target;
  auto* deps = app.add_subcommand(
      "deps", "dependency set and naive reach set of a target, side by side");
  deps->add_option("--fixture", dp_fixture, "registry fixture");
  deps->add_option("--target", dp_target, "target service id")->required();

  // replay
  std::string rp_report;
  size_t rp_flag = 0;
  auto* replay = app.add_subcommand("replay", "re-execute a recorded flag");
  replay->add_option("--report", rp_report, "campaign report file")->required();
  replay->add_option("--flag", rp_flag, "flag index")->required();

  // classify
  std::string cl_report;
  size_t cl_flag = 0;
  std::vector<size_t> cl_lengths;
  std::string cl_csv;
  auto* classify = app.add_subcommand(
      "classify", "fit the per-event cost curve of a flag");
  classify->add_option("--report", cl_report, "campaign report file")->required();
  classify->add_option("--flag", cl_flag, "flag index")->required();
  classify->add_option("--lengths", cl_lengths, "probe lengths (default N/4..N)");
  classify->add_option("--csv", cl_csv, "write measurements as CSV");

  // fixture
  std::string fx_name;
  std::string fx_out;
  auto* fixture = app.add_subcommand(
      "fixture", "emit a builtin fixture (testbed, fig4, event-types, normal-traffic)");
  fixture->add_option("name", fx_name, "fixture name")->required();
  fixture->add_option("--out", fx_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*calibrate)
      return cmd_calibrate(cal_fixture, cal_workload, cal_exclude, cal_csv);
    if (*analyze)
      return cmd_analyze(an_fixture, an_target, an_seq_len, an_budget_execs,
                         an_budget_secs, an_threshold, an_seed, an_mode,
                         an_workload, an_out);
    if (*sweep) {
      plan.stop_at_first_flag = !sw_full;
      return cmd_sweep(plan, sw_threshold, sw_mode, sw_out);
    }
    if (*deps) return cmd_deps(dp_fixture, dp_target);
    if (*replay) return cmd_replay(rp_report, rp_flag);
    if (*classify) return cmd_classify(cl_report, cl_flag, cl_lengths, cl_csv);
    if (*fixture) return cmd_fixture(fx_name, fx_out);
  } catch (const spider::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const spider::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const spider::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
