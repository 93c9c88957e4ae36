// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <thread>

#include "spider/fixtures.hpp"

namespace spider {

std::vector<std::string> list_analyzable(const ServiceRegistry& registry) {
  std::vector<std::string> out;
  for (const auto& svc : registry.services()) {
    if (!svc.handles.empty()) out.push_back(svc.id);
  }
  return out;
}

void SweepPlan::validate() const {
  if (lengths.empty()) throw ConfigError("sweep: lengths must be non-empty");
  size_t prev = 0;
  for (size_t n : lengths) {
    if (n < 1) throw ConfigError("sweep: lengths must be positive");
    if (n <= prev) throw ConfigError("sweep: lengths must be ascending");
    prev = n;
  }
  if (budget_execs < 1 && !budget_secs)
    throw ConfigError("sweep: a per-campaign budget is required");
  if (jobs < 1) throw ConfigError("sweep: jobs must be >= 1");
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& target,
                          size_t seq_len) {
  // splitmix64 over the base seed, target name hash, and N.
  std::uint64_t x = base;
  for (char c : target) x = x * 1099511628211ULL + static_cast<unsigned char>(c);
  x += 0x9e3779b97f4a7c15ULL * (seq_len + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

namespace {

SweepTargetResult sweep_target(const ServiceRegistry& registry,
                               const SweepPlan& plan,
                               const std::string& target,
                               std::uint64_t threshold) {
  SweepTargetResult result;
  result.target = target;
  for (size_t n : plan.lengths) {
    SweepCampaignOutcome outcome;
    outcome.seq_len = n;
    CampaignConfig config;
    config.fixture = plan.fixture;
    config.target = target;
    config.seq_len = n;
    config.budget_execs = plan.budget_execs;
    config.budget_secs = plan.budget_secs;
    config.t_max = threshold;
    config.seed = derive_seed(plan.seed, target, n);
    config.mode = plan.mode;
    try {
      FuzzReport report = run_campaign(registry, config);
      outcome.executions = report.executions;
      outcome.flag_count = report.flags.size();
      for (const Flag& flag : report.flags) {
        if (!triage(flag).true_positive_candidate) continue;
        ++outcome.candidate_count;
        if (!outcome.complexity) {
          auto verdict = classify_complexity(registry, config, flag);
          if (verdict) outcome.complexity = verdict->cls;
        }
      }
      if (!plan.out_dir.empty()) {
        auto [dep, types] = campaign_scope(registry, target);
        std::filesystem::path path =
            std::filesystem::path(plan.out_dir) /
            (target + "-n" + std::to_string(n) + ".json");
        write_report_file(report, types, path.string());
        outcome.report_path = path.string();
      }
      bool flagged = !report.flags.empty();
      result.campaigns.push_back(std::move(outcome));
      if (flagged) {
        if (!result.smallest_flagged_n) result.smallest_flagged_n = n;
        if (plan.stop_at_first_flag) break;
      }
    } catch (const Error& e) {
      outcome.error = e.what();
      result.campaigns.push_back(std::move(outcome));
    }
  }
  return result;
}

}  // namespace

SweepReport run_sweep(const ServiceRegistry& registry, const SweepPlan& plan) {
  plan.validate();
  SweepReport report;
  report.plan = plan;

  if (plan.threshold) {
    report.threshold_used = *plan.threshold;
  } else {
    ControllerInstance instance(registry);
    auto samples = run_baseline(
        instance, fixtures::resolve_workload(plan.workload));
    std::vector<std::uint64_t> lengths;
    lengths.reserve(samples.size());
    for (const auto& s : samples) lengths.push_back(s.path_length);
    report.threshold_used = compute_threshold(lengths);
  }

  std::vector<std::string> targets =
      plan.targets.empty() ? list_analyzable(registry) : plan.targets;
  for (const auto& t : targets) {
    if (!registry.has(t)) throw ConfigError("unknown target service '" + t + "'");
  }
  if (!plan.out_dir.empty()) {
    std::filesystem::create_directories(plan.out_dir);
  }

  report.results.resize(targets.size());
  if (plan.jobs <= 1 || targets.size() <= 1) {
    for (size_t i = 0; i < targets.size(); ++i) {
      report.results[i] =
          sweep_target(registry, plan, targets[i], report.threshold_used);
    }
  } else {
    // Each worker owns isolated controller instances; only the disjoint
    // results slots are shared.
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= targets.size()) return;
        report.results[i] =
            sweep_target(registry, plan, targets[i], report.threshold_used);
      }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(plan.jobs, targets.size());
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return report;
}

Json sweep_to_json(const SweepReport& report) {
  Json results = Json::array();
  for (const auto& r : report.results) {
    Json campaigns = Json::array();
    for (const auto& c : r.campaigns) {
      Json jc{{"seq_len", c.seq_len},
              {"executions", c.executions},
              {"flags", c.flag_count},
              {"true_positive_candidates", c.candidate_count}};
      if (!c.report_path.empty()) jc["report"] = c.report_path;
      if (c.complexity) jc["complexity"] = complexity_name(*c.complexity);
      if (!c.error.empty()) jc["error"] = c.error;
      campaigns.push_back(std::move(jc));
    }
    Json jr{{"target", r.target}, {"campaigns", campaigns}};
    jr["smallest_flagged_n"] =
        r.smallest_flagged_n ? Json(*r.smallest_flagged_n) : Json(nullptr);
    if (!r.error.empty()) jr["error"] = r.error;
    results.push_back(std::move(jr));
  }
  Json lengths = Json::array();
  for (size_t n : report.plan.lengths) lengths.push_back(n);
  return {{"fixture", report.plan.fixture},
          {"lengths", lengths},
          {"budget_execs", report.plan.budget_execs},
          {"threshold", report.threshold_used},
          {"seed", report.plan.seed},
          {"mode", report.plan.mode == GenMode::Full ? "full" : "generic-only"},
          {"results", results}};
}

}  // namespace spider
