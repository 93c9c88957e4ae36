// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spider/report.hpp"

namespace spider {

// Services with at least one handled event type.
std::vector<std::string> list_analyzable(const ServiceRegistry& registry);

struct SweepPlan {
  std::string fixture = "testbed";
  std::vector<std::string> targets;  // empty = all analyzable
  std::vector<size_t> lengths = {1, 50, 100, 250, 500, 1000, 2000};
  std::uint64_t budget_execs = 6000;  // per (target, N)
  std::optional<double> budget_secs;
  std::optional<std::uint64_t> threshold;  // nullopt = auto from workload
  std::string workload = "normal-traffic";
  std::uint64_t seed = 1;
  GenMode mode = GenMode::Full;
  bool stop_at_first_flag = true;
  unsigned jobs = 1;
  std::string out_dir;  // empty = keep reports in memory only

  void validate() const;  // lengths ascending & positive, budget >= 1
};

struct SweepCampaignOutcome {
  size_t seq_len = 0;
  std::uint64_t executions = 0;
  size_t flag_count = 0;
  size_t candidate_count = 0;
  std::string report_path;  // empty when not written
  std::optional<ComplexityClass> complexity;  // first candidate, if any
  std::string error;  // non-empty when the campaign failed
};

struct SweepTargetResult {
  std::string target;
  std::optional<size_t> smallest_flagged_n;
  std::vector<SweepCampaignOutcome> campaigns;
  std::string error;  // non-empty when the target could not be analyzed
};

struct SweepReport {
  SweepPlan plan;
  std::uint64_t threshold_used = 0;
  std::vector<SweepTargetResult> results;
};

// Runs campaigns per target in ascending N until the first flag (or
// exhaustion), triages and classifies the first candidate per flagged
// campaign, and records the smallest flagged N. Per-campaign errors are
// recorded and the sweep continues. Targets may run in parallel workers.
SweepReport run_sweep(const ServiceRegistry& registry, const SweepPlan& plan);

Json sweep_to_json(const SweepReport& report);

// Deterministic per-campaign seed derived from the plan seed.
std::uint64_t derive_seed(std::uint64_t base, const std::string& target,
                          size_t seq_len);

}  // namespace spider
