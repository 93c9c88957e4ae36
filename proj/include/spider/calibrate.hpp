// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spider/fuzzer.hpp"

namespace spider {

// Baseline samples exclude this many leading events (initialization phase)
// unless overridden.
inline constexpr size_t kDefaultInitExclusion = 50;

struct BaselineSample {
  EventKind kind = EventKind::ConfigEvent;
  std::uint64_t path_length = 0;
};

// Dispatches the workload from reset state, tracing every event; returns
// per-event samples with the initialization prefix excluded.
// CalibrationError("no samples") when nothing remains.
std::vector<BaselineSample> run_baseline(
    ControllerInstance& instance, const std::vector<Event>& workload,
    size_t init_exclusion = kDefaultInitExclusion);

// t_max = ceil(mean + 3 * population standard deviation). Needs >= 2
// samples.
std::uint64_t compute_threshold(const std::vector<std::uint64_t>& samples);

enum class ComplexityClass { Constant, Linear, Exponential };
const char* complexity_name(ComplexityClass c);

struct Measurement {
  size_t prefix_len = 0;  // L: events re-executed (L-1 priming + trigger)
  std::uint64_t path_length = 0;
};

struct ComplexityVerdict {
  ComplexityClass cls = ComplexityClass::Constant;
  // Normalized residual (RMSE / mean) per candidate model; absent when the
  // model is infeasible (exponential requires positive growth).
  std::map<std::string, double> fit_scores;
  std::vector<Measurement> measurements;
};

// Least-squares fits of constant, linear, and exponential models over the
// measurements; the class with the smallest normalized residual wins, ties
// broken toward the simpler class. Needs >= 4 points.
ComplexityVerdict fit_complexity(const std::vector<Measurement>& measurements);

// Default probe lengths {ceil(N/4), ceil(N/2), ceil(3N/4), N}, deduplicated.
std::vector<size_t> default_probe_lengths(size_t seq_len);

// Re-executes the flag's first L-1 events plus its final event for each
// probe length and fits the cost curve. nullopt when any re-execution
// fails.
std::optional<ComplexityVerdict> classify_complexity(
    const ServiceRegistry& registry, const CampaignConfig& config,
    const Flag& flag, std::vector<size_t> probe_lengths = {});

// A directed multigraph over device ids. Parallel edges are distinct.
struct Multigraph {
  std::vector<std::string> devices;
  std::vector<std::pair<std::string, std::string>> edges;  // src -> dst

  void add_device(const std::string& id);
  void add_edge(const std::string& src, const std::string& dst);
  bool has_parallel_edges() const;

  // The topology left by a decoded event sequence (LINK_ADDED/REMOVED
  // folded in order).
  static Multigraph from_events(const std::vector<Event>& events);
};

// Exact count of simple paths (no repeated device) from src to dst,
// counting parallel edges as distinct, by exhaustive depth-first
// enumeration. 0 when disconnected or when either endpoint is unknown.
std::uint64_t count_simple_paths(const Multigraph& g, const std::string& src,
                                 const std::string& dst);

}  // namespace spider
