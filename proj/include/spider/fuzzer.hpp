// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spider/depgraph.hpp"
#include "spider/generators.hpp"
#include "spider/probe.hpp"
#include "spider/registry.hpp"

namespace spider {

struct CampaignConfig {
  std::string fixture = "testbed";  // name or path, echoed in reports
  std::string target;
  size_t seq_len = 50;                        // N
  std::optional<std::uint64_t> budget_execs;  // B (executions)
  std::optional<double> budget_secs;          // B (wall clock)
  std::uint64_t t_max = 0;
  std::uint64_t seed = 1;
  GenMode mode = GenMode::Full;

  // ConfigError unless N >= 1, t_max > 0, and at least one budget is set.
  void validate() const;
};

// A retained queue input: its complete choice stream plus bookkeeping.
struct QueueEntry {
  std::vector<std::uint8_t> stream;
  std::optional<size_t> parent;   // index into the queue
  std::uint64_t discovered_at = 0;  // execution index
  std::uint64_t last_path_length = 0;
};

// A potential stateful performance issue: the last event's path length
// exceeded t_max. Validity verdicts are computed at flag time; decoded
// events are reproduced from the stream on demand.
struct Flag {
  std::vector<std::uint8_t> stream;
  std::uint64_t path_length = 0;
  CostTrace last_trace;
  std::vector<EventVerdict> verdicts;
  std::uint64_t execution = 0;
};

struct TriageResult {
  bool true_positive_candidate = false;
  std::vector<EventVerdict> violations;  // only entries with violations
};

struct FuzzReport {
  CampaignConfig config;
  std::uint64_t executions = 0;
  std::uint64_t discarded = 0;         // no maxCounts change
  std::uint64_t execution_errors = 0;  // cascade overflow etc.
  size_t queue_size = 0;
  std::vector<QueueEntry> queue;
  std::vector<Flag> flags;
  MaxCounts max_counts;
  std::vector<std::uint64_t> max_counts_updates;  // execution indices
};

// Per-execution journal record, for tests and tracing.
struct ExecRecord {
  std::uint64_t execution = 0;
  std::uint64_t path_length = 0;
  bool flagged = false;
  bool max_changed = false;
  bool added_to_queue = false;
  bool error = false;
};
using ExecObserver = std::function<void(const ExecRecord&)>;

// Dispatches the sequence against a fresh state: events 1..N-1 untraced
// (probes disabled), then the last event traced. Returns the last event's
// trace. Cascade overflow raises ExecutionError.
CostTrace execute_sequence(ControllerInstance& instance,
                           const std::vector<Event>& events);

// Decodes a stream into exactly config.seq_len events over E_S. The
// returned stream bytes are the consumed prefix with any appended bytes
// folded in (a complete, replayable genotype).
struct DecodedInput {
  std::vector<Event> events;
  std::vector<std::uint8_t> stream;
};
DecodedInput decode_input(const EventTypeSet& types, size_t seq_len,
                          GenMode mode, std::vector<std::uint8_t> bytes,
                          std::mt19937_64* rng);

// Replay decoding: the stream must already be complete (ReplayError
// otherwise).
std::vector<Event> decode_for_replay(const EventTypeSet& types,
                                     size_t seq_len, GenMode mode,
                                     const std::vector<std::uint8_t>& bytes);

// The semantic performance fuzzing loop: seed the queue with one random
// stream, initialize maxCounts from its execution, then repeatedly pick a
// uniform-random queue entry, mutate, decode, execute; flag inputs whose
// last-event path length exceeds t_max, otherwise retain them iff they
// raise maxCounts. Stops when a budget expires.
FuzzReport run_campaign(const ServiceRegistry& registry,
                        const CampaignConfig& config,
                        const ExecObserver& observer = nullptr);

// Derives a triage verdict from a flag's recorded per-event verdicts.
TriageResult triage(const Flag& flag);

// The dependency set and event vocabulary a campaign on `target` uses.
// ConfigError("target not analyzable") when the vocabulary is empty.
std::pair<DependencySet, EventTypeSet> campaign_scope(
    const ServiceRegistry& registry, const std::string& target);

}  // namespace spider
