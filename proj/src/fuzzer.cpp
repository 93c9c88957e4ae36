// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/fuzzer.hpp"

#include <chrono>

#include "spider/mutate.hpp"

namespace spider {

void CampaignConfig::validate() const {
  if (target.empty()) throw ConfigError("config: target must be set");
  if (seq_len < 1) throw ConfigError("config: seq-len must be >= 1");
  if (!budget_execs && !budget_secs)
    throw ConfigError("config: at least one budget must be set");
  if (budget_execs && *budget_execs < 1)
    throw ConfigError("config: execution budget must be >= 1");
  if (budget_secs && *budget_secs <= 0)
    throw ConfigError("config: time budget must be positive");
  if (t_max == 0) throw ConfigError("config: t_max must be > 0");
}

CostTrace execute_sequence(ControllerInstance& instance,
                           const std::vector<Event>& events) {
  if (events.empty()) throw UsageError("execute_sequence: empty sequence");
  instance.reset_state();
  instance.trace().disable();
  try {
    for (size_t i = 0; i + 1 < events.size(); ++i) {
      instance.dispatch_quiet(events[i]);
    }
    instance.trace().begin_trace();
    instance.dispatch_quiet(events.back());
    return instance.trace().end_trace();
  } catch (const DispatchError& e) {
    if (instance.trace().mode() == TraceContext::Mode::Recording) {
      instance.trace().end_trace();
    }
    throw ExecutionError(e.what());
  }
}

DecodedInput decode_input(const EventTypeSet& types, size_t seq_len,
                          GenMode mode, std::vector<std::uint8_t> bytes,
                          std::mt19937_64* rng) {
  ChoiceStream stream(std::move(bytes), ChoiceStream::Exhaustion::Append, rng);
  GeneratorState state;
  DecodedInput out;
  out.events = generate_sequence(types, seq_len, stream, state, mode);
  out.stream = stream.consumed_bytes();
  return out;
}

std::vector<Event> decode_for_replay(const EventTypeSet& types,
                                     size_t seq_len, GenMode mode,
                                     const std::vector<std::uint8_t>& bytes) {
  ChoiceStream stream(bytes, ChoiceStream::Exhaustion::Fail);
  GeneratorState state;
  return generate_sequence(types, seq_len, stream, state, mode);
}

std::pair<DependencySet, EventTypeSet> campaign_scope(
    const ServiceRegistry& registry, const std::string& target) {
  if (!registry.has(target))
    throw ConfigError("unknown target service '" + target + "'");
  DependencySet dep = dependency_set(registry, target);
  EventTypeSet types = event_types_for(registry, dep);
  if (registry.find(target).handles.empty() || types.empty()) {
    throw ConfigError("target not analyzable");
  }
  return {std::move(dep), std::move(types)};
}

FuzzReport run_campaign(const ServiceRegistry& registry,
                        const CampaignConfig& config,
                        const ExecObserver& observer) {
  config.validate();
  auto [dep, types] = campaign_scope(registry, config.target);

  // Only handlers of dependency-set members run during the campaign.
  ControllerInstance instance(registry.restrict(dep.members));
  std::mt19937_64 rng(config.seed);

  FuzzReport report;
  report.config = config;

  const auto started = std::chrono::steady_clock::now();
  auto budget_left = [&]() {
    if (config.budget_execs && report.executions >= *config.budget_execs)
      return false;
    if (config.budget_secs) {
      std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - started;
      if (elapsed.count() >= *config.budget_secs) return false;
    }
    return true;
  };

  // One execution: decode, run, flag or merge. Returns the journal record.
  auto run_one = [&](std::vector<std::uint8_t> bytes,
                     std::optional<size_t> parent) {
    DecodedInput input =
        decode_input(types, config.seq_len, config.mode, std::move(bytes), &rng);
    ExecRecord rec;
    rec.execution = report.executions;
    CostTrace trace;
    try {
      trace = execute_sequence(instance, input.events);
    } catch (const ExecutionError&) {
      ++report.execution_errors;
      ++report.executions;
      rec.error = true;
      if (observer) observer(rec);
      return rec;
    }
    rec.path_length = trace.path_length;
    if (trace.path_length > config.t_max) {
      rec.flagged = true;
      Flag flag;
      flag.stream = input.stream;
      flag.path_length = trace.path_length;
      flag.last_trace = std::move(trace);
      flag.verdicts = validate_sequence(input.events);
      flag.execution = report.executions;
      report.flags.push_back(std::move(flag));
    } else {
      rec.max_changed = report.max_counts.merge(trace);
      if (rec.max_changed) {
        report.max_counts_updates.push_back(report.executions);
        report.queue.push_back(QueueEntry{std::move(input.stream), parent,
                                          report.executions,
                                          trace.path_length});
        rec.added_to_queue = true;
      } else {
        ++report.discarded;
      }
    }
    ++report.executions;
    if (observer) observer(rec);
    return rec;
  };

  // Seed input: decoded from an empty stream, so its whole genotype is
  // drawn from the campaign RNG. It always enters the queue; maxCounts is
  // initialized from its execution, and it is checked against t_max like
  // any other input.
  {
    DecodedInput seed = decode_input(types, config.seq_len, config.mode, {}, &rng);
    ExecRecord rec;
    rec.execution = 0;
    bool seeded = false;
    try {
      CostTrace trace = execute_sequence(instance, seed.events);
      rec.path_length = trace.path_length;
      if (trace.path_length > config.t_max) {
        rec.flagged = true;
        Flag flag;
        flag.stream = seed.stream;
        flag.path_length = trace.path_length;
        flag.last_trace = trace;
        flag.verdicts = validate_sequence(seed.events);
        flag.execution = 0;
        report.flags.push_back(std::move(flag));
      }
      rec.max_changed = report.max_counts.merge(trace);
      if (rec.max_changed) report.max_counts_updates.push_back(0);
      report.queue.push_back(QueueEntry{std::move(seed.stream), std::nullopt,
                                        0, trace.path_length});
      rec.added_to_queue = true;
      seeded = true;
    } catch (const ExecutionError&) {
      ++report.execution_errors;
      rec.error = true;
    }
    ++report.executions;
    if (observer) observer(rec);
    if (!seeded) {
      // Without a queue there is nothing to mutate; re-seed until a seed
      // executes or the budget runs out.
      while (budget_left() && report.queue.empty()) {
        run_one({}, std::nullopt);
      }
    }
  }

  while (budget_left() && !report.queue.empty()) {
    size_t pick = static_cast<size_t>(rng() % report.queue.size());
    std::vector<std::uint8_t> child = mutate(report.queue[pick].stream, rng);
    run_one(std::move(child), pick);
  }

  report.queue_size = report.queue.size();
  return report;
}

TriageResult triage(const Flag& flag) {
  TriageResult out;
  for (const auto& v : flag.verdicts) {
    if (v.violation) out.violations.push_back(v);
  }
  out.true_positive_candidate = out.violations.empty();
  return out;
}

}  // namespace spider
