// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "spider/errors.hpp"

namespace spider {

// Hit counters saturate here instead of wrapping.
inline constexpr std::uint64_t kCounterSaturation =
    9223372036854775807ULL;  // 2^63 - 1

// Per-branch hit counts plus total execution-path length for one event
// handling. path_length is maintained as the sum of all branch counts.
struct CostTrace {
  std::map<std::string, std::uint64_t> branch_counts;
  std::uint64_t path_length = 0;

  bool operator==(const CostTrace&) const = default;
  nlohmann::json to_json() const;
};

// Highest hit count ever observed per branch over a campaign. Entries are
// monotonically non-decreasing.
struct MaxCounts {
  std::map<std::string, std::uint64_t> entries;

  // Element-wise max against the trace. Returns true iff any entry
  // increased or was created.
  bool merge(const CostTrace& trace);

  bool operator==(const MaxCounts&) const = default;
  nlohmann::json to_json() const;
};

// Functional form of MaxCounts::merge.
std::pair<MaxCounts, bool> merge_max(const MaxCounts& max,
                                     const CostTrace& trace);

// Branch instrumentation sink. One context per controller instance /
// campaign; not shared across threads.
//
// Modes:
//   Disabled  - probes are silently dropped (default; calibration of
//               non-traced dispatches, priming events).
//   Armed     - probes outside an active trace are a usage error.
//   Recording - an active trace is collecting hits.
class TraceContext {
 public:
  enum class Mode { Disabled, Armed, Recording };

  Mode mode() const { return mode_; }
  void disable() { check_not_recording("disable"); mode_ = Mode::Disabled; }
  void arm() { check_not_recording("arm"); mode_ = Mode::Armed; }

  // Starts a fresh empty trace. Nested begin is a usage error.
  void begin_trace();

  // Returns the finished trace and restores the mode active before
  // begin_trace. Usage error when no trace is active.
  CostTrace end_trace();

  void probe(std::string_view branch_id) {
    if (mode_ == Mode::Recording) {
      auto& c = current_.branch_counts[std::string(branch_id)];
      if (c < kCounterSaturation) ++c;
      if (current_.path_length < kCounterSaturation) ++current_.path_length;
      return;
    }
    if (mode_ == Mode::Armed) {
      throw UsageError("probe: no active trace");
    }
    // Disabled: dropped.
  }

 private:
  void check_not_recording(const char* op) {
    if (mode_ == Mode::Recording)
      throw UsageError(std::string(op) + ": trace in progress");
  }

  Mode mode_ = Mode::Disabled;
  Mode resume_ = Mode::Disabled;
  CostTrace current_;
};

}  // namespace spider
