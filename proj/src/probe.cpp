// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/probe.hpp"

namespace spider {

nlohmann::json CostTrace::to_json() const {
  nlohmann::json branches = nlohmann::json::object();
  for (const auto& [id, count] : branch_counts) branches[id] = count;
  return {{"path_length", path_length}, {"branches", branches}};
}

bool MaxCounts::merge(const CostTrace& trace) {
  bool changed = false;
  for (const auto& [id, count] : trace.branch_counts) {
    auto it = entries.find(id);
    if (it == entries.end()) {
      entries.emplace(id, count);
      changed = true;
    } else if (count > it->second) {
      it->second = count;
      changed = true;
    }
  }
  return changed;
}

nlohmann::json MaxCounts::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, count] : entries) j[id] = count;
  return j;
}

std::pair<MaxCounts, bool> merge_max(const MaxCounts& max,
                                     const CostTrace& trace) {
  MaxCounts out = max;
  bool changed = out.merge(trace);
  return {std::move(out), changed};
}

void TraceContext::begin_trace() {
  if (mode_ == Mode::Recording) throw UsageError("begin_trace: trace already active");
  resume_ = mode_;
  current_ = CostTrace{};
  mode_ = Mode::Recording;
}

CostTrace TraceContext::end_trace() {
  if (mode_ != Mode::Recording) throw UsageError("end_trace: no active trace");
  mode_ = resume_;
  CostTrace out = std::move(current_);
  current_ = CostTrace{};
  return out;
}

}  // namespace spider
