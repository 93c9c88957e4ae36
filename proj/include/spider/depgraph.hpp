// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <set>
#include <string>

#include "spider/registry.hpp"

namespace spider {

// Result of the read/write fixpoint for one target service.
struct DependencySet {
  std::string target;
  std::set<std::string> members;       // always contains target
  std::set<std::string> read_closure;  // the final R of the fixpoint
};

struct EventTypeSet {
  // Sorted, deduplicated union of handled_events over the dependency set.
  std::vector<EventTypeFilter> types;

  bool empty() const { return types.empty(); }
};

// Services connected to the target in the undirected closure of the call
// graph (callers and callees, transitively), including the target.
std::set<std::string> reach_set(const ServiceRegistry& registry,
                                const std::string& target);

// The service dependency set: starting from the state objects read by the
// target's handlers, repeatedly admit any reachable service whose handler
// writes intersect the read closure, folding in its reads, until stable.
// Iteration is in sorted id order; the fixpoint is order-independent.
DependencySet dependency_set(const ServiceRegistry& registry,
                             const std::string& target);

// Event types covering all handlers registered by dependency-set members.
EventTypeSet event_types_for(const ServiceRegistry& registry,
                             const DependencySet& dep);

Json dependency_to_json(const ServiceRegistry& registry,
                        const DependencySet& dep);

}  // namespace spider
