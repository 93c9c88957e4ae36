// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include "spider/registry.hpp"

namespace spider::fixtures {

// Builtin registries:
//   "testbed"  the 7-service controller testbed (arp-cache, topology-path,
//              port-stats, inventories, benign controls)
//   "fig4"     the 7-service call-graph example used by the dependency
//              analysis (routing, vbng, host, packet, dhcp + two fillers)
ServiceRegistry builtin(const std::string& name);  // ConfigError on unknown

std::vector<std::string> builtin_names();

// Loads a registry fixture file: a JSON array of
//   {"id", "handles":[{"kind","subtype"?}], "calls":[ids],
//    "reads":[object ids], "writes":[...], "behavior": builtin name}
ServiceRegistry load_file(const std::string& path);
ServiceRegistry from_json(const Json& j);
Json to_json(const ServiceRegistry& registry);

// Resolves a --fixture argument: a builtin name or a file path.
ServiceRegistry resolve(const std::string& name_or_path);

// Deterministic normal-workload: ping-like ARP request/reply pairs among 4
// hosts and 2 switches, with periodic port statistics, stats queries, and
// path queries. The threshold baseline is computed from this workload.
std::vector<Event> normal_traffic_workload();

// Loads a workload: "normal-traffic" (builtin), a .jsonl OpenFlow-lite
// message file, or a .json event-array file.
std::vector<Event> resolve_workload(const std::string& name_or_path);

std::vector<Event> load_event_file(const std::string& path);
Json events_to_json(const std::vector<Event>& events);

inline constexpr const char* kDefaultFixture = "testbed";
inline constexpr const char* kDefaultWorkload = "normal-traffic";

}  // namespace spider::fixtures
