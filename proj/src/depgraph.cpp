// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/depgraph.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace spider {

std::set<std::string> reach_set(const ServiceRegistry& registry,
                                const std::string& target) {
  if (!registry.has(target)) throw Error("unknown service '" + target + "'");

  std::map<std::string, std::set<std::string>> undirected;
  for (const auto& [caller, callee] : registry.call_edges()) {
    if (!registry.has(callee)) continue;  // dangling declared edge
    undirected[caller].insert(callee);
    undirected[callee].insert(caller);
  }

  std::set<std::string> seen{target};
  std::deque<std::string> frontier{target};
  while (!frontier.empty()) {
    std::string cur = std::move(frontier.front());
    frontier.pop_front();
    auto it = undirected.find(cur);
    if (it == undirected.end()) continue;
    for (const auto& next : it->second) {
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return seen;
}

DependencySet dependency_set(const ServiceRegistry& registry,
                             const std::string& target) {
  const std::set<std::string> reach = reach_set(registry, target);

  DependencySet dep;
  dep.target = target;
  dep.members.insert(target);
  dep.read_closure = registry.find(target).reads;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& id : reach) {  // std::set iterates in sorted order
      if (dep.members.count(id)) continue;
      const ServiceDescriptor& svc = registry.find(id);
      bool intersects =
          std::any_of(svc.writes.begin(), svc.writes.end(),
                      [&](const std::string& w) {
                        return dep.read_closure.count(w) != 0;
                      });
      if (!intersects) continue;
      dep.members.insert(id);
      dep.read_closure.insert(svc.reads.begin(), svc.reads.end());
      changed = true;
    }
  }
  return dep;
}

EventTypeSet event_types_for(const ServiceRegistry& registry,
                             const DependencySet& dep) {
  std::set<EventTypeFilter> types;
  for (const auto& id : dep.members) {
    const ServiceDescriptor& svc = registry.find(id);
    types.insert(svc.handles.begin(), svc.handles.end());
  }
  EventTypeSet out;
  out.types.assign(types.begin(), types.end());
  return out;
}

Json dependency_to_json(const ServiceRegistry& registry,
                        const DependencySet& dep) {
  const auto reach = reach_set(registry, dep.target);
  const auto types = event_types_for(registry, dep);
  Json type_names = Json::array();
  for (const auto& t : types.types) type_names.push_back(t.to_string());
  return {{"target", dep.target},
          {"dependency_set",
           {{"members",
             std::vector<std::string>(dep.members.begin(), dep.members.end())},
            {"read_closure", std::vector<std::string>(dep.read_closure.begin(),
                                                      dep.read_closure.end())},
            {"size", dep.members.size()}}},
          {"reach_set",
           {{"members", std::vector<std::string>(reach.begin(), reach.end())},
            {"size", reach.size()}}},
          {"event_types", type_names}};
}

}  // namespace spider
