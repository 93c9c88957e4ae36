// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/registry.hpp"

#include <deque>

#include "spider/openflow.hpp"

namespace spider {

std::string EventTypeFilter::to_string() const {
  std::string s = kind_name(kind);
  if (subtype) {
    s += "/";
    s += subtype_name(*subtype);
  }
  return s;
}

const std::string& ServiceRegistry::register_service(ServiceDescriptor desc) {
  if (desc.id.empty()) throw RegistrationError("service id must be non-empty");
  if (known_ids_.count(desc.id)) {
    throw RegistrationError("duplicate service id '" + desc.id + "'");
  }
  for (const auto& f : desc.handles) {
    if (f.subtype && !subtype_legal_for(f.kind, *f.subtype)) {
      throw RegistrationError("service '" + desc.id +
                              "' subscribes illegal subtype " +
                              f.to_string());
    }
  }
  known_ids_.insert(desc.id);
  services_.push_back(std::move(desc));
  return services_.back().id;
}

bool ServiceRegistry::has(const std::string& id) const {
  return known_ids_.count(id) != 0;
}

const ServiceDescriptor& ServiceRegistry::find(const std::string& id) const {
  for (const auto& s : services_) {
    if (s.id == id) return s;
  }
  throw Error("unknown service '" + id + "'");
}

std::vector<std::pair<std::string, std::string>> ServiceRegistry::call_edges()
    const {
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& s : services_) {
    for (const auto& callee : s.calls) edges.emplace_back(s.id, callee);
  }
  return edges;
}

std::vector<std::string> ServiceRegistry::sorted_ids() const {
  return {known_ids_.begin(), known_ids_.end()};
}

ServiceRegistry ServiceRegistry::restrict(
    const std::set<std::string>& ids) const {
  ServiceRegistry out;
  for (const auto& s : services_) {
    if (ids.count(s.id)) out.register_service(s);
  }
  return out;
}

const StoreCollection& HandlerContext::readable(const std::string& object) {
  if (!desc_.reads.count(object)) {
    throw StoreAccessError("service '" + desc_.id + "' read of undeclared state object '" +
                           object + "'");
  }
  return store_.object(object);
}

StoreCollection& HandlerContext::writable(const std::string& object) {
  if (!desc_.writes.count(object)) {
    throw StoreAccessError("service '" + desc_.id + "' write of undeclared state object '" +
                           object + "'");
  }
  return store_.object(object);
}

void ControllerInstance::run_dispatch(const Event& root, DispatchResult* out) {
  struct Pending {
    Event ev;
    int depth;
  };
  std::deque<Pending> queue;
  queue.push_back({root, 0});

  std::vector<Event> posted;
  while (!queue.empty()) {
    Pending cur = std::move(queue.front());
    queue.pop_front();

    for (const auto& svc : registry_.services()) {
      bool matches = false;
      for (const auto& f : svc.handles) {
        if (f.matches(cur.ev)) {
          matches = true;
          break;
        }
      }
      if (!matches) continue;

      posted.clear();
      HandlerContext ctx(svc, store_, trace_, posted);
      try {
        svc.handler(ctx, cur.ev);
      } catch (const DomainError& e) {
        if (out) out->errors.push_back({svc.id, e.what()});
        continue;  // recorded; posts of a failed handler are dropped
      }
      if (out) out->handled_by.push_back(svc.id);
      for (auto& ev : posted) {
        if (cur.depth + 1 > kCascadeDepthCap) {
          throw DispatchError("cascade depth cap (" +
                              std::to_string(kCascadeDepthCap) +
                              ") exceeded by service '" + svc.id + "'");
        }
        if (out) out->derived_events.push_back(ev);
        queue.push_back({std::move(ev), cur.depth + 1});
      }
    }
  }
}

Event ControllerInstance::ingest_message(const Json& msg) const {
  return openflow::parse_packet_in(msg);
}

}  // namespace spider
