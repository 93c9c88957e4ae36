// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spider/event.hpp"
#include "spider/probe.hpp"
#include "spider/store.hpp"

namespace spider {

// Derived events may cascade through at most this many generations.
inline constexpr int kCascadeDepthCap = 8;

// One (kind, optional subtype) subscription entry.
struct EventTypeFilter {
  EventKind kind = EventKind::ConfigEvent;
  std::optional<EventSubtype> subtype;

  bool matches(const Event& ev) const {
    return ev.kind == kind && (!subtype || *subtype == ev.subtype);
  }

  auto operator<=>(const EventTypeFilter&) const = default;

  std::string to_string() const;
};

class HandlerContext;
using Handler = std::function<void(HandlerContext&, const Event&)>;

// Static description of a service: identity, subscriptions, declared call
// edges, per-handler read/write state-object sets, and its behavior.
// reads/writes are fixed at registration.
struct ServiceDescriptor {
  std::string id;
  std::vector<EventTypeFilter> handles;
  std::vector<std::string> calls;
  std::set<std::string> reads;
  std::set<std::string> writes;
  Handler handler;
  std::string behavior;  // builtin behavior name when fixture-loaded
};

// Immutable bundle of service descriptors. Dispatch order on
// multi-subscriber events is registration order.
class ServiceRegistry {
 public:
  // Returns the id. RegistrationError on duplicate.
  const std::string& register_service(ServiceDescriptor desc);

  const std::vector<ServiceDescriptor>& services() const { return services_; }
  bool has(const std::string& id) const;
  const ServiceDescriptor& find(const std::string& id) const;  // Error if absent

  // All declared (caller, callee) pairs, in registration order.
  std::vector<std::pair<std::string, std::string>> call_edges() const;

  // Service ids sorted lexicographically.
  std::vector<std::string> sorted_ids() const;

  // A registry containing only the named services, original registration
  // order preserved.
  ServiceRegistry restrict(const std::set<std::string>& ids) const;

 private:
  std::vector<ServiceDescriptor> services_;
  std::set<std::string> known_ids_;
};

struct HandlerError {
  std::string service_id;
  std::string message;
  bool operator==(const HandlerError&) const = default;
};

struct DispatchResult {
  std::vector<std::string> handled_by;   // invocation order
  std::vector<Event> derived_events;     // posting order
  std::vector<HandlerError> errors;      // recorded domain errors
};

// The capability a handler runs against: probes, checked store access, and
// posting derived events. Read operations require the object in the
// service's declared reads; writes require it in writes.
class HandlerContext {
 public:
  HandlerContext(const ServiceDescriptor& desc, StateStore& store,
                 TraceContext& trace, std::vector<Event>& posted)
      : desc_(desc), store_(store), trace_(trace), posted_(posted) {}

  const std::string& service_id() const { return desc_.id; }
  const std::set<std::string>& declared_reads() const { return desc_.reads; }
  const std::set<std::string>& declared_writes() const { return desc_.writes; }

  void probe(std::string_view branch_id) { trace_.probe(branch_id); }

  std::optional<std::string> get(const std::string& object,
                                 const std::string& key) {
    return readable(object).get(key);
  }

  size_t size(const std::string& object) { return readable(object).size(); }

  template <typename F>
  void scan(const std::string& object, F&& fn) {
    readable(object).scan(std::forward<F>(fn));
  }

  void put(const std::string& object, const std::string& key,
           std::string value) {
    writable(object).put(key, std::move(value));
  }

  bool erase(const std::string& object, const std::string& key) {
    return writable(object).erase(key);
  }

  // Derived events are dispatched after this handler returns.
  void post(Event ev) { posted_.push_back(std::move(ev)); }

 private:
  const StoreCollection& readable(const std::string& object);
  StoreCollection& writable(const std::string& object);

  const ServiceDescriptor& desc_;
  StateStore& store_;
  TraceContext& trace_;
  std::vector<Event>& posted_;
};

// A self-contained single-threaded controller: registry snapshot, state
// store, and trace context. Instances share nothing; campaigns create one
// each.
class ControllerInstance {
 public:
  explicit ControllerInstance(ServiceRegistry registry)
      : registry_(std::move(registry)) {}

  const ServiceRegistry& registry() const { return registry_; }
  StateStore& store() { return store_; }
  TraceContext& trace() { return trace_; }

  // Runs every matching handler exactly once against the shared store,
  // then dispatches derived events breadth-first up to the cascade depth
  // cap. Handler domain errors are recorded, not propagated; cascade
  // overflow throws DispatchError.
  DispatchResult dispatch(const Event& ev) {
    DispatchResult result;
    run_dispatch(ev, &result);
    return result;
  }

  // Same semantics without assembling a result (campaign hot path).
  void dispatch_quiet(const Event& ev) { run_dispatch(ev, nullptr); }

  // Empties every state-object collection. Registry structure unchanged.
  void reset_state() { store_.reset(); }

  // Parses an OpenFlow-lite message into the event it induces; the caller
  // dispatches it.
  Event ingest_message(const Json& msg) const;

 private:
  void run_dispatch(const Event& ev, DispatchResult* out);

  ServiceRegistry registry_;
  StateStore store_;
  TraceContext trace_;
};

}  // namespace spider
