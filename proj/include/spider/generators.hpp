// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "spider/choice.hpp"
#include "spider/depgraph.hpp"
#include "spider/event.hpp"

namespace spider {

// Inter-event bookkeeping shared by the constraint-aware generators and
// the validity checker. Updated as events are emitted / validated; cleared
// between decodes.
struct GeneratorState {
  // Insertion-ordered for deterministic index selection.
  std::vector<std::string> live_hosts;
  std::vector<std::string> live_links;
  std::vector<std::string> live_devices;
  std::vector<std::pair<std::string, std::string>> arp_known;  // (ip, mac)

  std::unordered_set<std::string> host_index;
  std::unordered_set<std::string> link_index;
  std::unordered_set<std::string> device_index;
  std::unordered_set<std::string> arp_index;

  void clear();
  void add_host(const std::string& id);
  void remove_host(const std::string& id);
  void add_device(const std::string& id);
  void add_link(const std::string& link_id);
  void remove_link(const std::string& link_id);
  void learn_arp(const std::string& ip, const std::string& mac);
  bool host_live(const std::string& id) const { return host_index.count(id); }
  bool link_live(const std::string& id) const { return link_index.count(id); }
  bool device_live(const std::string& id) const {
    return device_index.count(id);
  }
};

enum class GenMode { Full, GenericOnly };

// Constraint-aware generation for the critical event kinds (all five
// testbed kinds ship constraint-aware generators). The emitted event
// always satisfies intra- and inter-event constraints for the given state,
// and the state is updated. When a chosen subtype is infeasible (e.g.
// removal with an empty live set) the generator falls back to a feasible
// subtype using the next choice.
Event constrained_generate(EventKind kind,
                           std::optional<EventSubtype> forced_subtype,
                           ChoiceStream& stream, GeneratorState& state);

// Type-based generation of one event of the given kind. A forced subtype
// (from a filtered subscription entry) is coerced structurally; everything
// else is sampled purely from the type schema and may be semantically
// invalid.
Event generic_generate(EventKind kind, std::optional<EventSubtype> forced_subtype,
                       ChoiceStream& stream);

// Decodes exactly `n` events from the stream. The type of each event is
// chosen uniformly from E_S with one choice per position; choices are
// consumed strictly left-to-right, so the byte content fully determines
// the sequence and any longer decode of the same stream extends it.
std::vector<Event> generate_sequence(const EventTypeSet& types, size_t n,
                                     ChoiceStream& stream,
                                     GeneratorState& state, GenMode mode);

// nullopt = ok; otherwise the first violated constraint. When the event is
// valid its effects are folded into the replay state.
std::optional<std::string> validate_event(const Event& ev,
                                          GeneratorState& replay_state);

struct EventVerdict {
  size_t index = 0;
  std::optional<std::string> violation;  // nullopt = ok
};

// Folds validate_event over a sequence, rebuilding the replay state.
std::vector<EventVerdict> validate_sequence(const std::vector<Event>& events);

// Sender IPs drawn fresh by the ARP generator live in this /16.
inline constexpr const char* kArpFreshPrefix = "10.77.";

}  // namespace spider
