// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spider/errors.hpp"

namespace spider {

using Json = nlohmann::json;

enum class EventKind {
  HostEvent,
  DeviceEvent,
  LinkEvent,
  PacketIn,
  ConfigEvent,
};

enum class EventSubtype {
  HostAdded,
  HostRemoved,
  DeviceAdded,
  PortUpdated,
  LinkAdded,
  LinkRemoved,
  PacketArp,
  PacketIpv4,
  PacketLldp,
  PacketDhcp,
  ConfigUpdated,
  RouteUpdate,
  PathQuery,
  StatsQuery,
};

enum class EthType { Arp, Ipv4, Lldp, Dhcp };

const char* kind_name(EventKind k);
const char* subtype_name(EventSubtype s);
const char* eth_type_name(EthType t);
EventKind kind_from_name(const std::string& name);       // ParseError
EventSubtype subtype_from_name(const std::string& name); // ParseError
EthType eth_type_from_name(const std::string& name);     // ParseError

// True iff `s` is one of the actions defined for kind `k`.
bool subtype_legal_for(EventKind k, EventSubtype s);

// All legal subtypes of a kind, in enum order.
const std::vector<EventSubtype>& subtypes_of(EventKind k);

// The packet-in subtype induced by an ethernet payload class.
EventSubtype packet_subtype(EthType t);

struct HostPayload {
  std::string id;
  std::string mac;
  std::string ip;
  bool operator==(const HostPayload&) const = default;
};

struct DevicePayload {
  std::string id;
  std::vector<int> ports;
  bool operator==(const DevicePayload&) const = default;
};

struct LinkPayload {
  std::string src_device;
  int src_port = 0;
  std::string dst_device;
  int dst_port = 0;
  bool operator==(const LinkPayload&) const = default;

  // Canonical identity of a (directed) link, used for liveness tracking.
  std::string link_id() const;
};

struct ArpBody {
  int op = 0;  // 1 = request, 2 = reply
  std::string spa;
  std::string sha;
  std::string tpa;
  std::string tha;
  bool operator==(const ArpBody&) const = default;
};

struct PacketPayload {
  int in_port = 0;
  std::string eth_src;
  std::string eth_dst;
  EthType eth_type = EthType::Ipv4;
  std::optional<ArpBody> arp;
  bool operator==(const PacketPayload&) const = default;
};

struct ConfigPayload {
  std::string key;
  std::string value;
  bool operator==(const ConfigPayload&) const = default;
};

using EventPayload = std::variant<HostPayload, DevicePayload, LinkPayload,
                                  PacketPayload, ConfigPayload>;

// The unit of fuzzer input sequences. Construction enforces that the
// subtype is legal for the kind; semantic validity (inter-event rules,
// ARP body consistency) is checked separately by validate_event so that
// the type-based generator can still produce semantically invalid events.
struct Event {
  EventKind kind = EventKind::ConfigEvent;
  EventSubtype subtype = EventSubtype::ConfigUpdated;
  EventPayload payload = ConfigPayload{};

  bool operator==(const Event&) const = default;
};

Event make_host_event(EventSubtype s, HostPayload p);
Event make_device_event(EventSubtype s, DevicePayload p);
Event make_link_event(EventSubtype s, LinkPayload p);
// Subtype is derived from the payload's ethernet class.
Event make_packet_in(PacketPayload p);
Event make_config_event(EventSubtype s, ConfigPayload p);

Json event_to_json(const Event& ev);
Event event_from_json(const Json& j);  // ParseError naming the bad field

}  // namespace spider
