// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/event.hpp"

#include <array>
#include <unordered_map>

namespace spider {

namespace {

struct KindInfo {
  EventKind kind;
  const char* name;
};

constexpr std::array<KindInfo, 5> kKinds{{
    {EventKind::HostEvent, "HOST_EVENT"},
    {EventKind::DeviceEvent, "DEVICE_EVENT"},
    {EventKind::LinkEvent, "LINK_EVENT"},
    {EventKind::PacketIn, "PACKET_IN"},
    {EventKind::ConfigEvent, "CONFIG_EVENT"},
}};

struct SubtypeInfo {
  EventSubtype subtype;
  EventKind kind;
  const char* name;
};

constexpr std::array<SubtypeInfo, 14> kSubtypes{{
    {EventSubtype::HostAdded, EventKind::HostEvent, "HOST_ADDED"},
    {EventSubtype::HostRemoved, EventKind::HostEvent, "HOST_REMOVED"},
    {EventSubtype::DeviceAdded, EventKind::DeviceEvent, "DEVICE_ADDED"},
    {EventSubtype::PortUpdated, EventKind::DeviceEvent, "PORT_UPDATED"},
    {EventSubtype::LinkAdded, EventKind::LinkEvent, "LINK_ADDED"},
    {EventSubtype::LinkRemoved, EventKind::LinkEvent, "LINK_REMOVED"},
    {EventSubtype::PacketArp, EventKind::PacketIn, "PACKET_ARP"},
    {EventSubtype::PacketIpv4, EventKind::PacketIn, "PACKET_IPV4"},
    {EventSubtype::PacketLldp, EventKind::PacketIn, "PACKET_LLDP"},
    {EventSubtype::PacketDhcp, EventKind::PacketIn, "PACKET_DHCP"},
    {EventSubtype::ConfigUpdated, EventKind::ConfigEvent, "CONFIG_UPDATED"},
    {EventSubtype::RouteUpdate, EventKind::ConfigEvent, "ROUTE_UPDATE"},
    {EventSubtype::PathQuery, EventKind::ConfigEvent, "PATH_QUERY"},
    {EventSubtype::StatsQuery, EventKind::ConfigEvent, "STATS_QUERY"},
}};

constexpr std::array<std::pair<EthType, const char*>, 4> kEthTypes{{
    {EthType::Arp, "arp"},
    {EthType::Ipv4, "ipv4"},
    {EthType::Lldp, "lldp"},
    {EthType::Dhcp, "dhcp"},
}};

const SubtypeInfo& subtype_info(EventSubtype s) {
  return kSubtypes[static_cast<size_t>(s)];
}

}  // namespace

const char* kind_name(EventKind k) {
  return kKinds[static_cast<size_t>(k)].name;
}

const char* subtype_name(EventSubtype s) { return subtype_info(s).name; }

const char* eth_type_name(EthType t) {
  return kEthTypes[static_cast<size_t>(t)].second;
}

EventKind kind_from_name(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  throw ParseError("kind: unknown event kind '" + name + "'");
}

EventSubtype subtype_from_name(const std::string& name) {
  for (const auto& s : kSubtypes) {
    if (name == s.name) return s.subtype;
  }
  throw ParseError("subtype: unknown event subtype '" + name + "'");
}

EthType eth_type_from_name(const std::string& name) {
  for (const auto& [t, n] : kEthTypes) {
    if (name == n) return t;
  }
  throw ParseError("eth_type: must be one of arp|ipv4|lldp|dhcp, got '" +
                   name + "'");
}

bool subtype_legal_for(EventKind k, EventSubtype s) {
  return subtype_info(s).kind == k;
}

const std::vector<EventSubtype>& subtypes_of(EventKind k) {
  static const auto* table = [] {
    auto* t = new std::array<std::vector<EventSubtype>, 5>{};
    for (const auto& s : kSubtypes) {
      (*t)[static_cast<size_t>(s.kind)].push_back(s.subtype);
    }
    return t;
  }();
  return (*table)[static_cast<size_t>(k)];
}

EventSubtype packet_subtype(EthType t) {
  switch (t) {
    case EthType::Arp:
      return EventSubtype::PacketArp;
    case EthType::Ipv4:
      return EventSubtype::PacketIpv4;
    case EthType::Lldp:
      return EventSubtype::PacketLldp;
    case EthType::Dhcp:
      return EventSubtype::PacketDhcp;
  }
  throw ParseError("eth_type: out of range");
}

std::string LinkPayload::link_id() const {
  return src_device + ":" + std::to_string(src_port) + ">" + dst_device +
         ":" + std::to_string(dst_port);
}

namespace {

Event make_checked(EventKind k, EventSubtype s, EventPayload p) {
  if (!subtype_legal_for(k, s)) {
    throw ParseError(std::string("subtype: ") + subtype_name(s) +
                     " is not legal for " + kind_name(k));
  }
  return Event{k, s, std::move(p)};
}

}  // namespace

Event make_host_event(EventSubtype s, HostPayload p) {
  return make_checked(EventKind::HostEvent, s, std::move(p));
}

Event make_device_event(EventSubtype s, DevicePayload p) {
  return make_checked(EventKind::DeviceEvent, s, std::move(p));
}

Event make_link_event(EventSubtype s, LinkPayload p) {
  return make_checked(EventKind::LinkEvent, s, std::move(p));
}

Event make_packet_in(PacketPayload p) {
  EventSubtype s = packet_subtype(p.eth_type);
  return Event{EventKind::PacketIn, s, std::move(p)};
}

Event make_config_event(EventSubtype s, ConfigPayload p) {
  return make_checked(EventKind::ConfigEvent, s, std::move(p));
}

Json event_to_json(const Event& ev) {
  Json j;
  j["kind"] = kind_name(ev.kind);
  j["subtype"] = subtype_name(ev.subtype);
  switch (ev.kind) {
    case EventKind::HostEvent: {
      const auto& p = std::get<HostPayload>(ev.payload);
      j["host"] = {{"id", p.id}, {"mac", p.mac}, {"ip", p.ip}};
      break;
    }
    case EventKind::DeviceEvent: {
      const auto& p = std::get<DevicePayload>(ev.payload);
      j["device"] = {{"id", p.id}, {"ports", p.ports}};
      break;
    }
    case EventKind::LinkEvent: {
      const auto& p = std::get<LinkPayload>(ev.payload);
      j["link"] = {{"src_device", p.src_device},
                   {"src_port", p.src_port},
                   {"dst_device", p.dst_device},
                   {"dst_port", p.dst_port}};
      break;
    }
    case EventKind::PacketIn: {
      const auto& p = std::get<PacketPayload>(ev.payload);
      j["in_port"] = p.in_port;
      j["eth_src"] = p.eth_src;
      j["eth_dst"] = p.eth_dst;
      j["eth_type"] = eth_type_name(p.eth_type);
      if (p.arp) {
        j["arp"] = {{"op", p.arp->op},
                    {"spa", p.arp->spa},
                    {"sha", p.arp->sha},
                    {"tpa", p.arp->tpa},
                    {"tha", p.arp->tha}};
      }
      break;
    }
    case EventKind::ConfigEvent: {
      const auto& p = std::get<ConfigPayload>(ev.payload);
      j["config"] = {{"key", p.key}, {"value", p.value}};
      break;
    }
  }
  return j;
}

namespace {

const Json& require(const Json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw ParseError(std::string(field) + ": missing");
  return *it;
}

std::string require_string(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_string()) throw ParseError(std::string(field) + ": must be a string");
  return v.get<std::string>();
}

int require_int(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number_integer())
    throw ParseError(std::string(field) + ": must be an integer");
  return v.get<int>();
}

}  // namespace

Event event_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("event: must be an object");
  EventKind kind = kind_from_name(require_string(j, "kind"));
  switch (kind) {
    case EventKind::HostEvent: {
      EventSubtype s = subtype_from_name(require_string(j, "subtype"));
      const Json& h = require(j, "host");
      HostPayload p{require_string(h, "id"), require_string(h, "mac"),
                    require_string(h, "ip")};
      return make_host_event(s, std::move(p));
    }
    case EventKind::DeviceEvent: {
      EventSubtype s = subtype_from_name(require_string(j, "subtype"));
      const Json& d = require(j, "device");
      DevicePayload p;
      p.id = require_string(d, "id");
      const Json& ports = require(d, "ports");
      if (!ports.is_array()) throw ParseError("ports: must be an array");
      for (const auto& x : ports) {
        if (!x.is_number_integer())
          throw ParseError("ports: entries must be integers");
        p.ports.push_back(x.get<int>());
      }
      return make_device_event(s, std::move(p));
    }
    case EventKind::LinkEvent: {
      EventSubtype s = subtype_from_name(require_string(j, "subtype"));
      const Json& l = require(j, "link");
      LinkPayload p{require_string(l, "src_device"),
                    require_int(l, "src_port"),
                    require_string(l, "dst_device"),
                    require_int(l, "dst_port")};
      return make_link_event(s, std::move(p));
    }
    case EventKind::PacketIn: {
      PacketPayload p;
      p.in_port = require_int(j, "in_port");
      p.eth_src = require_string(j, "eth_src");
      p.eth_dst = require_string(j, "eth_dst");
      p.eth_type = eth_type_from_name(require_string(j, "eth_type"));
      if (auto it = j.find("arp"); it != j.end() && !it->is_null()) {
        const Json& a = *it;
        p.arp = ArpBody{require_int(a, "op"), require_string(a, "spa"),
                        require_string(a, "sha"), require_string(a, "tpa"),
                        require_string(a, "tha")};
      }
      // The subtype of a packet-in is always derived from its payload class.
      return make_packet_in(std::move(p));
    }
    case EventKind::ConfigEvent: {
      EventSubtype s = subtype_from_name(require_string(j, "subtype"));
      const Json& c = require(j, "config");
      ConfigPayload p{require_string(c, "key"), require_string(c, "value")};
      return make_config_event(s, std::move(p));
    }
  }
  throw ParseError("kind: out of range");
}

}  // namespace spider
