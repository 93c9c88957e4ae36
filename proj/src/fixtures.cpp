// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/fixtures.hpp"

#include <fstream>

#include "spider/behaviors.hpp"
#include "spider/openflow.hpp"

namespace spider::fixtures {

namespace {

ServiceDescriptor builtin_service(std::string id,
                                  std::vector<EventTypeFilter> handles,
                                  std::vector<std::string> calls,
                                  std::set<std::string> reads,
                                  std::set<std::string> writes,
                                  const std::string& behavior) {
  ServiceDescriptor d;
  d.id = std::move(id);
  d.handles = std::move(handles);
  d.calls = std::move(calls);
  d.reads = std::move(reads);
  d.writes = std::move(writes);
  d.behavior = behavior;
  d.handler = behaviors::make(behavior);
  return d;
}

ServiceRegistry make_testbed() {
  using behaviors::kArpStore;
  using behaviors::kCounterStore;
  using behaviors::kDeviceStore;
  using behaviors::kHostStore;
  using behaviors::kLinkStore;
  using behaviors::kPortSamples;

  ServiceRegistry r;
  r.register_service(builtin_service(
      "host-inventory", {{EventKind::HostEvent, std::nullopt}}, {},
      {kHostStore}, {kHostStore}, "host-inventory"));
  r.register_service(builtin_service(
      "device-inventory", {{EventKind::DeviceEvent, std::nullopt}}, {},
      {kDeviceStore}, {kDeviceStore}, "device-inventory"));
  r.register_service(builtin_service(
      "arp-cache", {{EventKind::PacketIn, EventSubtype::PacketArp}}, {},
      {kArpStore}, {kArpStore}, "arp-cache"));
  r.register_service(builtin_service(
      "topology-path",
      {{EventKind::LinkEvent, std::nullopt},
       {EventKind::ConfigEvent, EventSubtype::PathQuery}},
      {}, {kLinkStore}, {kLinkStore}, "topology-path"));
  r.register_service(builtin_service(
      "port-stats",
      {{EventKind::DeviceEvent, std::nullopt},
       {EventKind::ConfigEvent, EventSubtype::StatsQuery}},
      {}, {kPortSamples}, {kPortSamples}, "port-stats"));
  r.register_service(builtin_service(
      "benign-echo", {{EventKind::ConfigEvent, std::nullopt}}, {}, {}, {},
      "benign-echo"));
  r.register_service(builtin_service(
      "benign-counter", {{EventKind::ConfigEvent, std::nullopt}}, {},
      {kCounterStore}, {kCounterStore}, "benign-counter"));
  return r;
}

// The worked dependency-analysis example: routing reads host state, hosts
// are written by the host service and by dhcp; vbng only reads host state
// (its read-only getHosts call), packet touches only its own store. Two
// filler services form a separate call-graph component.
ServiceRegistry make_fig4() {
  ServiceRegistry r;
  r.register_service(builtin_service(
      "routing", {{EventKind::ConfigEvent, EventSubtype::RouteUpdate}},
      {"host"}, {"hostStore", "routeStore"}, {"routeStore"}, "store-touch"));
  r.register_service(builtin_service(
      "vbng", {{EventKind::ConfigEvent, EventSubtype::ConfigUpdated}},
      {"host"}, {"hostStore"}, {"vbngStore"}, "store-touch"));
  r.register_service(builtin_service(
      "host", {{EventKind::HostEvent, std::nullopt}}, {"packet"},
      {"hostStore"}, {"hostStore"}, "store-touch"));
  r.register_service(builtin_service(
      "packet", {{EventKind::DeviceEvent, std::nullopt}}, {},
      {"packetStore"}, {"packetStore"}, "store-touch"));
  r.register_service(builtin_service(
      "dhcp", {{EventKind::PacketIn, EventSubtype::PacketDhcp}}, {"host"},
      {"dhcpPool"}, {"hostStore", "dhcpPool"}, "store-touch"));
  r.register_service(builtin_service(
      "meter", {{EventKind::ConfigEvent, EventSubtype::ConfigUpdated}}, {},
      {"meterStore"}, {"meterStore"}, "store-touch"));
  r.register_service(builtin_service(
      "ui", {{EventKind::ConfigEvent, EventSubtype::ConfigUpdated}},
      {"meter"}, {"meterStore"}, {"uiStore"}, "store-touch"));
  return r;
}

std::string host_mac(int i) {
  char buf[18];
  std::snprintf(buf, sizeof buf, "02:00:00:00:00:%02x", i);
  return buf;
}

std::string host_ip(int i) { return "10.0.0." + std::to_string(i); }

Event arp_packet(int op, const std::string& spa, const std::string& sha,
                 const std::string& tpa, const std::string& tha,
                 int in_port) {
  PacketPayload p;
  p.in_port = in_port;
  p.eth_src = sha;
  p.eth_dst = op == 1 ? "ff:ff:ff:ff:ff:ff" : tha;
  p.eth_type = EthType::Arp;
  p.arp = ArpBody{op, spa, sha, tpa, tha};
  return make_packet_in(std::move(p));
}

}  // namespace

ServiceRegistry builtin(const std::string& name) {
  if (name == "testbed") return make_testbed();
  if (name == "fig4") return make_fig4();
  throw ConfigError("unknown builtin fixture '" + name + "'");
}

std::vector<std::string> builtin_names() { return {"fig4", "testbed"}; }

ServiceRegistry from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("fixture: must be a JSON array");
  ServiceRegistry r;
  for (const auto& s : j) {
    if (!s.is_object()) throw ParseError("fixture: entries must be objects");
    ServiceDescriptor d;
    if (!s.contains("id") || !s["id"].is_string())
      throw ParseError("id: missing or not a string");
    d.id = s["id"].get<std::string>();
    if (!s.contains("handles") || !s["handles"].is_array())
      throw ParseError("handles: missing or not an array");
    for (const auto& h : s["handles"]) {
      EventTypeFilter f;
      if (!h.contains("kind") || !h["kind"].is_string())
        throw ParseError("handles.kind: missing or not a string");
      f.kind = kind_from_name(h["kind"].get<std::string>());
      if (h.contains("subtype") && !h["subtype"].is_null()) {
        f.subtype = subtype_from_name(h["subtype"].get<std::string>());
      }
      d.handles.push_back(f);
    }
    for (const char* field : {"calls", "reads", "writes"}) {
      if (!s.contains(field)) continue;
      if (!s[field].is_array())
        throw ParseError(std::string(field) + ": must be an array");
      for (const auto& x : s[field]) {
        if (!x.is_string())
          throw ParseError(std::string(field) + ": entries must be strings");
        const auto v = x.get<std::string>();
        if (field == std::string("calls")) {
          d.calls.push_back(v);
        } else if (field == std::string("reads")) {
          d.reads.insert(v);
        } else {
          d.writes.insert(v);
        }
      }
    }
    if (!s.contains("behavior") || !s["behavior"].is_string())
      throw ParseError("behavior: missing or not a string");
    d.behavior = s["behavior"].get<std::string>();
    d.handler = behaviors::make(d.behavior);
    r.register_service(std::move(d));
  }
  return r;
}

ServiceRegistry load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return from_json(j);
}

Json to_json(const ServiceRegistry& registry) {
  Json out = Json::array();
  for (const auto& s : registry.services()) {
    Json handles = Json::array();
    for (const auto& f : s.handles) {
      Json h{{"kind", kind_name(f.kind)}};
      if (f.subtype) h["subtype"] = subtype_name(*f.subtype);
      handles.push_back(h);
    }
    out.push_back({{"id", s.id},
                   {"handles", handles},
                   {"calls", s.calls},
                   {"reads", std::vector<std::string>(s.reads.begin(), s.reads.end())},
                   {"writes", std::vector<std::string>(s.writes.begin(), s.writes.end())},
                   {"behavior", s.behavior}});
  }
  return out;
}

ServiceRegistry resolve(const std::string& name_or_path) {
  if (name_or_path == "testbed" || name_or_path == "fig4") {
    return builtin(name_or_path);
  }
  return load_file(name_or_path);
}

std::vector<Event> normal_traffic_workload() {
  std::vector<Event> events;
  const int kTicks = 1360;

  // Topology bring-up: 2 switches, one inter-switch link, 4 hosts.
  for (int d = 1; d <= 2; ++d) {
    events.push_back(make_device_event(
        EventSubtype::DeviceAdded,
        DevicePayload{"d" + std::to_string(d), {1, 2, 3, 4, 5, 6, 7, 8}}));
  }
  events.push_back(
      make_link_event(EventSubtype::LinkAdded, LinkPayload{"d1", 1, "d2", 1}));
  for (int h = 1; h <= 4; ++h) {
    events.push_back(make_host_event(
        EventSubtype::HostAdded,
        HostPayload{"h" + std::to_string(h), host_mac(h), host_ip(h)}));
  }

  for (int t = 0; t < kTicks; ++t) {
    // Switches report port statistics every tick.
    std::string dev = "d" + std::to_string(1 + t % 2);
    events.push_back(make_device_event(EventSubtype::PortUpdated,
                                       DevicePayload{dev, {1 + t % 8}}));
    // Monitoring polls twice per tick.
    events.push_back(make_config_event(EventSubtype::StatsQuery,
                                       ConfigPayload{"stats", "*"}));
    events.push_back(make_config_event(EventSubtype::StatsQuery,
                                       ConfigPayload{"stats", dev}));
    // Ping traffic: ARP request, then the matching reply next tick.
    int a = 1 + t % 4;
    int b = 1 + (t + 1) % 4;
    if (t % 2 == 0) {
      events.push_back(arp_packet(1, host_ip(a), host_mac(a), host_ip(b),
                                  "00:00:00:00:00:00", a));
    } else {
      events.push_back(
          arp_packet(2, host_ip(b), host_mac(b), host_ip(a), host_mac(a), b));
    }
    if (t % 10 == 9) {
      events.push_back(make_config_event(EventSubtype::PathQuery,
                                         ConfigPayload{"path", "d1,d2"}));
    }
  }
  return events;
}

std::vector<Event> load_event_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open workload file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_array()) throw ParseError(path + ": must be a JSON array of events");
  std::vector<Event> events;
  events.reserve(j.size());
  for (const auto& e : j) events.push_back(event_from_json(e));
  return events;
}

Json events_to_json(const std::vector<Event>& events) {
  Json out = Json::array();
  for (const auto& e : events) out.push_back(event_to_json(e));
  return out;
}

std::vector<Event> resolve_workload(const std::string& name_or_path) {
  if (name_or_path == kDefaultWorkload) return normal_traffic_workload();
  if (name_or_path.size() > 6 &&
      name_or_path.rfind(".jsonl") == name_or_path.size() - 6) {
    return openflow::parse_message_file(name_or_path);
  }
  return load_event_file(name_or_path);
}

}  // namespace spider::fixtures
