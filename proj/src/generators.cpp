// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/generators.hpp"

#include <cstdio>

#include "spider/typegen.hpp"

namespace spider {

namespace {

constexpr int kHostPool = 64;    // h1..h64
constexpr int kDevicePool = 6;   // d1..d6
constexpr int kPortPool = 16;
constexpr int kInPortPool = 8;

std::string host_id(int i) { return "h" + std::to_string(i + 1); }

std::string host_mac(int i) {
  char buf[18];
  std::snprintf(buf, sizeof buf, "02:00:00:00:00:%02x", i + 1);
  return buf;
}

std::string host_ip(int i) { return "10.0.0." + std::to_string(i + 1); }

int host_index_of(const std::string& id) {
  // ids come from host_id(); fall back to 0 for foreign ids
  int v = std::atoi(id.c_str() + 1);
  return v > 0 ? v - 1 : 0;
}

std::string device_id(int i) { return "d" + std::to_string(i + 1); }

std::string fresh_arp_ip(std::uint64_t idx16) {
  return std::string(kArpFreshPrefix) + std::to_string((idx16 >> 8) & 0xff) +
         "." + std::to_string(idx16 & 0xff);
}

std::string fresh_arp_mac(std::uint64_t idx16) {
  char buf[18];
  std::snprintf(buf, sizeof buf, "02:77:00:00:%02x:%02x",
                unsigned((idx16 >> 8) & 0xff), unsigned(idx16 & 0xff));
  return buf;
}

Event gen_host(std::optional<EventSubtype> forced, ChoiceStream& stream,
               GeneratorState& st) {
  EventSubtype sub =
      forced ? *forced
             : subtypes_of(EventKind::HostEvent)[stream.next_choice(2)];
  if (sub == EventSubtype::HostRemoved && st.live_hosts.empty()) {
    // Infeasible; fall back among the feasible subtypes.
    sub = EventSubtype::HostAdded;
    stream.next_choice(1);
  }
  if (sub == EventSubtype::HostAdded) {
    int i = static_cast<int>(stream.next_choice(kHostPool));
    HostPayload p{host_id(i), host_mac(i), host_ip(i)};
    st.add_host(p.id);
    return make_host_event(sub, std::move(p));
  }
  size_t pick = stream.next_choice(st.live_hosts.size());
  std::string id = st.live_hosts[pick];
  int i = host_index_of(id);
  HostPayload p{id, host_mac(i), host_ip(i)};
  st.remove_host(id);
  return make_host_event(sub, std::move(p));
}

Event gen_device(std::optional<EventSubtype> forced, ChoiceStream& stream,
                 GeneratorState& st) {
  EventSubtype sub =
      forced ? *forced
             : subtypes_of(EventKind::DeviceEvent)[stream.next_choice(2)];
  if (sub == EventSubtype::PortUpdated && st.live_devices.empty()) {
    sub = EventSubtype::DeviceAdded;
    stream.next_choice(1);
  }
  if (sub == EventSubtype::DeviceAdded) {
    int i = static_cast<int>(stream.next_choice(kDevicePool));
    DevicePayload p{device_id(i), {1, 2, 3, 4, 5, 6, 7, 8}};
    st.add_device(p.id);
    return make_device_event(sub, std::move(p));
  }
  size_t pick = stream.next_choice(st.live_devices.size());
  int port = 1 + static_cast<int>(stream.next_choice(kInPortPool));
  DevicePayload p{st.live_devices[pick], {port}};
  return make_device_event(sub, std::move(p));
}

Event gen_link(std::optional<EventSubtype> forced, ChoiceStream& stream,
               GeneratorState& st) {
  EventSubtype sub =
      forced ? *forced
             : subtypes_of(EventKind::LinkEvent)[stream.next_choice(2)];
  if (sub == EventSubtype::LinkRemoved && st.live_links.empty()) {
    sub = EventSubtype::LinkAdded;
    stream.next_choice(1);
  }
  if (sub == EventSubtype::LinkAdded) {
    int src = static_cast<int>(stream.next_choice(kDevicePool));
    int dst = static_cast<int>(stream.next_choice(kDevicePool - 1));
    if (dst >= src) ++dst;  // never a self link
    LinkPayload p{device_id(src),
                  1 + static_cast<int>(stream.next_choice(kPortPool)),
                  device_id(dst),
                  1 + static_cast<int>(stream.next_choice(kPortPool))};
    st.add_link(p.link_id());
    return make_link_event(sub, std::move(p));
  }
  size_t pick = stream.next_choice(st.live_links.size());
  std::string id = st.live_links[pick];
  // Decode "src:sp>dst:dp" back into a payload.
  LinkPayload p;
  auto gt = id.find('>');
  auto c1 = id.find(':');
  auto c2 = id.find(':', gt);
  p.src_device = id.substr(0, c1);
  p.src_port = std::atoi(id.c_str() + c1 + 1);
  p.dst_device = id.substr(gt + 1, c2 - gt - 1);
  p.dst_port = std::atoi(id.c_str() + c2 + 1);
  st.remove_link(id);
  return make_link_event(sub, std::move(p));
}

Event gen_packet(std::optional<EventSubtype> forced, ChoiceStream& stream,
                 GeneratorState& st) {
  EthType flavor;
  if (forced) {
    switch (*forced) {
      case EventSubtype::PacketArp: flavor = EthType::Arp; break;
      case EventSubtype::PacketIpv4: flavor = EthType::Ipv4; break;
      case EventSubtype::PacketLldp: flavor = EthType::Lldp; break;
      default: flavor = EthType::Dhcp; break;
    }
  } else {
    flavor = static_cast<EthType>(stream.next_choice(4));
  }

  PacketPayload p;
  p.eth_type = flavor;
  p.in_port = 1 + static_cast<int>(stream.next_choice(kInPortPool));

  switch (flavor) {
    case EthType::Arp: {
      ArpBody a;
      a.op = 1 + static_cast<int>(stream.next_choice(2));
      // Sender: mostly a fresh address (spoofing-capable); sometimes a
      // repeat of an already-seen sender.
      bool reuse = stream.next_choice(4) == 0 && !st.arp_known.empty();
      if (reuse) {
        size_t pick = stream.next_choice(st.arp_known.size());
        a.spa = st.arp_known[pick].first;
        a.sha = st.arp_known[pick].second;
      } else {
        std::uint64_t idx = stream.next_choice(65536);
        a.spa = fresh_arp_ip(idx);
        a.sha = fresh_arp_mac(idx);
      }
      int target = static_cast<int>(stream.next_choice(kHostPool));
      a.tpa = host_ip(target);
      a.tha = a.op == 1 ? "00:00:00:00:00:00" : host_mac(target);
      p.eth_src = a.sha;
      p.eth_dst = a.op == 1 ? "ff:ff:ff:ff:ff:ff" : a.tha;
      st.learn_arp(a.spa, a.sha);
      p.arp = std::move(a);
      break;
    }
    case EthType::Ipv4: {
      int s = static_cast<int>(stream.next_choice(kHostPool));
      int d = static_cast<int>(stream.next_choice(kHostPool));
      p.eth_src = host_mac(s);
      p.eth_dst = host_mac(d);
      break;
    }
    case EthType::Lldp: {
      int d = static_cast<int>(stream.next_choice(kDevicePool));
      char buf[18];
      std::snprintf(buf, sizeof buf, "0e:00:00:00:00:%02x", d + 1);
      p.eth_src = buf;
      p.eth_dst = "01:80:c2:00:00:0e";
      break;
    }
    case EthType::Dhcp: {
      int s = static_cast<int>(stream.next_choice(kHostPool));
      p.eth_src = host_mac(s);
      p.eth_dst = "ff:ff:ff:ff:ff:ff";
      break;
    }
  }
  return make_packet_in(std::move(p));
}

Event gen_config(std::optional<EventSubtype> forced, ChoiceStream& stream,
                 GeneratorState&) {
  static const char* kKeys[] = {"vlan", "mtu", "idle-timeout", "log-level"};
  EventSubtype sub =
      forced ? *forced
             : subtypes_of(EventKind::ConfigEvent)[stream.next_choice(4)];
  ConfigPayload p;
  switch (sub) {
    case EventSubtype::ConfigUpdated:
      p.key = kKeys[stream.next_choice(4)];
      p.value = std::to_string(stream.next_choice(4096));
      break;
    case EventSubtype::RouteUpdate:
      p.key = "route";
      p.value = "10." + std::to_string(stream.next_choice(256)) +
                ".0.0/16 via 10.0.0." +
                std::to_string(1 + stream.next_choice(kHostPool));
      break;
    case EventSubtype::PathQuery: {
      int src = static_cast<int>(stream.next_choice(kDevicePool));
      int dst = static_cast<int>(stream.next_choice(kDevicePool - 1));
      if (dst >= src) ++dst;
      p.key = "path";
      p.value = device_id(src) + "," + device_id(dst);
      break;
    }
    default: {  // StatsQuery
      std::uint64_t pick = stream.next_choice(kDevicePool + 1);
      p.key = "stats";
      p.value = pick == 0 ? "*" : device_id(static_cast<int>(pick - 1));
      break;
    }
  }
  return make_config_event(sub, std::move(p));
}

}  // namespace

void GeneratorState::clear() {
  live_hosts.clear();
  live_links.clear();
  live_devices.clear();
  arp_known.clear();
  host_index.clear();
  link_index.clear();
  device_index.clear();
  arp_index.clear();
}

void GeneratorState::add_host(const std::string& id) {
  if (host_index.insert(id).second) live_hosts.push_back(id);
}

void GeneratorState::remove_host(const std::string& id) {
  if (host_index.erase(id) == 0) return;
  for (auto it = live_hosts.begin(); it != live_hosts.end(); ++it) {
    if (*it == id) {
      live_hosts.erase(it);
      return;
    }
  }
}

void GeneratorState::add_device(const std::string& id) {
  if (device_index.insert(id).second) live_devices.push_back(id);
}

void GeneratorState::add_link(const std::string& link_id) {
  if (link_index.insert(link_id).second) live_links.push_back(link_id);
}

void GeneratorState::remove_link(const std::string& link_id) {
  if (link_index.erase(link_id) == 0) return;
  for (auto it = live_links.begin(); it != live_links.end(); ++it) {
    if (*it == link_id) {
      live_links.erase(it);
      return;
    }
  }
}

void GeneratorState::learn_arp(const std::string& ip, const std::string& mac) {
  if (arp_index.insert(ip).second) arp_known.emplace_back(ip, mac);
}

Event constrained_generate(EventKind kind,
                           std::optional<EventSubtype> forced_subtype,
                           ChoiceStream& stream, GeneratorState& state) {
  switch (kind) {
    case EventKind::HostEvent:
      return gen_host(forced_subtype, stream, state);
    case EventKind::DeviceEvent:
      return gen_device(forced_subtype, stream, state);
    case EventKind::LinkEvent:
      return gen_link(forced_subtype, stream, state);
    case EventKind::PacketIn:
      return gen_packet(forced_subtype, stream, state);
    case EventKind::ConfigEvent:
      return gen_config(forced_subtype, stream, state);
  }
  throw Error("constrained_generate: kind out of range");
}

Event generic_generate(EventKind kind,
                       std::optional<EventSubtype> forced_subtype,
                       ChoiceStream& stream) {
  Json v = type_based_generate(event_descriptor(kind), stream);
  v["kind"] = kind_name(kind);
  if (forced_subtype) {
    // A filtered subscription pins the structural type; for packets that
    // means the ethernet class.
    if (kind == EventKind::PacketIn) {
      switch (*forced_subtype) {
        case EventSubtype::PacketArp: v["eth_type"] = "arp"; break;
        case EventSubtype::PacketIpv4: v["eth_type"] = "ipv4"; break;
        case EventSubtype::PacketLldp: v["eth_type"] = "lldp"; break;
        default: v["eth_type"] = "dhcp"; break;
      }
    } else {
      v["subtype"] = subtype_name(*forced_subtype);
    }
  }
  return event_from_json(v);
}

std::vector<Event> generate_sequence(const EventTypeSet& types, size_t n,
                                     ChoiceStream& stream,
                                     GeneratorState& state, GenMode mode) {
  if (types.empty()) throw Error("generate_sequence: empty event type set");
  std::vector<Event> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const EventTypeFilter& pick =
        types.types[stream.next_choice(types.types.size())];
    if (mode == GenMode::Full) {
      out.push_back(
          constrained_generate(pick.kind, pick.subtype, stream, state));
    } else {
      out.push_back(generic_generate(pick.kind, pick.subtype, stream));
    }
  }
  return out;
}

std::optional<std::string> validate_event(const Event& ev,
                                          GeneratorState& st) {
  switch (ev.kind) {
    case EventKind::HostEvent: {
      const auto& p = std::get<HostPayload>(ev.payload);
      if (p.id.empty()) return "host id must be non-empty";
      if (p.mac.empty()) return "host mac must be non-empty";
      if (p.ip.empty()) return "host ip must be non-empty";
      if (ev.subtype == EventSubtype::HostRemoved) {
        if (!st.host_live(p.id)) return "host never added";
        st.remove_host(p.id);
      } else {
        st.add_host(p.id);
      }
      return std::nullopt;
    }
    case EventKind::DeviceEvent: {
      const auto& p = std::get<DevicePayload>(ev.payload);
      if (p.id.empty()) return "device id must be non-empty";
      if (ev.subtype == EventSubtype::PortUpdated) {
        if (!st.device_live(p.id)) return "device never added";
        if (p.ports.empty()) return "port update must carry a port";
      } else {
        st.add_device(p.id);
      }
      return std::nullopt;
    }
    case EventKind::LinkEvent: {
      const auto& p = std::get<LinkPayload>(ev.payload);
      if (p.src_device.empty() || p.dst_device.empty())
        return "link endpoints must be non-empty";
      if (p.src_device == p.dst_device) return "self link";
      if (ev.subtype == EventSubtype::LinkRemoved) {
        if (!st.link_live(p.link_id())) return "link never added";
        st.remove_link(p.link_id());
      } else {
        st.add_link(p.link_id());
      }
      return std::nullopt;
    }
    case EventKind::PacketIn: {
      const auto& p = std::get<PacketPayload>(ev.payload);
      if (p.eth_src.empty() || p.eth_dst.empty())
        return "ethernet addresses must be non-empty";
      if (p.arp && p.eth_type != EthType::Arp)
        return "arp body requires arp ethertype";
      if (p.eth_type == EthType::Arp) {
        if (!p.arp) return "arp packet missing arp body";
        if (p.arp->op != 1 && p.arp->op != 2) return "op must be 1 or 2";
        st.learn_arp(p.arp->spa, p.arp->sha);
      }
      return std::nullopt;
    }
    case EventKind::ConfigEvent: {
      const auto& p = std::get<ConfigPayload>(ev.payload);
      if (p.key.empty()) return "config key must be non-empty";
      if (ev.subtype == EventSubtype::PathQuery) {
        auto comma = p.value.find(',');
        if (comma == std::string::npos || comma == 0 ||
            comma + 1 == p.value.size())
          return "malformed path query";
        if (p.value.substr(0, comma) == p.value.substr(comma + 1))
          return "degenerate path query";
      }
      if (ev.subtype != EventSubtype::ConfigUpdated && p.value.empty())
        return "config value must be non-empty";
      return std::nullopt;
    }
  }
  return "unknown event kind";
}

std::vector<EventVerdict> validate_sequence(const std::vector<Event>& events) {
  GeneratorState st;
  std::vector<EventVerdict> out;
  out.reserve(events.size());
  for (size_t i = 0; i < events.size(); ++i) {
    out.push_back({i, validate_event(events[i], st)});
  }
  return out;
}

}  // namespace spider
