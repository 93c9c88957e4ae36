// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/behaviors.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace spider::behaviors {

namespace {

// Cache of ARP sender addresses. The lookup walks a snapshot of the whole
// address map before the conditional insert, so one ARP packet costs one
// scan probe per existing record.
void arp_cache(HandlerContext& ctx, const Event& ev) {
  const auto& p = std::get<PacketPayload>(ev.payload);
  ctx.probe("arp.rx");
  if (p.eth_type != EthType::Arp || !p.arp) {
    ctx.probe("arp.ignore");
    return;
  }
  const ArpBody& a = *p.arp;
  if (a.op != 1 && a.op != 2) {
    ctx.probe("arp.op.reject");
    return;
  }
  ctx.probe("arp.op.ok");
  bool known = false;
  ctx.scan(kArpStore, [&](const std::string& key, const std::string&) {
    ctx.probe("arp.lookup.scan");
    if (key == a.spa) known = true;
  });
  if (known) {
    ctx.probe("arp.hit");
  } else {
    ctx.probe("arp.insert");
    ctx.put(kArpStore, a.spa, a.sha);
  }
}

struct TopoGraph {
  // device -> outgoing neighbor list, one entry per parallel edge, in link
  // insertion order.
  std::vector<std::pair<std::string, std::vector<std::string>>> adjacency;

  std::vector<std::string>* find(const std::string& dev) {
    for (auto& [d, n] : adjacency) {
      if (d == dev) return &n;
    }
    return nullptr;
  }

  std::vector<std::string>& at(const std::string& dev) {
    if (auto* n = find(dev)) return *n;
    adjacency.emplace_back(dev, std::vector<std::string>{});
    return adjacency.back().second;
  }
};

void topo_count_paths(HandlerContext& ctx, TopoGraph& g,
                      const std::string& cur, const std::string& dst,
                      std::vector<std::string>& visited) {
  auto* neighbors = g.find(cur);
  if (!neighbors) return;
  for (const auto& next : *neighbors) {
    if (std::find(visited.begin(), visited.end(), next) != visited.end()) {
      continue;
    }
    ctx.probe("topo.path.extend");
    if (next == dst) continue;  // complete simple path; do not extend past dst
    visited.push_back(next);
    topo_count_paths(ctx, g, next, dst, visited);
    visited.pop_back();
  }
}

// Link multigraph rebuilt from the link store on every link event; path
// queries enumerate all simple paths between two devices, one probe per
// path extension. Parallel links are distinct edges.
void topology_path(HandlerContext& ctx, const Event& ev) {
  if (ev.kind == EventKind::LinkEvent) {
    const auto& p = std::get<LinkPayload>(ev.payload);
    if (ev.subtype == EventSubtype::LinkAdded) {
      ctx.probe("topo.link.add");
      ctx.put(kLinkStore, p.link_id(),
              p.src_device + "," + p.dst_device);
    } else {
      ctx.probe("topo.link.remove");
      ctx.erase(kLinkStore, p.link_id());
    }
    ctx.scan(kLinkStore, [&](const std::string&, const std::string&) {
      ctx.probe("topo.rebuild.edge");
    });
    return;
  }

  // PATH_QUERY config event: value is "src,dst".
  const auto& c = std::get<ConfigPayload>(ev.payload);
  ctx.probe("topo.query");
  auto comma = c.value.find(',');
  if (comma == std::string::npos || comma == 0 ||
      comma + 1 == c.value.size()) {
    throw DomainError("malformed path query '" + c.value + "'");
  }
  std::string src = c.value.substr(0, comma);
  std::string dst = c.value.substr(comma + 1);
  if (src == dst) throw DomainError("degenerate path query");

  TopoGraph g;
  ctx.scan(kLinkStore, [&](const std::string&, const std::string& value) {
    ctx.probe("topo.query.edge");
    auto sep = value.find(',');
    g.at(value.substr(0, sep)).push_back(value.substr(sep + 1));
  });
  std::vector<std::string> visited{src};
  topo_count_paths(ctx, g, src, dst, visited);
}

// Appends one sample per PORT_UPDATED; a stats query scans every
// accumulated sample.
void port_stats(HandlerContext& ctx, const Event& ev) {
  if (ev.kind == EventKind::DeviceEvent) {
    if (ev.subtype == EventSubtype::PortUpdated) {
      const auto& p = std::get<DevicePayload>(ev.payload);
      ctx.probe("stats.update");
      size_t n = ctx.size(kPortSamples);
      ctx.probe("stats.append");
      ctx.put(kPortSamples, "s" + std::to_string(n),
              p.id + ":" + (p.ports.empty()
                                ? std::string("0")
                                : std::to_string(p.ports.front())));
    } else {
      ctx.probe("stats.device");
    }
    return;
  }
  ctx.probe("stats.query");
  ctx.scan(kPortSamples, [&](const std::string&, const std::string&) {
    ctx.probe("stats.scan");
  });
}

void host_inventory(HandlerContext& ctx, const Event& ev) {
  const auto& p = std::get<HostPayload>(ev.payload);
  if (p.id.empty()) throw DomainError("host id must be non-empty");
  if (ev.subtype == EventSubtype::HostAdded) {
    ctx.probe("host.add");
    ctx.put(kHostStore, p.id, p.mac + "," + p.ip);
  } else {
    ctx.probe("host.remove");
    if (!ctx.erase(kHostStore, p.id)) {
      throw DomainError("removal of unknown host '" + p.id + "'");
    }
  }
}

void device_inventory(HandlerContext& ctx, const Event& ev) {
  const auto& p = std::get<DevicePayload>(ev.payload);
  if (p.id.empty()) throw DomainError("device id must be non-empty");
  if (ev.subtype == EventSubtype::DeviceAdded) {
    ctx.probe("device.add");
    ctx.put(kDeviceStore, p.id, std::to_string(p.ports.size()) + " ports");
  } else {
    ctx.probe("device.port");
    if (!ctx.get(kDeviceStore, p.id)) {
      throw DomainError("port update for unknown device '" + p.id + "'");
    }
    ctx.probe("device.port.known");
  }
}

// Negative control: fixed probe count, no state.
void benign_echo(HandlerContext& ctx, const Event&) {
  for (int i = 0; i < 8; ++i) ctx.probe("echo.step");
  ctx.probe("echo.done");
}

// Negative control: one read-modify-write of a single counter.
void benign_counter(HandlerContext& ctx, const Event&) {
  ctx.probe("counter.tick");
  auto cur = ctx.get(kCounterStore, "ticks");
  long n = cur ? std::stol(*cur) : 0;
  ctx.probe(cur ? "counter.load" : "counter.init");
  ctx.put(kCounterStore, "ticks", std::to_string(n + 1));
}

// Generic fixture behavior: read each declared read object, write one
// record per declared write object. Constant cost per event.
void store_touch(HandlerContext& ctx, const Event& ev) {
  for (const auto& object : ctx.declared_reads()) {
    ctx.probe("touch.read");
    ctx.size(object);
  }
  for (const auto& object : ctx.declared_writes()) {
    ctx.probe("touch.write");
    ctx.put(object, "last", subtype_name(ev.subtype));
  }
}

void noop(HandlerContext&, const Event&) {}

const std::map<std::string, Handler>& table() {
  static const auto* t = new std::map<std::string, Handler>{
      {"arp-cache", arp_cache},
      {"topology-path", topology_path},
      {"port-stats", port_stats},
      {"host-inventory", host_inventory},
      {"device-inventory", device_inventory},
      {"benign-echo", benign_echo},
      {"benign-counter", benign_counter},
      {"store-touch", store_touch},
      {"noop", noop},
  };
  return *t;
}

}  // namespace

Handler make(const std::string& name) {
  const auto& t = table();
  auto it = t.find(name);
  if (it == t.end()) throw ParseError("behavior: unknown builtin '" + name + "'");
  return it->second;
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : table()) out.push_back(name);
  return out;
}

}  // namespace spider::behaviors
