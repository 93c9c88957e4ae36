// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/registry.hpp"

#include <gtest/gtest.h>

#include "spider/behaviors.hpp"
#include "spider/fixtures.hpp"

namespace spider {
namespace {

ServiceDescriptor lambda_service(std::string id,
                                 std::vector<EventTypeFilter> handles,
                                 Handler handler,
                                 std::set<std::string> reads = {},
                                 std::set<std::string> writes = {}) {
  ServiceDescriptor d;
  d.id = std::move(id);
  d.handles = std::move(handles);
  d.reads = std::move(reads);
  d.writes = std::move(writes);
  d.handler = std::move(handler);
  return d;
}

Event config_event(const std::string& key, const std::string& value) {
  return make_config_event(EventSubtype::ConfigUpdated,
                           ConfigPayload{key, value});
}

TEST(Registry, FirstRegistrationReturnsId) {
  ServiceRegistry r;
  ServiceDescriptor d;
  d.id = "arp-cache";
  d.handles = {{EventKind::PacketIn, EventSubtype::PacketArp}};
  d.reads = {behaviors::kArpStore};
  d.writes = {behaviors::kArpStore};
  d.handler = behaviors::make("arp-cache");
  EXPECT_EQ(r.register_service(d), "arp-cache");
  EXPECT_TRUE(r.has("arp-cache"));
}

TEST(Registry, DuplicateIdRejected) {
  ServiceRegistry r;
  r.register_service(lambda_service("svc", {{EventKind::ConfigEvent, {}}},
                                    behaviors::make("noop")));
  EXPECT_THROW(r.register_service(lambda_service(
                   "svc", {{EventKind::HostEvent, {}}}, behaviors::make("noop"))),
               RegistrationError);
}

TEST(Registry, Fig4FixtureExposesAllCallEdges) {
  ServiceRegistry r = fixtures::builtin("fig4");
  EXPECT_EQ(r.services().size(), 7u);
  auto edges = r.call_edges();
  auto has_edge = [&](const std::string& a, const std::string& b) {
    for (const auto& [x, y] : edges) {
      if (x == a && y == b) return true;
    }
    return false;
  };
  EXPECT_TRUE(has_edge("routing", "host"));
  EXPECT_TRUE(has_edge("vbng", "host"));
  EXPECT_TRUE(has_edge("host", "packet"));
  EXPECT_TRUE(has_edge("dhcp", "host"));
  EXPECT_TRUE(has_edge("ui", "meter"));
  EXPECT_EQ(edges.size(), 5u);
}

TEST(Dispatch, SingleHandlerUpdatesStore) {
  ControllerInstance instance(fixtures::builtin("testbed"));
  auto result = instance.dispatch(make_host_event(
      EventSubtype::HostAdded, HostPayload{"h1", "02:00:00:00:00:01", "10.0.0.1"}));
  EXPECT_EQ(result.handled_by, std::vector<std::string>{"host-inventory"});
  EXPECT_TRUE(instance.store().object(behaviors::kHostStore).contains("h1"));
}

TEST(Dispatch, RegistrationOrderOnMultiSubscriberEvents) {
  ServiceRegistry r;
  std::vector<std::string> order;
  r.register_service(lambda_service(
      "second-registered", {{EventKind::ConfigEvent, {}}},
      [&](HandlerContext&, const Event&) { order.push_back("a"); }));
  r.register_service(lambda_service(
      "first-alphabetically", {{EventKind::ConfigEvent, {}}},
      [&](HandlerContext&, const Event&) { order.push_back("b"); }));
  ControllerInstance instance(r);
  auto result = instance.dispatch(config_event("k", "v"));
  EXPECT_EQ(order, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(result.handled_by,
            (std::vector<std::string>{"second-registered",
                                      "first-alphabetically"}));
}

TEST(Dispatch, SubtypeFilterExcludesService) {
  ControllerInstance instance(fixtures::builtin("testbed"));
  PacketPayload p;
  p.in_port = 1;
  p.eth_src = "02:00:00:00:00:01";
  p.eth_dst = "02:00:00:00:00:02";
  p.eth_type = EthType::Ipv4;
  auto result = instance.dispatch(make_packet_in(std::move(p)));
  for (const auto& id : result.handled_by) EXPECT_NE(id, "arp-cache");
  EXPECT_EQ(instance.store().object(behaviors::kArpStore).size(), 0u);
}

TEST(Dispatch, DomainErrorsRecordedNotPropagated) {
  ControllerInstance instance(fixtures::builtin("testbed"));
  auto result = instance.dispatch(make_host_event(
      EventSubtype::HostRemoved,
      HostPayload{"h9", "02:00:00:00:00:09", "10.0.0.9"}));
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_EQ(result.errors[0].service_id, "host-inventory");
  EXPECT_TRUE(result.handled_by.empty());
}

TEST(Dispatch, DerivedEventsCascadeBreadthFirst) {
  ServiceRegistry r;
  std::vector<std::string> log;
  r.register_service(lambda_service(
      "translator", {{EventKind::ConfigEvent, {}}},
      [&](HandlerContext& ctx, const Event& ev) {
        const auto& c = std::get<ConfigPayload>(ev.payload);
        log.push_back("translate:" + c.key);
        if (c.key == "root") {
          ctx.post(make_host_event(
              EventSubtype::HostAdded,
              HostPayload{"hx", "02:00:00:00:00:0a", "10.0.0.10"}));
        }
      }));
  r.register_service(lambda_service(
      "listener", {{EventKind::HostEvent, {}}},
      [&](HandlerContext&, const Event&) { log.push_back("host"); }));
  ControllerInstance instance(r);
  auto result = instance.dispatch(config_event("root", "v"));
  EXPECT_EQ(log, (std::vector<std::string>{"translate:root", "host"}));
  ASSERT_EQ(result.derived_events.size(), 1u);
  EXPECT_EQ(result.derived_events[0].kind, EventKind::HostEvent);
  EXPECT_EQ(result.handled_by,
            (std::vector<std::string>{"translator", "listener"}));
}

TEST(Dispatch, CascadeDepthOverflowIsDispatchError) {
  ServiceRegistry r;
  r.register_service(lambda_service(
      "echo-loop", {{EventKind::ConfigEvent, {}}},
      [](HandlerContext& ctx, const Event& ev) {
        ctx.post(ev);  // re-posts forever
      }));
  ControllerInstance instance(r);
  EXPECT_THROW(instance.dispatch(config_event("k", "v")), DispatchError);
}

TEST(Dispatch, CascadeUpToCapSucceeds) {
  ServiceRegistry r;
  int depth_seen = 0;
  r.register_service(lambda_service(
      "bounded", {{EventKind::ConfigEvent, {}}},
      [&](HandlerContext& ctx, const Event& ev) {
        const auto& c = std::get<ConfigPayload>(ev.payload);
        int d = std::stoi(c.value);
        depth_seen = std::max(depth_seen, d);
        if (d < kCascadeDepthCap) {
          ctx.post(make_config_event(EventSubtype::ConfigUpdated,
                                     ConfigPayload{"k", std::to_string(d + 1)}));
        }
      }));
  ControllerInstance instance(r);
  auto result = instance.dispatch(config_event("k", "0"));
  EXPECT_EQ(depth_seen, kCascadeDepthCap);
  EXPECT_EQ(result.derived_events.size(), size_t(kCascadeDepthCap));
}

TEST(Store, UndeclaredReadFaultInjection) {
  ServiceRegistry r;
  r.register_service(lambda_service(
      "misdeclared", {{EventKind::ConfigEvent, {}}},
      [](HandlerContext& ctx, const Event&) { ctx.size("secretStore"); }));
  ControllerInstance instance(r);
  EXPECT_THROW(instance.dispatch(config_event("k", "v")), StoreAccessError);
}

TEST(Store, UndeclaredWriteFaultInjection) {
  ServiceRegistry r;
  r.register_service(lambda_service(
      "misdeclared-w", {{EventKind::ConfigEvent, {}}},
      [](HandlerContext& ctx, const Event&) { ctx.put("other", "k", "v"); },
      {"other"}, {}));  // declared read but not write
  ControllerInstance instance(r);
  EXPECT_THROW(instance.dispatch(config_event("k", "v")), StoreAccessError);
}

TEST(Store, DeclaredAccessWorksAndResetClears) {
  ServiceRegistry r;
  r.register_service(lambda_service(
      "writer", {{EventKind::ConfigEvent, {}}},
      [](HandlerContext& ctx, const Event& ev) {
        const auto& c = std::get<ConfigPayload>(ev.payload);
        ctx.put("box", c.key, c.value);
      },
      {"box"}, {"box"}));
  ControllerInstance instance(r);
  instance.dispatch(config_event("a", "1"));
  instance.dispatch(config_event("b", "2"));
  EXPECT_EQ(instance.store().object("box").size(), 2u);
  instance.reset_state();
  EXPECT_EQ(instance.store().object("box").size(), 0u);
  // Registry structure unchanged.
  EXPECT_TRUE(instance.registry().has("writer"));
  instance.reset_state();  // idempotent on a fresh store
  EXPECT_EQ(instance.store().object("box").size(), 0u);
}

TEST(Store, CollectionInsertionOrderStableUnderOverwrite) {
  StoreCollection c;
  c.put("k1", "a");
  c.put("k2", "b");
  c.put("k1", "c");  // overwrite keeps position
  std::vector<std::string> keys;
  c.scan([&](const std::string& k, const std::string&) { keys.push_back(k); });
  EXPECT_EQ(keys, (std::vector<std::string>{"k1", "k2"}));
  EXPECT_EQ(c.get("k1"), "c");
  EXPECT_TRUE(c.erase("k1"));
  EXPECT_FALSE(c.erase("k1"));
  EXPECT_EQ(c.get("k2"), "b");
  EXPECT_EQ(c.size(), 1u);
}

TEST(Registry, RestrictKeepsOrderAndSubset) {
  ServiceRegistry r = fixtures::builtin("testbed");
  ServiceRegistry sub = r.restrict({"arp-cache", "host-inventory"});
  ASSERT_EQ(sub.services().size(), 2u);
  EXPECT_EQ(sub.services()[0].id, "host-inventory");
  EXPECT_EQ(sub.services()[1].id, "arp-cache");
}

}  // namespace
}  // namespace spider
