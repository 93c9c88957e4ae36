// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/calibrate.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "spider/fixtures.hpp"
#include "testutil.hpp"

namespace spider {
namespace {

TEST(Threshold, ConstantSamplesReturnTheConstant) {
  EXPECT_EQ(compute_threshold({42, 42, 42, 42}), 42u);
}

// mu = 100, population sigma = sqrt(200/3) ~ 8.165 -> ceil(124.49) = 125.
TEST(Threshold, HandDerivedExample) {
  EXPECT_EQ(compute_threshold({90, 100, 110}), 125u);
}

TEST(Threshold, TooFewSamplesRejected) {
  EXPECT_THROW(compute_threshold({}), CalibrationError);
  EXPECT_THROW(compute_threshold({5}), CalibrationError);
}

// Scaling all samples by integer k > 0 scales t_max by k, up to the
// ceiling-rounding tolerance of 1.
TEST(Threshold, ScaleEquivariance) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 10000; ++round) {
    size_t n = 2 + rng() % 20;
    std::vector<std::uint64_t> samples;
    for (size_t i = 0; i < n; ++i) samples.push_back(rng() % 1000);
    std::uint64_t base = compute_threshold(samples);
    for (std::uint64_t k : {2ull, 3ull, 7ull}) {
      std::vector<std::uint64_t> scaled;
      for (auto s : samples) scaled.push_back(s * k);
      double ratio = static_cast<double>(compute_threshold(scaled)) /
                     static_cast<double>(k);
      ASSERT_LE(std::fabs(ratio - static_cast<double>(base)), 1.0);
    }
  }
}

TEST(Baseline, EchoWorkloadSamplesAreConstant) {
  ControllerInstance instance(fixtures::builtin("testbed"));
  std::vector<Event> workload(
      80, make_config_event(EventSubtype::ConfigUpdated,
                            ConfigPayload{"vlan", "3"}));
  auto samples = run_baseline(instance, workload, 10);
  ASSERT_EQ(samples.size(), 70u);
  for (const auto& s : samples) {
    EXPECT_EQ(s.path_length, samples[0].path_length);
    EXPECT_EQ(s.kind, EventKind::ConfigEvent);
  }
}

TEST(Baseline, EmptyPostInitWindowRejected) {
  ControllerInstance instance(fixtures::builtin("testbed"));
  std::vector<Event> workload(
      10, make_config_event(EventSubtype::ConfigUpdated, ConfigPayload{"k", "1"}));
  EXPECT_THROW(run_baseline(instance, workload, 50), CalibrationError);
  EXPECT_THROW(run_baseline(instance, {}, 0), CalibrationError);
}

// The shipped normal-traffic workload: bounded spread, no post-init
// sample above its own mu+3sigma threshold.
TEST(Baseline, NormalTrafficFixtureBounded) {
  ControllerInstance instance(fixtures::builtin("testbed"));
  auto samples = run_baseline(instance, fixtures::normal_traffic_workload());
  ASSERT_GT(samples.size(), 1000u);
  std::vector<std::uint64_t> lengths;
  std::uint64_t max_sample = 0;
  for (const auto& s : samples) {
    lengths.push_back(s.path_length);
    max_sample = std::max(max_sample, s.path_length);
  }
  std::uint64_t t_max = compute_threshold(lengths);
  EXPECT_LE(max_sample, t_max) << "normal workload must not flag itself";
  // Desk-scale placement: the threshold separates benign constants from
  // length-2000 priming attacks.
  EXPECT_GT(t_max, 1000u);
  EXPECT_LT(t_max, 2000u);
}

TEST(Complexity, ConstantMeasurements) {
  std::vector<Measurement> m{{10, 7}, {20, 7}, {30, 7}, {40, 7}};
  EXPECT_EQ(fit_complexity(m).cls, ComplexityClass::Constant);
}

TEST(Complexity, ExactLinearFit) {
  std::vector<Measurement> m{{10, 100}, {20, 200}, {30, 300}, {40, 400}};
  auto v = fit_complexity(m);
  EXPECT_EQ(v.cls, ComplexityClass::Linear);
  EXPECT_LT(v.fit_scores.at("linear"), 1e-12);
}

TEST(Complexity, ExactExponentialFit) {
  std::vector<Measurement> m{{2, 10}, {4, 100}, {6, 1000}, {8, 10000}};
  auto v = fit_complexity(m);
  EXPECT_EQ(v.cls, ComplexityClass::Exponential);
  EXPECT_LT(v.fit_scores.at("exponential"), 1e-9);
  EXPECT_GT(v.fit_scores.at("linear"), 0.1);
}

TEST(Complexity, DecayingSeriesIsNotExponential) {
  // Decreasing cost: the exponential model requires positive growth.
  std::vector<Measurement> m{{10, 1000}, {20, 500}, {30, 250}, {40, 125}};
  auto v = fit_complexity(m);
  EXPECT_FALSE(v.fit_scores.count("exponential"));
}

TEST(Complexity, NeedsFourPoints) {
  std::vector<Measurement> m{{1, 1}, {2, 2}, {3, 3}};
  EXPECT_THROW(fit_complexity(m), CalibrationError);
}

TEST(Complexity, DefaultProbeLengths) {
  EXPECT_EQ(default_probe_lengths(2000),
            (std::vector<size_t>{500, 1000, 1500, 2000}));
  EXPECT_EQ(default_probe_lengths(50), (std::vector<size_t>{13, 25, 38, 50}));
}

TEST(Multigraph, SeriesChainCountsMatchProductRule) {
  for (int L = 1; L <= 4; ++L) {
    for (int k = 1; k <= 4; ++k) {
      Multigraph g;
      for (int hop = 0; hop < L; ++hop) {
        for (int p = 0; p < k; ++p) {
          g.add_edge("d" + std::to_string(hop + 1),
                     "d" + std::to_string(hop + 2));
        }
      }
      std::uint64_t expected = 1;
      for (int hop = 0; hop < L; ++hop) expected *= k;
      EXPECT_EQ(count_simple_paths(g, "d1", "d" + std::to_string(L + 1)),
                expected)
          << "L=" << L << " k=" << k;
    }
  }
}

TEST(Multigraph, DisconnectedAndUnknownEndpoints) {
  Multigraph g;
  g.add_edge("d1", "d2");
  EXPECT_EQ(count_simple_paths(g, "d1", "d9"), 0u);
  EXPECT_EQ(count_simple_paths(g, "d2", "d1"), 0u);  // directed
}

TEST(Multigraph, RandomGraphsMatchDualOrderEnumeration) {
  std::mt19937_64 rng(55);
  for (int round = 0; round < 200; ++round) {
    Multigraph g;
    size_t devices = 2 + rng() % 5;
    for (size_t d = 0; d < devices; ++d) {
      g.add_device("d" + std::to_string(d + 1));
    }
    size_t edges = rng() % 13;
    for (size_t e = 0; e < edges; ++e) {
      size_t a = rng() % devices;
      size_t b = rng() % devices;
      if (a == b) continue;
      g.add_edge("d" + std::to_string(a + 1), "d" + std::to_string(b + 1));
    }
    std::uint64_t ours = count_simple_paths(g, "d1", "d2");
    std::uint64_t theirs = testutil::dual_order_path_count(g, "d1", "d2");
    ASSERT_EQ(ours, theirs) << "round " << round;
  }
}

TEST(Multigraph, FromEventsFoldsAddsAndRemovals) {
  std::vector<Event> events;
  events.push_back(make_link_event(EventSubtype::LinkAdded,
                                   LinkPayload{"d1", 1, "d2", 1}));
  events.push_back(make_link_event(EventSubtype::LinkAdded,
                                   LinkPayload{"d1", 2, "d2", 2}));
  events.push_back(make_link_event(EventSubtype::LinkAdded,
                                   LinkPayload{"d1", 1, "d2", 1}));  // re-add
  events.push_back(make_link_event(EventSubtype::LinkRemoved,
                                   LinkPayload{"d1", 2, "d2", 2}));
  Multigraph g = Multigraph::from_events(events);
  EXPECT_EQ(g.edges.size(), 1u);
  EXPECT_FALSE(g.has_parallel_edges());
  events.push_back(make_link_event(EventSubtype::LinkAdded,
                                   LinkPayload{"d1", 3, "d2", 3}));
  EXPECT_TRUE(Multigraph::from_events(events).has_parallel_edges());
}

// Three seeded end-to-end checks: linear for the ARP cache, exponential
// for path search, constant for the benign control.
TEST(Classify, SeededEndToEndClasses) {
  ServiceRegistry r = fixtures::builtin("testbed");

  {  // arp-cache: prime-and-trigger costs grow linearly with the prefix
    CampaignConfig c;
    c.target = "arp-cache";
    c.seq_len = 300;
    c.budget_execs = 120;
    c.t_max = 150;
    c.seed = 2;
    FuzzReport report = run_campaign(r, c);
    ASSERT_FALSE(report.flags.empty());
    auto v = classify_complexity(r, c, report.flags.front());
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->cls, ComplexityClass::Linear);
    EXPECT_LT(v->fit_scores.at("linear"), 0.05);
  }

  {  // topology-path: parallel links blow up the enumeration
    CampaignConfig c;
    c.target = "topology-path";
    c.seq_len = 50;
    c.budget_execs = 4000;
    c.t_max = 400;
    c.seed = 1;
    FuzzReport report = run_campaign(r, c);
    ASSERT_FALSE(report.flags.empty());
    auto v = classify_complexity(r, c, report.flags.front());
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->cls, ComplexityClass::Exponential);
  }

  {  // benign-echo: flat
    CampaignConfig c;
    c.target = "benign-echo";
    c.seq_len = 40;
    c.budget_execs = 30;
    c.t_max = 5;  // below the echo constant, so everything flags
    c.seed = 3;
    FuzzReport report = run_campaign(r, c);
    ASSERT_FALSE(report.flags.empty());
    auto v = classify_complexity(r, c, report.flags.front());
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->cls, ComplexityClass::Constant);
  }
}

TEST(Classify, ProbeCountDominatesOraclePathCount) {
  ServiceRegistry r = fixtures::builtin("testbed");
  CampaignConfig c;
  c.target = "topology-path";
  c.seq_len = 40;
  c.budget_execs = 3000;
  c.t_max = 300;
  c.seed = 4;
  FuzzReport report = run_campaign(r, c);
  ASSERT_FALSE(report.flags.empty());
  auto [dep, types] = campaign_scope(r, c.target);
  const Flag& flag = report.flags.front();
  auto events = decode_for_replay(types, c.seq_len, c.mode, flag.stream);
  const Event& last = events.back();
  Multigraph g = Multigraph::from_events(events);
  if (last.kind == EventKind::ConfigEvent &&
      last.subtype == EventSubtype::PathQuery) {
    const auto& q = std::get<ConfigPayload>(last.payload);
    auto comma = q.value.find(',');
    std::uint64_t paths = count_simple_paths(g, q.value.substr(0, comma),
                                             q.value.substr(comma + 1));
    EXPECT_GE(flag.last_trace.branch_counts.at("topo.path.extend"), paths);
  }
}

}  // namespace
}  // namespace spider
