// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spider {

std::vector<BaselineSample> run_baseline(ControllerInstance& instance,
                                         const std::vector<Event>& workload,
                                         size_t init_exclusion) {
  if (workload.empty()) throw CalibrationError("no samples");
  instance.reset_state();
  std::vector<BaselineSample> samples;
  samples.reserve(workload.size());
  for (const Event& ev : workload) {
    instance.trace().begin_trace();
    instance.dispatch_quiet(ev);
    CostTrace trace = instance.trace().end_trace();
    samples.push_back({ev.kind, trace.path_length});
  }
  if (samples.size() <= init_exclusion) throw CalibrationError("no samples");
  samples.erase(samples.begin(),
                samples.begin() + static_cast<std::ptrdiff_t>(init_exclusion));
  return samples;
}

std::uint64_t compute_threshold(const std::vector<std::uint64_t>& samples) {
  if (samples.size() < 2)
    throw CalibrationError("compute_threshold: need at least 2 samples");
  double mean = 0;
  for (auto s : samples) mean += static_cast<double>(s);
  mean /= static_cast<double>(samples.size());
  double var = 0;
  for (auto s : samples) {
    double d = static_cast<double>(s) - mean;
    var += d * d;
  }
  var /= static_cast<double>(samples.size());  // population variance
  return static_cast<std::uint64_t>(std::ceil(mean + 3.0 * std::sqrt(var)));
}

const char* complexity_name(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::Constant: return "constant";
    case ComplexityClass::Linear: return "linear";
    case ComplexityClass::Exponential: return "exponential";
  }
  return "?";
}

namespace {

double mean_of(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

double normalized_rmse(const std::vector<double>& y,
                       const std::vector<double>& fitted) {
  double se = 0;
  for (size_t i = 0; i < y.size(); ++i) {
    double d = y[i] - fitted[i];
    se += d * d;
  }
  double rmse = std::sqrt(se / static_cast<double>(y.size()));
  double m = mean_of(y);
  if (m == 0) return rmse == 0 ? 0 : std::numeric_limits<double>::infinity();
  return rmse / m;
}

// Least squares y = a + b*x. Returns (a, b).
std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  double xm = mean_of(x), ym = mean_of(y);
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - xm) * (y[i] - ym);
    sxx += (x[i] - xm) * (x[i] - xm);
  }
  double b = sxx == 0 ? 0 : sxy / sxx;
  return {ym - b * xm, b};
}

}  // namespace

ComplexityVerdict fit_complexity(
    const std::vector<Measurement>& measurements) {
  if (measurements.size() < 4)
    throw CalibrationError("fit_complexity: need at least 4 measurements");

  std::vector<double> x, y;
  for (const auto& m : measurements) {
    x.push_back(static_cast<double>(m.prefix_len));
    y.push_back(static_cast<double>(m.path_length));
  }

  ComplexityVerdict verdict;
  verdict.measurements = measurements;

  {  // constant: y = a
    double a = mean_of(y);
    std::vector<double> fitted(y.size(), a);
    verdict.fit_scores["constant"] = normalized_rmse(y, fitted);
  }
  {  // linear: y = a + b L
    auto [a, b] = linear_fit(x, y);
    std::vector<double> fitted;
    for (double xi : x) fitted.push_back(a + b * xi);
    verdict.fit_scores["linear"] = normalized_rmse(y, fitted);
  }
  {  // exponential: log y = a + b L with b > 0; residuals in linear space
    bool feasible = std::all_of(y.begin(), y.end(),
                                [](double v) { return v > 0; });
    if (feasible) {
      std::vector<double> logy;
      for (double v : y) logy.push_back(std::log(v));
      auto [a, b] = linear_fit(x, logy);
      if (b > 0) {
        std::vector<double> fitted;
        for (double xi : x) fitted.push_back(std::exp(a + b * xi));
        verdict.fit_scores["exponential"] = normalized_rmse(y, fitted);
      }
    }
  }

  // Smallest normalized residual wins; ties break toward the simpler
  // class (constant < linear < exponential).
  constexpr double kTieEpsilon = 1e-9;
  const char* order[] = {"constant", "linear", "exponential"};
  ComplexityClass classes[] = {ComplexityClass::Constant,
                               ComplexityClass::Linear,
                               ComplexityClass::Exponential};
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    auto it = verdict.fit_scores.find(order[i]);
    if (it == verdict.fit_scores.end()) continue;
    if (it->second < best - kTieEpsilon) {
      best = it->second;
      verdict.cls = classes[i];
    }
  }
  return verdict;
}

std::vector<size_t> default_probe_lengths(size_t n) {
  std::vector<size_t> lengths{(n + 3) / 4, (n + 1) / 2, (3 * n + 3) / 4, n};
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  return lengths;
}

std::optional<ComplexityVerdict> classify_complexity(
    const ServiceRegistry& registry, const CampaignConfig& config,
    const Flag& flag, std::vector<size_t> probe_lengths) {
  if (probe_lengths.empty()) {
    probe_lengths = default_probe_lengths(config.seq_len);
  }
  if (probe_lengths.size() < 4) return std::nullopt;
  if (!std::is_sorted(probe_lengths.begin(), probe_lengths.end()) ||
      probe_lengths.front() < 1 || probe_lengths.back() > config.seq_len) {
    throw ConfigError("probe lengths must be ascending and within 1..N");
  }

  auto [dep, types] = campaign_scope(registry, config.target);
  ControllerInstance instance(registry.restrict(dep.members));

  std::vector<Event> events;
  try {
    events = decode_for_replay(types, config.seq_len, config.mode, flag.stream);
  } catch (const Error&) {
    return std::nullopt;
  }

  std::vector<Measurement> measurements;
  for (size_t len : probe_lengths) {
    std::vector<Event> probe(events.begin(),
                             events.begin() + static_cast<std::ptrdiff_t>(len - 1));
    probe.push_back(events.back());
    try {
      CostTrace trace = execute_sequence(instance, probe);
      measurements.push_back({len, trace.path_length});
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return fit_complexity(measurements);
}

void Multigraph::add_device(const std::string& id) {
  if (std::find(devices.begin(), devices.end(), id) == devices.end()) {
    devices.push_back(id);
  }
}

void Multigraph::add_edge(const std::string& src, const std::string& dst) {
  add_device(src);
  add_device(dst);
  edges.emplace_back(src, dst);
}

bool Multigraph::has_parallel_edges() const {
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      if (edges[i] == edges[j]) return true;
    }
  }
  return false;
}

Multigraph Multigraph::from_events(const std::vector<Event>& events) {
  // The link store is keyed by link identity: re-adding an existing link
  // overwrites it in place, removal erases it. Fold to the surviving set.
  std::vector<std::pair<std::string, LinkPayload>> links;
  for (const Event& ev : events) {
    if (ev.kind != EventKind::LinkEvent) continue;
    const auto& p = std::get<LinkPayload>(ev.payload);
    const std::string id = p.link_id();
    auto it = std::find_if(links.begin(), links.end(),
                           [&](const auto& e) { return e.first == id; });
    if (ev.subtype == EventSubtype::LinkAdded) {
      if (it == links.end()) links.emplace_back(id, p);
    } else if (it != links.end()) {
      links.erase(it);
    }
  }
  Multigraph g;
  for (const auto& [id, p] : links) g.add_edge(p.src_device, p.dst_device);
  return g;
}

namespace {

std::uint64_t count_paths_rec(const Multigraph& g, const std::string& cur,
                              const std::string& dst,
                              std::vector<std::string>& visited) {
  std::uint64_t total = 0;
  for (const auto& [src, to] : g.edges) {
    if (src != cur) continue;
    if (to == dst) {
      ++total;
      continue;
    }
    if (std::find(visited.begin(), visited.end(), to) != visited.end()) {
      continue;
    }
    visited.push_back(to);
    total += count_paths_rec(g, to, dst, visited);
    visited.pop_back();
  }
  return total;
}

}  // namespace

std::uint64_t count_simple_paths(const Multigraph& g, const std::string& src,
                                 const std::string& dst) {
  if (src == dst) return 0;
  std::vector<std::string> visited{src};
  return count_paths_rec(g, src, dst, visited);
}

}  // namespace spider
