// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/report.hpp"

#include <fstream>
#include <ostream>

namespace spider {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out += kHexDigits[b >> 4];
    out += kHexDigits[b & 0xf];
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw ParseError("stream_hex: odd length");
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]);
    int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw ParseError("stream_hex: invalid hex digit");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

Json config_to_json(const CampaignConfig& config) {
  Json j{{"fixture", config.fixture},
         {"target", config.target},
         {"seq_len", config.seq_len},
         {"t_max", config.t_max},
         {"seed", config.seed},
         {"mode", config.mode == GenMode::Full ? "full" : "generic-only"}};
  if (config.budget_execs) j["budget_execs"] = *config.budget_execs;
  if (config.budget_secs) j["budget_secs"] = *config.budget_secs;
  return j;
}

CampaignConfig config_from_json(const Json& j) {
  CampaignConfig c;
  c.fixture = j.at("fixture").get<std::string>();
  c.target = j.at("target").get<std::string>();
  c.seq_len = j.at("seq_len").get<size_t>();
  c.t_max = j.at("t_max").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.mode = j.at("mode").get<std::string>() == "generic-only"
               ? GenMode::GenericOnly
               : GenMode::Full;
  if (j.contains("budget_execs"))
    c.budget_execs = j["budget_execs"].get<std::uint64_t>();
  if (j.contains("budget_secs"))
    c.budget_secs = j["budget_secs"].get<double>();
  return c;
}

Json triage_to_json(const TriageResult& t) {
  if (t.true_positive_candidate) {
    return {{"verdict", "true_positive_candidate"}};
  }
  Json violations = Json::array();
  for (const auto& v : t.violations) {
    violations.push_back({{"index", v.index}, {"message", *v.violation}});
  }
  return {{"verdict", "false_positive"}, {"violations", violations}};
}

Json verdict_to_json(const ComplexityVerdict& v) {
  Json scores = Json::object();
  for (const auto& [model, score] : v.fit_scores) scores[model] = score;
  Json measurements = Json::array();
  for (const auto& m : v.measurements) {
    measurements.push_back(
        {{"prefix_len", m.prefix_len}, {"path_length", m.path_length}});
  }
  return {{"class", complexity_name(v.cls)},
          {"fit_scores", scores},
          {"measurements", measurements}};
}

void write_report(const FuzzReport& report, const EventTypeSet& types,
                  std::ostream& out) {
  // Assembled by hand so flags can be streamed one at a time.
  out << "{\"config\":" << config_to_json(report.config).dump()
      << ",\"executions\":" << report.executions
      << ",\"queue_size\":" << report.queue_size
      << ",\"discarded\":" << report.discarded
      << ",\"execution_errors\":" << report.execution_errors
      << ",\"seed\":" << report.config.seed << ",\"flags\":[";
  bool first = true;
  for (const Flag& flag : report.flags) {
    if (!first) out << ",";
    first = false;
    Json entry{{"stream_hex", to_hex(flag.stream)},
               {"path_length", flag.path_length},
               {"t_max", report.config.t_max},
               {"execution", flag.execution},
               {"last_trace", flag.last_trace.to_json()},
               {"triage", triage_to_json(triage(flag))}};
    std::vector<Event> events = decode_for_replay(
        types, report.config.seq_len, report.config.mode, flag.stream);
    Json evs = Json::array();
    for (const Event& ev : events) evs.push_back(event_to_json(ev));
    entry["events"] = std::move(evs);
    out << entry.dump();
  }
  out << "],\"max_counts\":" << report.max_counts.to_json().dump()
      << ",\"max_counts_updates\":" << Json(report.max_counts_updates).dump()
      << "}";
}

void write_report_file(const FuzzReport& report, const EventTypeSet& types,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write report file '" + path + "'");
  write_report(report, types, out);
  out << "\n";
}

LoadedReport load_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open report file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  LoadedReport report;
  report.config = config_from_json(j.at("config"));
  report.executions = j.at("executions").get<std::uint64_t>();
  report.queue_size = j.at("queue_size").get<size_t>();
  for (const auto& f : j.at("flags")) {
    LoadedFlag flag;
    flag.stream = from_hex(f.at("stream_hex").get<std::string>());
    flag.path_length = f.at("path_length").get<std::uint64_t>();
    flag.true_positive_candidate =
        f.at("triage").at("verdict").get<std::string>() ==
        "true_positive_candidate";
    report.flags.push_back(std::move(flag));
  }
  return report;
}

void write_baseline_csv(const std::vector<BaselineSample>& samples,
                        std::ostream& out) {
  out << "event_index,kind,path_length\n";
  for (size_t i = 0; i < samples.size(); ++i) {
    out << i << "," << kind_name(samples[i].kind) << ","
        << samples[i].path_length << "\n";
  }
}

void write_measurements_csv(const ComplexityVerdict& verdict,
                            std::ostream& out) {
  out << "prefix_len,path_length\n";
  for (const auto& m : verdict.measurements) {
    out << m.prefix_len << "," << m.path_length << "\n";
  }
}

}  // namespace spider
