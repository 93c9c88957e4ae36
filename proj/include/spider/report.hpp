// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "spider/calibrate.hpp"
#include "spider/fuzzer.hpp"

namespace spider {

std::string to_hex(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> from_hex(const std::string& hex);  // ParseError

Json config_to_json(const CampaignConfig& config);
CampaignConfig config_from_json(const Json& j);

Json triage_to_json(const TriageResult& t);
Json verdict_to_json(const ComplexityVerdict& v);

// Serializes a campaign report. Flag events are reproduced from their
// streams while writing, so flags stay cheap to hold in memory. Output is
// compact single-line JSON; byte-identical for identical reports.
void write_report(const FuzzReport& report, const EventTypeSet& types,
                  std::ostream& out);
void write_report_file(const FuzzReport& report, const EventTypeSet& types,
                       const std::string& path);

// The subset of a report needed by replay and classification.
struct LoadedFlag {
  std::vector<std::uint8_t> stream;
  std::uint64_t path_length = 0;
  bool true_positive_candidate = false;
};

struct LoadedReport {
  CampaignConfig config;
  std::uint64_t executions = 0;
  size_t queue_size = 0;
  std::vector<LoadedFlag> flags;
};

LoadedReport load_report_file(const std::string& path);

// CSV exports: baseline samples and classifier measurements.
void write_baseline_csv(const std::vector<BaselineSample>& samples,
                        std::ostream& out);
void write_measurements_csv(const ComplexityVerdict& verdict,
                            std::ostream& out);

}  // namespace spider
