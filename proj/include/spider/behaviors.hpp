// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include "spider/registry.hpp"

namespace spider::behaviors {

// Looks up a builtin behavior by name; ParseError on unknown names.
// Shipped behaviors:
//   arp-cache        cache of ARP sender addresses; the lookup scans the
//                    whole address map before a conditional insert
//   topology-path    link multigraph; path queries enumerate all simple
//                    paths by depth-first search
//   port-stats       appends port statistics samples; stats queries scan
//                    every accumulated sample
//   host-inventory   keeps host records in hostStore
//   device-inventory keeps device/port records in deviceStore
//   benign-echo      constant-cost handler, no state
//   benign-counter   constant-cost read-modify-write of one counter
//   store-touch      reads each declared read object and writes one record
//                    to each declared write object (fixture services)
//   noop             does nothing
Handler make(const std::string& name);

// Names accepted by make(), sorted.
std::vector<std::string> names();

// State-object ids used by the shipped behaviors.
inline constexpr const char* kArpStore = "addressMap";
inline constexpr const char* kLinkStore = "linkStore";
inline constexpr const char* kPortSamples = "portSamples";
inline constexpr const char* kHostStore = "hostStore";
inline constexpr const char* kDeviceStore = "deviceStore";
inline constexpr const char* kCounterStore = "counterStore";

}  // namespace spider::behaviors
