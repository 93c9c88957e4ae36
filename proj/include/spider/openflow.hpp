// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include "spider/event.hpp"

namespace spider::openflow {

// Parses one OpenFlow-lite message:
//   {"type":"packet_in","in_port":int,"eth_src":mac,"eth_dst":mac,
//    "eth_type":"arp"|"ipv4"|"lldp",
//    "arp"?:{"op":1|2,"spa":ip,"sha":mac,"tpa":ip,"tha":mac}}
// Schema violations raise ParseError naming the offending field. Only
// packet_in is covered; other message kinds are out of scope.
Event parse_packet_in(const Json& msg);

// Parses a JSON-lines message file; blank lines are skipped.
std::vector<Event> parse_message_file(const std::string& path);

bool is_valid_mac(const std::string& s);
bool is_valid_ip(const std::string& s);

}  // namespace spider::openflow
