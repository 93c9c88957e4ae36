// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/openflow.hpp"

#include <cctype>
#include <fstream>

namespace spider::openflow {

namespace {

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)); }

const Json& require(const Json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw ParseError(std::string(field) + ": missing");
  return *it;
}

std::string mac_field(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_string() || !is_valid_mac(v.get<std::string>())) {
    throw ParseError(std::string(field) +
                     ": must be a mac address like aa:bb:cc:dd:ee:ff");
  }
  return v.get<std::string>();
}

std::string ip_field(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_string() || !is_valid_ip(v.get<std::string>())) {
    throw ParseError(std::string(field) +
                     ": must be a dotted-quad IPv4 address");
  }
  return v.get<std::string>();
}

}  // namespace

bool is_valid_mac(const std::string& s) {
  if (s.size() != 17) return false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i % 3 == 2) {
      if (s[i] != ':') return false;
    } else if (!is_hex(s[i])) {
      return false;
    }
  }
  return true;
}

bool is_valid_ip(const std::string& s) {
  int octets = 0;
  size_t i = 0;
  while (i < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    int value = 0;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      value = value * 10 + (s[i] - '0');
      ++digits;
      ++i;
    }
    if (digits == 0 || digits > 3 || value > 255) return false;
    ++octets;
    if (i < s.size()) {
      if (s[i] != '.') return false;
      ++i;
      if (i == s.size()) return false;  // trailing dot
    }
  }
  return octets == 4;
}

Event parse_packet_in(const Json& msg) {
  if (!msg.is_object()) throw ParseError("message: must be an object");
  const Json& type = require(msg, "type");
  if (!type.is_string() || type.get<std::string>() != "packet_in") {
    throw ParseError("type: only packet_in messages are supported");
  }

  PacketPayload p;
  const Json& in_port = require(msg, "in_port");
  if (!in_port.is_number_integer() || in_port.get<int>() < 0) {
    throw ParseError("in_port: must be a non-negative integer");
  }
  p.in_port = in_port.get<int>();
  p.eth_src = mac_field(msg, "eth_src");
  p.eth_dst = mac_field(msg, "eth_dst");

  const Json& eth_type = require(msg, "eth_type");
  if (!eth_type.is_string()) throw ParseError("eth_type: must be a string");
  const std::string et = eth_type.get<std::string>();
  if (et != "arp" && et != "ipv4" && et != "lldp") {
    throw ParseError("eth_type: must be one of arp|ipv4|lldp, got '" + et +
                     "'");
  }
  p.eth_type = eth_type_from_name(et);

  auto arp_it = msg.find("arp");
  if (arp_it != msg.end() && !arp_it->is_null()) {
    if (p.eth_type != EthType::Arp) {
      throw ParseError("arp: body present but eth_type is not arp");
    }
    const Json& a = *arp_it;
    const Json& op = require(a, "op");
    if (!op.is_number_integer() ||
        (op.get<int>() != 1 && op.get<int>() != 2)) {
      throw ParseError("op must be 1 or 2");
    }
    p.arp = ArpBody{op.get<int>(), ip_field(a, "spa"), mac_field(a, "sha"),
                    ip_field(a, "tpa"), mac_field(a, "tha")};
  }
  return make_packet_in(std::move(p));
}

std::vector<Event> parse_message_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open message file '" + path + "'");
  std::vector<Event> events;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    try {
      events.push_back(parse_packet_in(j));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return events;
}

}  // namespace spider::openflow
