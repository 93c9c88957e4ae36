// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/typegen.hpp"

#include <array>
#include <cstdio>
#include <map>

namespace spider {

namespace {

std::string random_mac(ChoiceStream& stream) {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x",
                unsigned(stream.next_choice(256)),
                unsigned(stream.next_choice(256)),
                unsigned(stream.next_choice(256)),
                unsigned(stream.next_choice(256)),
                unsigned(stream.next_choice(256)),
                unsigned(stream.next_choice(256)));
  return buf;
}

std::string random_ip(ChoiceStream& stream) {
  std::string out = std::to_string(stream.next_choice(256));
  for (int i = 0; i < 3; ++i) {
    out += '.';
    out += std::to_string(stream.next_choice(256));
  }
  return out;
}

}  // namespace

Json type_based_generate(const TypeDescriptor& desc, ChoiceStream& stream,
                         int depth) {
  if (depth > kGenerationDepthCap) {
    throw Error("type_based_generate: descriptor depth cap exceeded");
  }
  return std::visit(
      [&](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, IntRangeDesc>) {
          if (node.hi < node.lo) throw Error("int descriptor: hi < lo");
          std::uint64_t span =
              static_cast<std::uint64_t>(node.hi - node.lo) + 1;
          return node.lo + static_cast<std::int64_t>(stream.next_choice(span));
        } else if constexpr (std::is_same_v<T, StringDesc>) {
          if (node.alphabet.empty())
            throw Error("string descriptor: empty alphabet");
          size_t len = stream.next_choice(node.max_len + 1);
          std::string s;
          s.reserve(len);
          for (size_t i = 0; i < len; ++i) {
            s += node.alphabet[stream.next_choice(node.alphabet.size())];
          }
          return s;
        } else if constexpr (std::is_same_v<T, MacDesc>) {
          return random_mac(stream);
        } else if constexpr (std::is_same_v<T, IpDesc>) {
          return random_ip(stream);
        } else if constexpr (std::is_same_v<T, EnumDesc>) {
          if (node.literals.empty()) throw Error("enum descriptor: empty");
          return node.literals[stream.next_choice(node.literals.size())];
        } else if constexpr (std::is_same_v<T, RecordDesc>) {
          Json out = Json::object();
          for (const auto& [name, field] : node.fields) {
            out[name] = type_based_generate(field, stream, depth + 1);
          }
          return out;
        } else if constexpr (std::is_same_v<T, ListDesc>) {
          size_t len = stream.next_choice(node.max_len + 1);
          Json out = Json::array();
          for (size_t i = 0; i < len; ++i) {
            out.push_back(type_based_generate(*node.element, stream, depth + 1));
          }
          return out;
        } else {  // OptionalDesc
          if (stream.next_choice(2) == 0) return nullptr;
          return type_based_generate(*node.inner, stream, depth + 1);
        }
      },
      desc.node());
}

TypeDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw ParseError("descriptor: must be a single-key object");
  }
  const auto& [tag, body] = *j.items().begin();
  if (tag == "int") {
    if (!body.contains("lo") || !body.contains("hi"))
      throw ParseError("int: needs lo and hi");
    return TypeDescriptor(
        IntRangeDesc{body["lo"].get<std::int64_t>(), body["hi"].get<std::int64_t>()});
  }
  if (tag == "string") {
    if (!body.contains("alphabet") || !body.contains("max_len"))
      throw ParseError("string: needs alphabet and max_len");
    return TypeDescriptor(StringDesc{body["alphabet"].get<std::string>(),
                                     body["max_len"].get<size_t>()});
  }
  if (tag == "mac") return TypeDescriptor(MacDesc{});
  if (tag == "ip") return TypeDescriptor(IpDesc{});
  if (tag == "enum") {
    if (!body.is_array() || body.empty())
      throw ParseError("enum: needs a non-empty array");
    EnumDesc e;
    for (const auto& lit : body) e.literals.push_back(lit.get<std::string>());
    return TypeDescriptor(std::move(e));
  }
  if (tag == "record") {
    if (!body.is_object()) throw ParseError("record: needs an object body");
    RecordDesc r;
    for (const auto& [name, node] : body.items()) {
      r.fields.emplace_back(name, descriptor_from_json(node));
    }
    return TypeDescriptor(std::move(r));
  }
  if (tag == "list") {
    if (!body.contains("element") || !body.contains("max_len"))
      throw ParseError("list: needs element and max_len");
    return TypeDescriptor(
        ListDesc{std::make_shared<TypeDescriptor>(
                     descriptor_from_json(body["element"])),
                 body["max_len"].get<size_t>()});
  }
  if (tag == "optional") {
    return TypeDescriptor(OptionalDesc{
        std::make_shared<TypeDescriptor>(descriptor_from_json(body))});
  }
  throw ParseError("descriptor: unknown tag '" + tag + "'");
}

const char* event_types_schema_text() {
  // Payload schemas for the type-based generator. Subtype is a free enum
  // for every kind except PACKET_IN, where it is derived from eth_type.
  static const char* kSchema = R"json({
  "HOST_EVENT": {"record": {
    "subtype": {"enum": ["HOST_ADDED", "HOST_REMOVED"]},
    "host": {"record": {
      "id": {"string": {"alphabet": "h0123456789", "max_len": 3}},
      "mac": {"mac": {}},
      "ip": {"ip": {}}
    }}
  }},
  "DEVICE_EVENT": {"record": {
    "subtype": {"enum": ["DEVICE_ADDED", "PORT_UPDATED"]},
    "device": {"record": {
      "id": {"string": {"alphabet": "d123456", "max_len": 2}},
      "ports": {"list": {"element": {"int": {"lo": 1, "hi": 16}}, "max_len": 8}}
    }}
  }},
  "LINK_EVENT": {"record": {
    "subtype": {"enum": ["LINK_ADDED", "LINK_REMOVED"]},
    "link": {"record": {
      "src_device": {"string": {"alphabet": "d123456", "max_len": 2}},
      "src_port": {"int": {"lo": 1, "hi": 16}},
      "dst_device": {"string": {"alphabet": "d123456", "max_len": 2}},
      "dst_port": {"int": {"lo": 1, "hi": 16}}
    }}
  }},
  "PACKET_IN": {"record": {
    "in_port": {"int": {"lo": 1, "hi": 8}},
    "eth_src": {"mac": {}},
    "eth_dst": {"mac": {}},
    "eth_type": {"enum": ["arp", "ipv4", "lldp", "dhcp"]},
    "arp": {"optional": {"record": {
      "op": {"int": {"lo": 0, "hi": 255}},
      "spa": {"ip": {}},
      "sha": {"mac": {}},
      "tpa": {"ip": {}},
      "tha": {"mac": {}}
    }}}
  }},
  "CONFIG_EVENT": {"record": {
    "subtype": {"enum": ["CONFIG_UPDATED", "ROUTE_UPDATE", "PATH_QUERY", "STATS_QUERY"]},
    "config": {"record": {
      "key": {"string": {"alphabet": "abcdefghijklmnopqrstuvwxyz-.", "max_len": 8}},
      "value": {"string": {"alphabet": "abcdefghijklmnopqrstuvwxyz0123456789-.,/*", "max_len": 12}}
    }}
  }}
})json";
  return kSchema;
}

const TypeDescriptor& event_descriptor(EventKind kind) {
  static const auto* table = [] {
    auto* t = new std::map<EventKind, TypeDescriptor>;
    Json schema = Json::parse(event_types_schema_text());
    for (const auto& [name, node] : schema.items()) {
      t->emplace(kind_from_name(name), descriptor_from_json(node));
    }
    return t;
  }();
  return table->at(kind);
}

}  // namespace spider
