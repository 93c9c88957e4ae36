// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "spider/choice.hpp"
#include "spider/event.hpp"

namespace spider {

// Recursive value schema for the type-based generator. Descriptors form a
// finite tree; generation enforces a depth cap as a backstop.
class TypeDescriptor;

struct IntRangeDesc {
  std::int64_t lo = 0;
  std::int64_t hi = 0;  // inclusive
};

struct StringDesc {
  std::string alphabet;
  size_t max_len = 0;
};

struct MacDesc {};
struct IpDesc {};

struct EnumDesc {
  std::vector<std::string> literals;
};

struct RecordDesc {
  // Field order is generation order.
  std::vector<std::pair<std::string, TypeDescriptor>> fields;
};

struct ListDesc {
  std::shared_ptr<TypeDescriptor> element;
  size_t max_len = 0;
};

struct OptionalDesc {
  std::shared_ptr<TypeDescriptor> inner;
};

class TypeDescriptor {
 public:
  using Node = std::variant<IntRangeDesc, StringDesc, MacDesc, IpDesc,
                            EnumDesc, RecordDesc, ListDesc, OptionalDesc>;

  TypeDescriptor() : node_(IntRangeDesc{}) {}
  TypeDescriptor(Node node) : node_(std::move(node)) {}

  const Node& node() const { return node_; }

 private:
  Node node_;
};

inline constexpr int kGenerationDepthCap = 16;

// Samples a JSON value conforming to the descriptor: field presence,
// ranges, and lengths always hold, but no cross-field or cross-event
// constraint is guaranteed. Raises Error beyond the depth cap.
Json type_based_generate(const TypeDescriptor& desc, ChoiceStream& stream,
                         int depth = 0);

// Parses the descriptor grammar used by the shipped event-types schema:
//   {"int":{"lo":..,"hi":..}} | {"string":{"alphabet":..,"max_len":..}} |
//   {"mac":{}} | {"ip":{}} | {"enum":[...]} |
//   {"record":{field:node,...}} | {"list":{"element":node,"max_len":n}} |
//   {"optional":node}
TypeDescriptor descriptor_from_json(const Json& j);

// Event payload descriptors per kind, as shipped in the event-types schema
// file. Single source: the embedded schema text.
const TypeDescriptor& event_descriptor(EventKind kind);

// The embedded event-types schema (also shipped as fixtures/event-types.json).
const char* event_types_schema_text();

}  // namespace spider
