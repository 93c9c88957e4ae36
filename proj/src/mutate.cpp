// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/mutate.hpp"

#include <algorithm>

namespace spider {

namespace {

constexpr size_t kMaxBlock = 64;
constexpr size_t kMaxTail = 64;

size_t pick(std::mt19937_64& rng, size_t bound) {
  return static_cast<size_t>(rng() % bound);
}

}  // namespace

std::vector<std::uint8_t> mutate(const std::vector<std::uint8_t>& stream,
                                 std::mt19937_64& rng) {
  std::vector<std::uint8_t> out = stream;
  size_t applications = 1 + pick(rng, 16);
  for (size_t i = 0; i < applications; ++i) {
    // Block/tail ops re-align the decode of the whole suffix; weight them
    // below the local byte ops.
    std::uint64_t roll = rng() % 12;
    int op = roll < 4 ? 0 : roll < 8 ? 1 : static_cast<int>(roll - 6);
    switch (op) {
      case 0: {  // bit flip
        if (out.empty()) break;
        size_t pos = pick(rng, out.size());
        out[pos] ^= static_cast<std::uint8_t>(1u << pick(rng, 8));
        break;
      }
      case 1: {  // byte overwrite
        if (out.empty()) break;
        out[pick(rng, out.size())] = static_cast<std::uint8_t>(rng() & 0xff);
        break;
      }
      case 2: {  // block duplication
        if (out.empty()) break;
        size_t pos = pick(rng, out.size());
        size_t len = 1 + pick(rng, std::min(kMaxBlock, out.size() - pos));
        std::vector<std::uint8_t> block(out.begin() + pos,
                                        out.begin() + pos + len);
        out.insert(out.begin() + pos + len, block.begin(), block.end());
        break;
      }
      case 3: {  // block deletion
        if (out.empty()) break;
        size_t pos = pick(rng, out.size());
        size_t len = 1 + pick(rng, std::min(kMaxBlock, out.size() - pos));
        out.erase(out.begin() + pos, out.begin() + pos + len);
        break;
      }
      case 4: {  // tail truncation
        if (out.empty()) break;
        size_t len = 1 + pick(rng, std::min(kMaxTail, out.size()));
        out.resize(out.size() - len);
        break;
      }
      case 5: {  // tail extension
        size_t len = 1 + pick(rng, kMaxTail);
        for (size_t k = 0; k < len; ++k) {
          out.push_back(static_cast<std::uint8_t>(rng() & 0xff));
        }
        break;
      }
    }
  }
  if (out.empty()) out.push_back(static_cast<std::uint8_t>(rng() & 0xff));
  return out;
}

}  // namespace spider
