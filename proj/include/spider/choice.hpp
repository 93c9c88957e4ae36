// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spider/errors.hpp"

namespace spider {

// A finite byte sequence of recorded pseudo-random choices; the fuzzer's
// mutable genotype. Decoding is deterministic in the byte content: each
// next_choice consumes the minimal number of bytes (big-endian, reduced
// modulo the bound), so identical bytes always decode to identical values.
//
// When the stream is exhausted mid-decode the behavior depends on the
// policy: Append draws fresh bytes from the campaign RNG and records them
// so that every executed input corresponds to a complete, replayable byte
// string; Fail raises ReplayError (replaying a recorded stream must never
// need new bytes).
class ChoiceStream {
 public:
  enum class Exhaustion { Append, Fail };

  ChoiceStream(std::vector<std::uint8_t> bytes, Exhaustion policy,
               std::mt19937_64* rng = nullptr)
      : bytes_(std::move(bytes)), policy_(policy), rng_(rng) {
    if (policy_ == Exhaustion::Append && rng_ == nullptr) {
      throw UsageError("ChoiceStream: Append policy requires an RNG");
    }
  }

  // Uniform-ish value in [0, bound). bound >= 1. bound 1 consumes nothing.
  std::uint64_t next_choice(std::uint64_t bound);

  // Bytes consumed so far (cursor position).
  size_t consumed() const { return cursor_; }

  // Bytes appended by the exhaustion policy during this decode.
  size_t appended() const { return appended_; }

  // Full byte content with appended bytes folded in.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  // The consumed prefix: the complete genotype of everything decoded so
  // far. Trailing never-read bytes are irrelevant to any decode.
  std::vector<std::uint8_t> consumed_bytes() const {
    return {bytes_.begin(), bytes_.begin() + static_cast<std::ptrdiff_t>(cursor_)};
  }

  // Minimal byte width for a bound: smallest w with 256^w >= bound.
  static int width_for(std::uint64_t bound);

 private:
  std::uint8_t take_byte();

  std::vector<std::uint8_t> bytes_;
  size_t cursor_ = 0;
  size_t appended_ = 0;
  Exhaustion policy_;
  std::mt19937_64* rng_;
};

}  // namespace spider
