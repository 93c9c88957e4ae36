// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/choice.hpp"

namespace spider {

int ChoiceStream::width_for(std::uint64_t bound) {
  if (bound <= 1) return 0;
  int w = 0;
  // smallest w with 256^w >= bound
  std::uint64_t cap = 1;
  while (cap < bound) {
    if (w == 8) return 8;  // 256^8 > 2^63, covers every bound we use
    cap <<= 8;
    ++w;
  }
  return w;
}

std::uint8_t ChoiceStream::take_byte() {
  if (cursor_ == bytes_.size()) {
    if (policy_ == Exhaustion::Fail) {
      throw ReplayError("choice stream exhausted during replay");
    }
    bytes_.push_back(static_cast<std::uint8_t>((*rng_)() & 0xff));
    ++appended_;
  }
  return bytes_[cursor_++];
}

std::uint64_t ChoiceStream::next_choice(std::uint64_t bound) {
  if (bound == 0) throw UsageError("next_choice: bound must be >= 1");
  int w = width_for(bound);
  std::uint64_t value = 0;
  for (int i = 0; i < w; ++i) {
    value = (value << 8) | take_byte();  // big-endian
  }
  return w == 0 ? 0 : value % bound;
}

}  // namespace spider
