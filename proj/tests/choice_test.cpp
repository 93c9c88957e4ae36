// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "spider/choice.hpp"

#include <gtest/gtest.h>

namespace spider {
namespace {

TEST(ChoiceStream, BoundOneConsumesNothing) {
  ChoiceStream s({0xaa, 0xbb}, ChoiceStream::Exhaustion::Fail);
  EXPECT_EQ(s.next_choice(1), 0u);
  EXPECT_EQ(s.consumed(), 0u);
}

TEST(ChoiceStream, SingleByteModuloReduction) {
  ChoiceStream s({0x05}, ChoiceStream::Exhaustion::Fail);
  EXPECT_EQ(s.next_choice(4), 1u);  // 5 mod 4
  EXPECT_EQ(s.consumed(), 1u);
}

TEST(ChoiceStream, BigEndianMultiByte) {
  // bound 300 needs two bytes; 0x01 0x2c = 300 -> 300 % 300 = 0
  ChoiceStream s({0x01, 0x2c}, ChoiceStream::Exhaustion::Fail);
  EXPECT_EQ(s.next_choice(300), 0u);
  EXPECT_EQ(s.consumed(), 2u);
}

TEST(ChoiceStream, WidthBoundaries) {
  EXPECT_EQ(ChoiceStream::width_for(1), 0);
  EXPECT_EQ(ChoiceStream::width_for(2), 1);
  EXPECT_EQ(ChoiceStream::width_for(256), 1);
  EXPECT_EQ(ChoiceStream::width_for(257), 2);
  EXPECT_EQ(ChoiceStream::width_for(65536), 2);
  EXPECT_EQ(ChoiceStream::width_for(65537), 3);
}

TEST(ChoiceStream, ExhaustionAppendsAndRoundTrips) {
  std::mt19937_64 rng(7);
  ChoiceStream s({}, ChoiceStream::Exhaustion::Append, &rng);
  std::uint64_t v = s.next_choice(256);
  EXPECT_EQ(s.appended(), 1u);
  EXPECT_EQ(v, s.bytes()[0]);  // value equals the appended byte

  // Re-decoding bytes + appended reproduces the value.
  ChoiceStream replay(s.bytes(), ChoiceStream::Exhaustion::Fail);
  EXPECT_EQ(replay.next_choice(256), v);
}

TEST(ChoiceStream, FailPolicyRaisesOnExhaustion) {
  ChoiceStream s({0x01}, ChoiceStream::Exhaustion::Fail);
  EXPECT_EQ(s.next_choice(256), 1u);
  EXPECT_THROW(s.next_choice(2), ReplayError);
}

TEST(ChoiceStream, DeterministicDecode) {
  std::vector<std::uint8_t> bytes{9, 8, 7, 6, 5, 4, 3, 2, 1};
  for (int round = 0; round < 3; ++round) {
    ChoiceStream a(bytes, ChoiceStream::Exhaustion::Fail);
    ChoiceStream b(bytes, ChoiceStream::Exhaustion::Fail);
    for (std::uint64_t bound : {3u, 17u, 300u, 2u}) {
      EXPECT_EQ(a.next_choice(bound), b.next_choice(bound));
    }
  }
}

TEST(ChoiceStream, ConsumedBytesIsThePrefix) {
  std::mt19937_64 rng(3);
  ChoiceStream s({1, 2, 3, 4, 5, 6, 7, 8}, ChoiceStream::Exhaustion::Append,
                 &rng);
  s.next_choice(256);
  s.next_choice(300);
  auto prefix = s.consumed_bytes();
  EXPECT_EQ(prefix.size(), 3u);
  EXPECT_EQ(prefix, (std::vector<std::uint8_t>{1, 2, 3}));
}

TEST(ChoiceStream, ZeroBoundRejected) {
  ChoiceStream s({1}, ChoiceStream::Exhaustion::Fail);
  EXPECT_THROW(s.next_choice(0), UsageError);
}

}  // namespace
}  // namespace spider
