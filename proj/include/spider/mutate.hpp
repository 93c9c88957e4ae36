// Copyright 2026 the spider authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace spider {

// Produces a mutant of a choice stream: 1-16 applications drawn from
// {bit flip, random byte overwrite, byte block duplication, byte block
// deletion, tail truncation, tail extension with random bytes}. The result
// is never empty.
std::vector<std::uint8_t> mutate(const std::vector<std::uint8_t>& stream,
                                 std::mt19937_64& rng);

}  // namespace spider
