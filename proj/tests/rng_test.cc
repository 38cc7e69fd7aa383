// Copyright 2026 The qpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpe/rng.h"

#include <gtest/gtest.h>

#include <set>

using namespace qpe;

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(philox, known_answers) {
    using Block = std::array<uint32_t, 4>;
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(counter_rng, deterministic_per_stream) {
    CounterRng a(42, 7), b(42, 7), c(42, 8), e(43, 7);
    for (int i = 0; i < 10; i++) {
        uint64_t va = a.next_u64();
        EXPECT_EQ(va, b.next_u64());
        EXPECT_NE(va, c.next_u64());
        EXPECT_NE(va, e.next_u64());
    }
}

TEST(counter_rng, uniform_range_and_mean) {
    CounterRng r(1, 0);
    double total = 0;
    const int n = 200000;
    for (int i = 0; i < n; i++) {
        double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        total += u;
    }
    EXPECT_NEAR(total / n, 0.5, 0.005);
}

TEST(counter_rng, below_is_in_range_and_covers) {
    CounterRng r(2, 0);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; i++) {
        uint64_t v = r.below(7);
        ASSERT_LT(v, 7u);
        counts[v]++;
    }
    for (int c : counts) {
        EXPECT_NEAR(c, 10000, 500);
    }
    EXPECT_EQ(r.below(1), 0u);
}

TEST(derive_seed, distinct) {
    std::set<uint64_t> seen;
    for (uint64_t a = 0; a < 20; a++) {
        for (uint64_t b = 0; b < 20; b++) {
            seen.insert(derive_seed(1, a, b));
        }
    }
    EXPECT_EQ(seen.size(), 400u);
    EXPECT_EQ(derive_seed(5, 1, 2), derive_seed(5, 1, 2));
    EXPECT_NE(derive_seed(5, 1, 2), derive_seed(5, 2, 1));
}
