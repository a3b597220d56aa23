// Copyright 2026 The hcb Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hcb/flip_analysis.hpp"
#include "hcb/witness.hpp"

namespace {

using hcb::make_space;
using hcb::SpaceMap;

constexpr double kEps = hcb::kDefaultTolerance;

SpaceMap with_fibers(const std::vector<std::size_t> &sizes, const hcb::SpacePtr &base, const std::string &prefix) {
    std::vector<std::string> labels;
    std::vector<std::size_t> assign;
    for (std::size_t x = 0; x < sizes.size(); ++x) {
        for (std::size_t k = 0; k < sizes[x]; ++k) {
            labels.push_back(prefix + std::to_string(labels.size()));
            assign.push_back(x);
        }
    }
    return SpaceMap(make_space(labels), base, assign);
}

hcb::SamplingConfig config(std::size_t level, int trials) {
    hcb::SamplingConfig c;
    c.level = level;
    c.trials = trials;
    c.seed = 7;
    return c;
}

TEST(CertifiedFlipNorm, Examples) {
    auto xy = make_space({"x", "y"});
    EXPECT_DOUBLE_EQ(hcb::certified_flip_cb_norm(SpaceMap::identity(xy), SpaceMap::identity(xy)), 1.0);
    for (std::size_t m = 1; m <= 6; ++m) {
        const auto fp = hcb::constant_product(m, m);
        EXPECT_DOUBLE_EQ(hcb::certified_flip_cb_norm(fp->left_map, fp->right_map), std::sqrt(static_cast<double>(m)));
    }
    const SpaceMap a = with_fibers({2, 1}, xy, "a"), b = with_fibers({3, 1}, xy, "b");
    EXPECT_DOUBLE_EQ(hcb::certified_flip_cb_norm(a, b), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(hcb::certified_flip_cb_norm(b, a), std::sqrt(2.0));
}

TEST(CertifiedFlipNorm, Monotonicity) {
    auto xy = make_space({"x", "y"});
    const double before = hcb::certified_flip_cb_norm(with_fibers({2, 1}, xy, "a"), with_fibers({3, 1}, xy, "b"));
    // Grow the smaller fiber at the argmax point.
    EXPECT_GT(hcb::certified_flip_cb_norm(with_fibers({3, 1}, xy, "a"), with_fibers({3, 1}, xy, "b")), before);
    // Growing anywhere else never decreases it.
    EXPECT_GE(hcb::certified_flip_cb_norm(with_fibers({2, 2}, xy, "a"), with_fibers({3, 1}, xy, "b")), before);
    EXPECT_GE(hcb::certified_flip_cb_norm(with_fibers({2, 1}, xy, "a"), with_fibers({4, 1}, xy, "b")), before);
}

TEST(FlipLowerBound, IdentityMapsGiveOne) {
    auto xyz = make_space({"x", "y", "z"});
    const auto b = hcb::flip_norm_lower_bound(SpaceMap::identity(xyz), SpaceMap::identity(xyz), config(3, 5));
    EXPECT_NEAR(b.lower_bound, 1.0, kEps);
    EXPECT_EQ(b.samples.size(), 5u);
}

TEST(FlipLowerBound, ConstantMapsTwoAtLevelTwo) {
    const auto fp = hcb::constant_product(2, 2);
    const auto b = hcb::flip_norm_lower_bound(fp->left_map, fp->right_map, config(2, 5));
    EXPECT_NEAR(b.lower_bound, std::sqrt(2.0), 1e-4);
    EXPECT_EQ(b.samples[b.best_sample].source, "witness");
}

TEST(FlipLowerBound, LevelBelowWitnessSizeStaysBelowCap) {
    const auto fp = hcb::constant_product(3, 3);
    const auto b = hcb::flip_norm_lower_bound(fp->left_map, fp->right_map, config(2, 5));
    EXPECT_LE(b.lower_bound, std::sqrt(3.0) + kEps);
    // The level-2 witness inside the 3x3 fiber gives at least sqrt 2.
    EXPECT_GE(b.lower_bound, std::sqrt(2.0) - 1e-4);
}

TEST(FlipLowerBound, DeterministicPerSeed) {
    auto xy = make_space({"x", "y"});
    const SpaceMap a = with_fibers({2, 1}, xy, "a"), c = with_fibers({3, 1}, xy, "b");
    const auto b1 = hcb::flip_norm_lower_bound(a, c, config(2, 4));
    const auto b2 = hcb::flip_norm_lower_bound(a, c, config(2, 4));
    ASSERT_EQ(b1.samples.size(), b2.samples.size());
    for (std::size_t i = 0; i < b1.samples.size(); ++i) {
        EXPECT_EQ(b1.samples[i].h, b2.samples[i].h);
        EXPECT_EQ(b1.samples[i].h_flip, b2.samples[i].h_flip);
    }
}

TEST(FlipLowerBound, SkipsZeroSamples) {
    const auto fp = hcb::constant_product(1, 1);
    auto c = config(1, 6);
    c.sparsity = 1.0;
    const auto b = hcb::flip_norm_lower_bound(fp->left_map, fp->right_map, c);
    EXPECT_EQ(b.skipped, 6u);
    EXPECT_TRUE(b.samples.empty());
}

TEST(VerifyTheorem, IdentityMaps) {
    auto xy = make_space({"x", "y"});
    const auto r = hcb::verify_theorem(SpaceMap::identity(xy), SpaceMap::identity(xy), config(2, 5));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.max_min_fiber, 1u);
    EXPECT_NEAR(r.comparison_ratio_max, 1.0, 2 * kEps);
    EXPECT_NEAR(r.flip_lower_bound, 1.0, 2 * kEps);
}

TEST(VerifyTheorem, ConstantMapsTwo) {
    const auto fp = hcb::constant_product(2, 2);
    const auto r = hcb::verify_theorem(fp->left_map, fp->right_map, config(2, 6));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.max_min_fiber, 2u);
    EXPECT_DOUBLE_EQ(r.comparison_cap, std::sqrt(2.0));
    EXPECT_NEAR(r.flip_lower_bound, std::sqrt(2.0), 1e-6);
    EXPECT_NEAR(r.reversed_comparison_max, std::sqrt(2.0), 1e-6);
}

TEST(VerifyTheorem, MixedFibersStayBelowCaps) {
    auto xy = make_space({"x", "y"});
    auto c = config(3, 12);
    c.sparsity = 0.25;
    const auto r = hcb::verify_theorem(with_fibers({2, 1}, xy, "a"), with_fibers({3, 1}, xy, "b"), c);
    EXPECT_TRUE(r.passed());
    for (const auto &s : r.sampling.samples) {
        EXPECT_LE(s.h_flip, r.certified * s.h * (1 + 3 * kEps));
        EXPECT_LE(s.flip_ratio(), s.flip_comparison_ratio() * (1 + 3 * kEps));
    }
}

}  // namespace
