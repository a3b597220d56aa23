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
#include <numbers>
#include <random>

#include "hcb/error.hpp"
#include "hcb/sdp.hpp"

namespace {

using hcb::ComplexMatrix;
using hcb::cplx;
using hcb::FiberBlockGrid;

constexpr double kEps = hcb::kDefaultTolerance;

FiberBlockGrid scalar_grid(std::size_t p, std::size_t q, std::vector<cplx> entries) {
    std::vector<ComplexMatrix> blocks;
    for (cplx e : entries) {
        blocks.push_back(ComplexMatrix::from_rows({{e}}));
    }
    return hcb::make_grid(p, q, 1, std::move(blocks));
}

FiberBlockGrid random_grid(std::size_t p, std::size_t q, std::size_t n, std::mt19937_64 &rng) {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t i = 0; i < p * q; ++i) {
        blocks.push_back(hcb::random_gaussian(n, n, rng));
    }
    return hcb::make_grid(p, q, n, std::move(blocks));
}

hcb::SdpResult solve(const FiberBlockGrid &g) { return hcb::factorization_norm({g, kEps}); }

// The certificate reproduces the grid and its norms match the value.
void expect_certified(const FiberBlockGrid &g, const hcb::SdpResult &r) {
    ASSERT_EQ(r.status, hcb::SdpStatus::converged);
    const auto rec = hcb::external_product(r.factorization);
    ASSERT_EQ(rec.size(), g.blocks.size());
    for (std::size_t i = 0; i < rec.size(); ++i) {
        EXPECT_LE((rec[i] - g.blocks[i]).max_abs(), 10 * kEps * std::max(1.0, r.value));
    }
    EXPECT_LE(r.factorization.bound(), r.value * (1 + 10 * kEps) + 1e-14);
    EXPECT_LE(r.lower_bound, r.upper_bound);
    EXPECT_LE(r.upper_bound - r.lower_bound, kEps * std::max(1.0, r.value));
    EXPECT_LE(r.factorization.inner, (g.p() + g.q()) * g.level);
}

TEST(FactorizationNorm, ScalarOneByOne) {
    const auto g = scalar_grid(1, 1, {cplx(3, -4)});
    const auto r = solve(g);
    EXPECT_NEAR(r.value, 5.0, 5 * kEps);
    expect_certified(g, r);
    EXPECT_NEAR(hcb::brute_force_norm(g), 5.0, 1e-9);
}

TEST(FactorizationNorm, AllOnes) {
    const auto g = scalar_grid(2, 2, {1, 1, 1, 1});
    const auto r = solve(g);
    EXPECT_NEAR(r.value, 1.0, kEps);
    expect_certified(g, r);
    EXPECT_NEAR(hcb::brute_force_norm(g), 1.0, 1e-6);
}

TEST(FactorizationNorm, Hadamard) {
    const auto g = scalar_grid(2, 2, {1, 1, 1, -1});
    const auto r = solve(g);
    EXPECT_NEAR(r.value, std::numbers::sqrt2, 1e-6);
    expect_certified(g, r);
    // D = H / sqrt2 rows, E = sqrt2 I columns.
    hcb::Factorization f;
    f.level = 1;
    f.inner = 2;
    const double s = std::numbers::sqrt2;
    f.left = {ComplexMatrix::from_rows({{1 / s, 1 / s}}), ComplexMatrix::from_rows({{1 / s, -1 / s}})};
    f.right = {ComplexMatrix::from_rows({{s}, {0}}), ComplexMatrix::from_rows({{0}, {s}})};
    const auto rec = hcb::external_product(f);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(rec[i](0, 0) - g.blocks[i](0, 0)), 0.0, 1e-15);
    }
    EXPECT_NEAR(f.bound(), s, 1e-12);
    EXPECT_NEAR(hcb::weighted_trace_norm_bound(g), s, 1e-12);
    EXPECT_NEAR(hcb::brute_force_norm(g), s, 1e-5);
}

TEST(FactorizationNorm, EmptyAndZeroGrids) {
    const auto r = solve(FiberBlockGrid{});
    EXPECT_EQ(r.value, 0.0);
    const auto z = hcb::make_grid(2, 3, 2, std::vector<ComplexMatrix>(6, ComplexMatrix(2, 2)));
    const auto rz = solve(z);
    EXPECT_EQ(rz.value, 0.0);
    EXPECT_EQ(rz.factorization.left.size(), 2u);
    EXPECT_EQ(rz.factorization.right.size(), 3u);
    EXPECT_THROW(hcb::factorization_norm({z, 0.0}), hcb::InputError);
}

TEST(FactorizationNorm, BracketedByMinNormAndSmallerSide) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t p = 1 + trial % 4, q = 1 + (trial / 4) % 4, n = 1 + trial % 3;
        const auto g = random_grid(p, q, n, rng);
        const auto r = solve(g);
        expect_certified(g, r);
        const double mn = hcb::min_norm(g);
        EXPECT_GE(r.value, mn * (1 - 2 * kEps));
        EXPECT_LE(r.value, std::sqrt(static_cast<double>(std::min(p, q))) * mn * (1 + 2 * kEps));
        EXPECT_GE(r.value, hcb::weighted_trace_norm_bound(g) * (1 - 2 * kEps));
    }
}

TEST(FactorizationNorm, Homogeneous) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 8; ++trial) {
        auto g = random_grid(2, 3, 2, rng);
        const double v = solve(g).value;
        const cplx lambda = std::polar(0.1 + trial, 0.3 * trial);
        for (auto &b : g.blocks) {
            b *= lambda;
        }
        EXPECT_NEAR(solve(g).value, std::abs(lambda) * v, 2 * kEps * std::abs(lambda) * std::max(1.0, v));
    }
}

TEST(FactorizationNorm, Subadditive) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const auto a = random_grid(3, 2, 2, rng);
        const auto b = random_grid(3, 2, 2, rng);
        auto s = a;
        for (std::size_t i = 0; i < s.blocks.size(); ++i) {
            s.blocks[i] += b.blocks[i];
        }
        const double va = solve(a).value, vb = solve(b).value;
        EXPECT_LE(solve(s).value, va + vb + 4 * kEps * (va + vb));
    }
}

TEST(FactorizationNorm, UnitaryInvariance) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 6; ++trial) {
        auto g = random_grid(2, 2, 3, rng);
        const double v = solve(g).value;
        const ComplexMatrix u = hcb::random_unitary(3, rng), w = hcb::random_unitary(3, rng);
        for (auto &b : g.blocks) {
            b = u * b * w;
        }
        EXPECT_NEAR(solve(g).value, v, 2 * kEps * std::max(1.0, v));
    }
}

TEST(FactorizationNorm, TransposeChangesValueBySmallerSideAtMost) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t p = 2 + trial % 3, q = 2 + (trial / 3) % 3;
        const auto g = random_grid(p, q, 2, rng);
        const double v = solve(g).value, vt = solve(g.transposed()).value;
        const double c = std::sqrt(static_cast<double>(std::min(p, q))) * (1 + 4 * kEps);
        EXPECT_LE(vt, c * v);
        EXPECT_LE(v, c * vt);
    }
}

TEST(BruteForce, AgreesOnMatrixValuedGrids) {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 4; ++trial) {
        const auto g = random_grid(2, 2, 2, rng);
        const double v = solve(g).value;
        const double bf = hcb::brute_force_norm(g);
        EXPECT_GE(bf, v * (1 - 1e-6));
        EXPECT_LE(bf, v * (1 + 1e-3));
    }
}

TEST(BruteForce, Preconditions) {
    const auto g = scalar_grid(2, 2, {1, 0, 0, 1});
    EXPECT_THROW(hcb::brute_force_norm(g, {.inner_dim_cap = 1}), hcb::InputError);
    std::mt19937_64 rng(27);
    EXPECT_THROW(hcb::brute_force_norm(random_grid(2, 2, 4, rng)), hcb::InputError);
    EXPECT_NEAR(hcb::brute_force_norm(g, {.inner_dim_cap = 2}), 1.0, 1e-6);
}

TEST(WeightedTraceNorm, RejectsInadmissibleWeights) {
    const auto g = scalar_grid(2, 2, {1, 1, 1, -1});
    const std::vector<ComplexMatrix> bad{ComplexMatrix::from_rows({{1}}), ComplexMatrix::from_rows({{1}})};
    EXPECT_THROW(hcb::weighted_trace_norm_bound(g, bad, {}), hcb::InputError);
    const std::vector<ComplexMatrix> neg{ComplexMatrix::from_rows({{1.5}}), ComplexMatrix::from_rows({{-0.5}})};
    EXPECT_THROW(hcb::weighted_trace_norm_bound(g, neg, {}), hcb::InputError);
}

}  // namespace
