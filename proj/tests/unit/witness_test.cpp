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

#include <algorithm>
#include <cmath>
#include <random>

#include "hcb/error.hpp"
#include "hcb/haagerup.hpp"
#include "hcb/witness.hpp"

namespace {

using hcb::ComplexMatrix;
using hcb::cplx;
using hcb::PointRepresentation;
using hcb::RepresentationKind;

constexpr double kEps = hcb::kDefaultTolerance;

TEST(WitnessTensor, SizeOne) {
    const auto fp = hcb::constant_product(1, 1);
    const auto f = hcb::witness_tensor(fp, 0, 1);
    EXPECT_EQ(f.block(0), ComplexMatrix::from_rows({{1}}));
}

TEST(WitnessTensor, BlockEntriesAreRootsOfUnity) {
    for (std::size_t m = 2; m <= 5; ++m) {
        const auto fp = hcb::constant_product(m, m);
        const auto f = hcb::witness_tensor(fp, 0, m);
        const double two_pi = 2 * std::acos(-1.0);
        for (std::size_t j = 1; j <= m; ++j) {
            for (std::size_t k = 1; k <= m; ++k) {
                const ComplexMatrix &b = f.block(j - 1, k - 1);
                for (std::size_t i = 1; i <= m; ++i) {
                    for (std::size_t c = 1; c <= m; ++c) {
                        const double angle = two_pi * static_cast<double>(k) *
                                             (static_cast<double>(j) - static_cast<double>(i)) / static_cast<double>(m);
                        const cplx want = c == j ? std::polar(1.0, angle) : cplx(0);
                        EXPECT_NEAR(std::abs(b(i - 1, c - 1) - want), 0.0, 1e-12);
                    }
                }
                EXPECT_NEAR(hcb::op_norm(b), std::sqrt(static_cast<double>(m)), 1e-12);
            }
        }
    }
}

TEST(WitnessTensor, OtherPointsAreZero) {
    auto x = hcb::make_space({"x", "w"});
    const hcb::SpaceMap m1(hcb::make_space({"y0", "y1", "y2", "u"}), x, {0, 0, 0, 1});
    const hcb::SpaceMap m2(hcb::make_space({"z0", "z1", "z2", "v"}), x, {0, 0, 0, 1});
    const auto fp = hcb::make_product(m1, m2);
    const std::vector<std::size_t> ys{2, 0}, zs{1, 2};
    const auto f = hcb::witness_tensor(fp, 0, 2, ys, zs);
    EXPECT_EQ(hcb::op_norm(f.block(1, 0)), 0.0);
    EXPECT_EQ(hcb::op_norm(f.block(3, 3)), 0.0);
    EXPECT_GT(hcb::op_norm(f.block(2, 1)), 0.0);
    const auto d = hcb::witness_factorization(fp, 2, ys, zs);
    EXPECT_LE(hcb::max_entry_difference(hcb::external_product(d, fp), f), 1e-14);
}

TEST(WitnessTensor, Preconditions) {
    const auto fp = hcb::constant_product(2, 3);
    EXPECT_THROW(hcb::witness_tensor(fp, 0, 3), hcb::InputError);
    const std::vector<std::size_t> dup{0, 0}, ok{0, 1};
    EXPECT_THROW(hcb::witness_tensor(fp, 0, 2, dup, ok), hcb::InputError);
    EXPECT_THROW(hcb::witness_tensor(fp, 0, 2, ok, std::vector<std::size_t>{0}), hcb::InputError);
}

TEST(WitnessFactorization, ReproducesWithNormsSqrtMAndOne) {
    for (std::size_t m = 1; m <= 5; ++m) {
        const auto fp = hcb::constant_product(m, m);
        const auto f = hcb::witness_tensor(fp, 0, m);
        const auto d = hcb::witness_factorization(fp, 0, m);
        EXPECT_LE(hcb::max_entry_difference(hcb::external_product(d, fp), f), 1e-13);
        const double rm = std::sqrt(static_cast<double>(m));
        EXPECT_NEAR(d.left_norm(), rm, 1e-12);
        EXPECT_NEAR(d.right_norm(), 1.0, 1e-12);
        EXPECT_NEAR(d.bound(), rm, 1e-12);
        // DD^* = m I at every y_j, E^*E = I at every z_k.
        for (const auto &l : d.left) {
            EXPECT_LE((hcb::multiply_adjoint(l, l) - static_cast<double>(m) * ComplexMatrix::identity(m)).max_abs(),
                      1e-12);
        }
        for (const auto &r : d.right) {
            EXPECT_LE((hcb::dagger(r) * r - ComplexMatrix::identity(m)).max_abs(), 1e-12);
        }
    }
}

ComplexMatrix sum_eij_eij(std::size_t m) {
    ComplexMatrix out(m * m, m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out += hcb::kron(ComplexMatrix::unit(m, m, i, j), ComplexMatrix::unit(m, m, i, j));
        }
    }
    return out;
}

TEST(RhoPair, FlippedWitnessGivesMTimesAProjection) {
    for (std::size_t m = 1; m <= 5; ++m) {
        const auto fp = hcb::constant_product(m, m);
        const auto ff = hcb::flip(hcb::witness_tensor(fp, 0, m));
        const auto &p = *ff.product();
        const PointRepresentation rho2(RepresentationKind::fourier_conjugated, p.left_map.domain(), p.left_map.fiber(0));
        const PointRepresentation rho1(RepresentationKind::diagonal, p.right_map.domain(), p.right_map.fiber(0));
        const ComplexMatrix r = hcb::apply_rho_pair(ff, rho2, rho1);
        EXPECT_LE((r - sum_eij_eij(m)).max_abs(), 1e-12) << m;
        EXPECT_NEAR(hcb::op_norm(r), static_cast<double>(m), 1e-10);
    }
}

TEST(RhoPair, SizeOneGivesTheBlock) {
    std::mt19937_64 rng(41);
    const auto fp = hcb::constant_product(1, 1);
    const auto t = hcb::random_tensor(fp, 3, rng);
    const PointRepresentation r2(RepresentationKind::fourier_conjugated, fp->left_map.domain(), {0});
    const PointRepresentation r1(RepresentationKind::diagonal, fp->right_map.domain(), {0});
    EXPECT_LE((hcb::apply_rho_pair(t, r2, r1) - t.block(0)).max_abs(), 1e-14);
}

TEST(RhoPair, LowerBoundsTheHaagerupNorm) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t p = 2 + trial % 3, q = 2 + (trial / 3) % 3, k = std::min(p, q);
        const auto fp = hcb::constant_product(p, q);
        const auto t = hcb::random_tensor(fp, 1 + trial % 2, rng);
        std::vector<std::size_t> ys(k), zs(k);
        for (std::size_t i = 0; i < k; ++i) {
            ys[i] = (i + trial) % p;
            zs[i] = (2 * i + trial) % q;
        }
        std::sort(zs.begin(), zs.end());
        zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
        ys.resize(zs.size());
        const PointRepresentation r2(RepresentationKind::fourier_conjugated, fp->left_map.domain(), ys);
        const PointRepresentation r1(RepresentationKind::diagonal, fp->right_map.domain(), zs);
        const double lower = hcb::op_norm(hcb::apply_rho_pair(t, r2, r1));
        const double h = hcb::haagerup_norm(t).value;
        EXPECT_LE(lower, h + kEps * std::max(1.0, h));
    }
}

TEST(RhoPair, Mismatches) {
    const auto fp = hcb::constant_product(2, 2);
    const auto t = hcb::witness_tensor(fp, 0, 2);
    const PointRepresentation r2(RepresentationKind::diagonal, fp->left_map.domain(), {0, 1});
    const PointRepresentation r1small(RepresentationKind::diagonal, fp->right_map.domain(), {0});
    EXPECT_THROW(hcb::apply_rho_pair(t, r2, r1small), hcb::InputError);
    const PointRepresentation wrong_space(RepresentationKind::diagonal, hcb::make_space({"q", "r"}), {0, 1});
    EXPECT_THROW(hcb::apply_rho_pair(t, r2, wrong_space), hcb::InputError);

    auto x = hcb::make_space({"x", "w"});
    const hcb::SpaceMap m(hcb::make_space({"a", "b"}), x, {0, 1});
    const auto split = hcb::make_product(m, m);
    const PointRepresentation across(RepresentationKind::diagonal, m.domain(), {0, 1});
    EXPECT_THROW(hcb::apply_rho_pair(hcb::BalancedTensor::zero(split, 1), across, across), hcb::InputError);
    EXPECT_THROW(PointRepresentation(RepresentationKind::diagonal, m.domain(), {0, 0}), hcb::InputError);
}

TEST(Representations, StarHomomorphisms) {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> g;
    auto space = hcb::make_space({"p0", "p1", "p2", "p3", "p4"});
    for (auto kind : {RepresentationKind::diagonal, RepresentationKind::fourier_conjugated}) {
        const PointRepresentation rho(kind, space, {4, 1, 2});
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<cplx> f(5), h(5), fh(5), fbar(5);
            for (std::size_t i = 0; i < 5; ++i) {
                f[i] = {g(rng), g(rng)};
                h[i] = {g(rng), g(rng)};
                fh[i] = f[i] * h[i];
                fbar[i] = std::conj(f[i]);
            }
            EXPECT_LE((rho(fh) - rho(f) * rho(h)).max_abs(), 1e-12);
            EXPECT_LE((rho(fbar) - hcb::dagger(rho(f))).max_abs(), 1e-12);
        }
        // Indicators of distinct points are orthogonal projections.
        EXPECT_LE((rho.indicator(4) * rho.indicator(1)).max_abs(), 1e-12);
        EXPECT_LE((rho.indicator(2) * rho.indicator(2) - rho.indicator(2)).max_abs(), 1e-12);
        EXPECT_EQ(hcb::op_norm(rho.indicator(0)), 0.0);
    }
}

TEST(LowerBoundChain, HoldsForSmallM) {
    for (std::size_t m = 2; m <= 4; ++m) {
        const auto fp = hcb::constant_product(m, m);
        const auto f = hcb::witness_tensor(fp, 0, m);
        const auto ff = hcb::flip(f);
        const auto &p = *ff.product();
        const PointRepresentation rho2(RepresentationKind::fourier_conjugated, p.left_map.domain(), p.left_map.fiber(0));
        const PointRepresentation rho1(RepresentationKind::diagonal, p.right_map.domain(), p.right_map.fiber(0));
        const double rho_norm = hcb::op_norm(hcb::apply_rho_pair(ff, rho2, rho1));
        const double hf = hcb::haagerup_norm(f).value, hff = hcb::haagerup_norm(ff).value;
        const double dm = static_cast<double>(m);
        EXPECT_GE(hff, rho_norm * (1 - kEps));
        EXPECT_GE(rho_norm, std::sqrt(dm) * hf * (1 - 2 * kEps));
    }
}

}  // namespace
