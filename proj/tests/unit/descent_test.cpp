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

#include "hcb/descent.hpp"
#include "hcb/error.hpp"

namespace {

using hcb::BundleMap;
using hcb::ComplexMatrix;
using hcb::cplx;
using hcb::DescentDatum;
using hcb::FiniteBundle;
using hcb::make_space;
using hcb::SpaceMap;

SpaceMap two_to_one() { return SpaceMap(make_space({"a", "b"}), make_space({"x"}), {0, 0}); }

// Rank-one datum on {a, b} -> {x}: phi(a,b) = e^{it}, phi(b,a) = e^{-it},
// phi(a,a) = 1, phi(b,b) = e^{id}.
DescentDatum phase_datum(double theta, double delta) {
    const SpaceMap mu = two_to_one();
    auto one = [](cplx z) { return ComplexMatrix(1, 1, {z}); };
    // pairs in order (a,a), (a,b), (b,a), (b,b)
    return DescentDatum(mu, FiniteBundle(mu.domain(), {1, 1}),
                        {one(1.0), one(std::polar(1.0, theta)), one(std::polar(1.0, -theta)), one(std::polar(1.0, delta))});
}

SpaceMap random_cover(std::mt19937_64 &rng, std::size_t nx) {
    std::vector<std::string> xs, ys;
    std::vector<std::size_t> assign;
    for (std::size_t x = 0; x < nx; ++x) {
        xs.push_back("x" + std::to_string(x));
        const std::size_t k = 1 + rng() % 4;
        for (std::size_t i = 0; i < k; ++i) {
            ys.push_back("y" + std::to_string(ys.size()));
            assign.push_back(x);
        }
    }
    return SpaceMap(make_space(ys), make_space(xs), assign);
}

TEST(Pullback, IdentityAndTrivialBundles) {
    auto xs = make_space({"x", "y"});
    const FiniteBundle f(xs, {2, 0});
    EXPECT_EQ(hcb::pullback(f, SpaceMap::identity(xs)), f);
    const SpaceMap mu(make_space({"a", "b", "c"}), xs, {0, 1, 1});
    const FiniteBundle one(xs, {1, 1});
    EXPECT_EQ(hcb::pullback(one, mu).dims, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Pullback, Functorial) {
    auto x = make_space({"x", "y"});
    const SpaceMap mu(make_space({"a", "b", "c"}), x, {0, 1, 1});
    const SpaceMap nu(make_space({"p", "q", "r", "s"}), mu.domain(), {2, 0, 1, 1});
    const FiniteBundle f(x, {3, 2});
    EXPECT_EQ(hcb::pullback(hcb::pullback(f, mu), nu), hcb::pullback(f, hcb::compose(mu, nu)));
    // Pullbacks along mu pi1 and mu pi2 agree on Y x_X Y.
    const auto fp = hcb::fibered_product(mu, mu);
    EXPECT_EQ(hcb::pullback(f, hcb::compose(mu, fp.proj1)).dims, hcb::pullback(f, hcb::compose(mu, fp.proj2)).dims);
}

TEST(CanonicalDatum, IdentitiesPassExactly) {
    auto x = make_space({"x", "y"});
    const SpaceMap mu(make_space({"a", "b", "c"}), x, {0, 0, 1});
    const FiniteBundle f(x, {2, 3});
    const DescentDatum d = hcb::canonical_datum(f, mu);
    for (std::size_t i = 0; i < d.phi.size(); ++i) {
        EXPECT_EQ(d.phi[i], ComplexMatrix::identity(f.dims[d.pairs->base[i]]));
    }
    const auto r = hcb::check_cocycle(d, 0.0);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.cocycle_residual, 0.0);

    const auto diag = hcb::canonical_datum(f, SpaceMap::identity(x));
    EXPECT_EQ(diag.phi.size(), 2u);
    EXPECT_TRUE(hcb::check_cocycle(diag, 0.0).passed);
}

TEST(CanonicalDatum, PulledBackMapsAreMorphisms) {
    std::mt19937_64 rng(51);
    auto x = make_space({"x", "y"});
    const SpaceMap mu(make_space({"a", "b", "c"}), x, {0, 0, 1});
    const FiniteBundle f(x, {2, 1}), g(x, {3, 2});
    const BundleMap s(f, g, {hcb::random_gaussian(3, 2, rng), hcb::random_gaussian(2, 1, rng)});
    const BundleMap t = hcb::pullback_map(s, mu);
    EXPECT_EQ(hcb::morphism_residual(t, hcb::canonical_datum(f, mu), hcb::canonical_datum(g, mu)), 0.0);
}

TEST(CheckCocycle, PhaseDatumPasses) {
    const auto r = hcb::check_cocycle(phase_datum(0.8, 0.0));
    EXPECT_TRUE(r.passed);
    EXPECT_LE(r.cocycle_residual, 1e-15);
}

TEST(CheckCocycle, PerturbedDiagonalFailsAtABB) {
    const double delta = 0.3;
    const DescentDatum d = phase_datum(0.8, delta);
    const auto r = hcb::check_cocycle(d);
    EXPECT_FALSE(r.passed);
    EXPECT_NEAR(r.cocycle_residual, std::abs(std::polar(1.0, delta) - 1.0), 1e-14);
    EXPECT_EQ(d.mu.domain()->label(r.worst_triple[0]), "a");
    EXPECT_EQ(d.mu.domain()->label(r.worst_triple[1]), "b");
    EXPECT_EQ(d.mu.domain()->label(r.worst_triple[2]), "b");
}

TEST(CheckCocycle, NonUnitaryBlockFails) {
    const SpaceMap mu = two_to_one();
    auto one = [](cplx z) { return ComplexMatrix(1, 1, {z}); };
    const DescentDatum d(mu, FiniteBundle(mu.domain(), {1, 1}), {one(2.0), one(1.0), one(1.0), one(1.0)});
    const auto r = hcb::check_cocycle(d);
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.unitarity_residual, 1.0);
    EXPECT_EQ(d.pairs->space->label(r.worst_pair), "a|a");
}

TEST(DescentDatumTest, ShapeValidation) {
    const SpaceMap mu = two_to_one();
    EXPECT_THROW(DescentDatum(mu, FiniteBundle(mu.domain(), {1, 2}), std::vector<ComplexMatrix>(4, ComplexMatrix(1, 1))),
                 hcb::InputError);
    EXPECT_THROW(DescentDatum(mu, FiniteBundle(mu.domain(), {1, 1}), {}), hcb::InputError);
}

TEST(Reconstruct, CanonicalRoundTrip) {
    auto x = make_space({"x", "y"});
    const SpaceMap mu(make_space({"a", "b", "c"}), x, {0, 0, 1});
    const FiniteBundle f(x, {2, 3});
    const auto r = hcb::reconstruct(hcb::canonical_datum(f, mu));
    EXPECT_EQ(r.base, f);
    for (std::size_t y = 0; y < 3; ++y) {
        EXPECT_EQ(r.unit.blocks[y], ComplexMatrix::identity(f.dims[mu(y)]));
    }
}

TEST(Reconstruct, PhaseDatum) {
    const double theta = 0.8;
    const DescentDatum d = phase_datum(theta, 0.0);
    const auto r = hcb::reconstruct(d);
    EXPECT_EQ(r.base.dims, (std::vector<std::size_t>{1}));
    EXPECT_EQ(r.unit.blocks[0](0, 0), cplx(1.0));
    EXPECT_NEAR(std::abs(r.unit.blocks[1](0, 0) - std::polar(1.0, -theta)), 0.0, 1e-15);
    EXPECT_LE(hcb::unit_residual(r, d), 1e-15);
}

TEST(Reconstruct, SectionIndependence) {
    std::mt19937_64 rng(52);
    const SpaceMap mu = random_cover(rng, 3);
    const std::vector<std::size_t> dims{2, 3, 1};
    const DescentDatum d = hcb::random_coboundary(mu, dims, rng);
    const auto r1 = hcb::reconstruct(d);
    std::vector<std::size_t> last(3);
    for (std::size_t x = 0; x < 3; ++x) {
        last[x] = mu.fiber(x).back();
    }
    const auto r2 = hcb::reconstruct(d, last);
    EXPECT_EQ(r1.base, r2.base);
    const BundleMap w = hcb::section_isomorphism(r1, r2, d);
    EXPECT_LE(hcb::unitary_residual(w), 1e-12);
    // u2 pullback(w) = u1 at every point.
    for (std::size_t y = 0; y < mu.domain()->size(); ++y) {
        EXPECT_LE((r2.unit.blocks[y] * w.blocks[mu(y)] - r1.unit.blocks[y]).max_abs(), 1e-12);
    }
}

TEST(Reconstruct, Errors) {
    auto x = make_space({"x", "y"});
    const SpaceMap not_onto(make_space({"a"}), x, {0});
    EXPECT_THROW(hcb::reconstruct(hcb::canonical_datum(FiniteBundle(x, {1, 1}), not_onto)), hcb::InputError);
    EXPECT_THROW(hcb::reconstruct(phase_datum(0.3, 0.2)), hcb::CheckFailure);
    EXPECT_THROW(hcb::reconstruct(phase_datum(0.3, 0.0), std::vector<std::size_t>{5}), hcb::InputError);
}

TEST(Coboundary, PassesAndSatisfiesDerivedIdentities) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const SpaceMap mu = random_cover(rng, 1 + trial % 3);
        std::vector<std::size_t> dims;
        for (std::size_t x = 0; x < mu.codomain()->size(); ++x) {
            dims.push_back(rng() % 4);
        }
        const DescentDatum d = hcb::random_coboundary(mu, dims, rng);
        ASSERT_TRUE(hcb::check_cocycle(d).passed);
        for (std::size_t y = 0; y < mu.domain()->size(); ++y) {
            EXPECT_LE((d.at(y, y) - ComplexMatrix::identity(d.bundle.dims[y])).max_abs(), 1e-12);
        }
        for (const auto &[a, b] : d.pairs->pairs) {
            EXPECT_LE((hcb::dagger(d.at(a, b)) - d.at(b, a)).max_abs(), 1e-12);
        }
        const auto r = hcb::reconstruct(d);
        EXPECT_LE(hcb::unit_residual(r, d), 1e-10);
        EXPECT_LE(hcb::unitary_residual(r.unit), 1e-10);
    }
}

TEST(MorphismDescends, IdentityAndPlantedMaps) {
    std::mt19937_64 rng(54);
    const SpaceMap mu = random_cover(rng, 2);
    const std::vector<std::size_t> d1dims{2, 1}, d2dims{3, 2};
    const DescentDatum d1 = hcb::random_coboundary(mu, d1dims, rng);
    const DescentDatum d2 = hcb::random_coboundary(mu, d2dims, rng);

    const BundleMap id = BundleMap::identity(d1.bundle);
    const BundleMap s_id = hcb::morphism_descends(id, d1, d1);
    for (const auto &b : s_id.blocks) {
        EXPECT_LE((b - ComplexMatrix::identity(b.rows())).max_abs(), 1e-12);
    }

    const auto r1 = hcb::reconstruct(d1), r2 = hcb::reconstruct(d2);
    std::vector<ComplexMatrix> planted{hcb::random_gaussian(3, 2, rng), hcb::random_gaussian(2, 1, rng)};
    std::vector<ComplexMatrix> tb;
    for (std::size_t y = 0; y < mu.domain()->size(); ++y) {
        tb.push_back(r2.unit.blocks[y] * planted[mu(y)] * hcb::dagger(r1.unit.blocks[y]));
    }
    const BundleMap t(d1.bundle, d2.bundle, tb);
    EXPECT_LE(hcb::morphism_residual(t, d1, d2), 1e-10);
    const BundleMap s = hcb::morphism_descends(t, d1, d2);
    for (std::size_t x = 0; x < 2; ++x) {
        EXPECT_LE((s.blocks[x] - planted[x]).max_abs(), 1e-10);
    }
}

TEST(MorphismDescends, RejectsNonMorphisms) {
    std::mt19937_64 rng(55);
    auto x = make_space({"x"});
    const SpaceMap mu(make_space({"a", "b", "c"}), x, {0, 0, 0});
    const std::vector<std::size_t> dims{2};
    const DescentDatum d = hcb::random_coboundary(mu, dims, rng);
    std::vector<ComplexMatrix> tb;
    for (int i = 0; i < 3; ++i) {
        tb.push_back(hcb::random_gaussian(2, 2, rng));
    }
    const BundleMap t(d.bundle, d.bundle, tb);
    EXPECT_GT(hcb::morphism_residual(t, d, d), 1e-3);
    EXPECT_THROW(hcb::morphism_descends(t, d, d), hcb::CheckFailure);
}

TEST(Perturbation, OneBlockTimesAUnitaryIsRejected) {
    std::mt19937_64 rng(56);
    auto x = make_space({"x"});
    const SpaceMap mu(make_space({"a", "b"}), x, {0, 0});
    const std::vector<std::size_t> dims{2};
    DescentDatum d = hcb::random_coboundary(mu, dims, rng);
    const std::size_t i = d.pairs->index_of(0, 1);
    d.phi[i] = d.phi[i] * hcb::random_unitary(2, rng);
    const auto r = hcb::check_cocycle(d);
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.cocycle_residual, 1e-3);
}

}  // namespace
