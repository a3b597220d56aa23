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

#pragma once

// Finite model of Hilbert modules over C(Y): a bundle is a dimension per
// point with the standard inner product on each fiber, and a module map is
// one matrix per point. A descent datum along mu: Y -> X is a bundle E over
// Y plus unitaries phi(y1, y2): E_{y2} -> E_{y1} on Y x_X Y satisfying
//
//   phi(y1, y2) phi(y2, y3) = phi(y1, y3)   for all (y1, y2, y3) over one x.

#include <array>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "hcb/matrix.hpp"
#include "hcb/tensor.hpp"
#include "hcb/topology.hpp"

namespace hcb {

inline constexpr double kDescentTolerance = 1e-9;

struct FiniteBundle {
    SpacePtr space;
    std::vector<std::size_t> dims;

    FiniteBundle() = default;
    /// Throws InputError unless dims has one entry per point.
    FiniteBundle(SpacePtr space, std::vector<std::size_t> dims);
    friend bool operator==(const FiniteBundle &a, const FiniteBundle &b) {
        return a.dims == b.dims && *a.space == *b.space;
    }
};

/// One dims_target(y) x dims_source(y) block per point.
struct BundleMap {
    FiniteBundle source;
    FiniteBundle target;
    std::vector<ComplexMatrix> blocks;

    BundleMap() = default;
    BundleMap(FiniteBundle source, FiniteBundle target, std::vector<ComplexMatrix> blocks);
    static BundleMap identity(const FiniteBundle &b);
};

struct DescentDatum {
    SpaceMap mu;
    FiniteBundle bundle;  // over mu's domain
    ProductPtr pairs;     // fibered_product(mu, mu)
    std::vector<ComplexMatrix> phi;  // per pair, dims(y1) x dims(y2)

    DescentDatum() = default;
    /// Throws InputError on a bundle over the wrong space or misshapen blocks.
    DescentDatum(SpaceMap mu, FiniteBundle bundle, std::vector<ComplexMatrix> phi);

    const ComplexMatrix &at(std::size_t y1, std::size_t y2) const;
};

/// dims(y) = dims(m(y)).
FiniteBundle pullback(const FiniteBundle &f, const SpaceMap &m);
/// Block at y is the block of t at m(y).
BundleMap pullback_map(const BundleMap &t, const SpaceMap &m);

/// E = pullback(f, mu), every phi block the identity.
DescentDatum canonical_datum(const FiniteBundle &f, const SpaceMap &mu);

struct CocycleReport {
    bool passed = true;
    double cocycle_residual = 0.0;                 // worst over triples
    std::array<std::size_t, 3> worst_triple{};     // first triple attaining it
    double unitarity_residual = 0.0;               // worst over pairs
    std::size_t worst_pair = 0;                    // index into pairs
};

/// Residuals are operator norms of phi(y1,y2) phi(y2,y3) - phi(y1,y3) and
/// of phi^* phi - I, phi phi^* - I. A non-square block counts as residual 1.
CocycleReport check_cocycle(const DescentDatum &d, double tol = kDescentTolerance);

/// First point of each fiber. Throws InputError when mu is not surjective.
std::vector<std::size_t> default_section(const SpaceMap &mu);

struct Reconstruction {
    std::vector<std::size_t> section;
    FiniteBundle base;  // F over X, F_x = E_{s(x)}
    BundleMap unit;     // u: pullback(F, mu) -> E, u_y = phi(y, s(mu y))
};

/// Throws InputError when mu is not surjective or the section is not one,
/// CheckFailure when d fails the cocycle check at tol.
Reconstruction reconstruct(const DescentDatum &d, std::span<const std::size_t> section = {},
                           double tol = kDescentTolerance);

/// max over pairs of ||u_{y1} - phi(y1, y2) u_{y2}||: zero exactly when u is
/// a morphism from canonical_datum(F) to d.
double unit_residual(const Reconstruction &r, const DescentDatum &d);
/// max over points of ||u^* u - I|| and ||u u^* - I||.
double unitary_residual(const BundleMap &u);

/// The unitary F1 -> F2 between two reconstructions of the same datum,
/// w_x = phi(s2(x), s1(x)).
BundleMap section_isomorphism(const Reconstruction &r1, const Reconstruction &r2, const DescentDatum &d);

/// max over pairs of ||t_{y1} phi1(y1, y2) - phi2(y1, y2) t_{y2}||.
double morphism_residual(const BundleMap &t, const DescentDatum &d1, const DescentDatum &d2);

/// The map s over X with t_y = u2_y s_{mu y} u1_y^*, computed at the default
/// sections. Throws CheckFailure naming the worst pair when t is not a
/// morphism of descent data within tol.
BundleMap morphism_descends(const BundleMap &t, const DescentDatum &d1, const DescentDatum &d2,
                            double tol = kDescentTolerance);

/// phi(y1, y2) = v_{y1} v_{y2}^*.
DescentDatum coboundary_datum(const SpaceMap &mu, std::span<const ComplexMatrix> v);
/// Coboundary with Haar unitaries of size dims[x] over each base point x.
DescentDatum random_coboundary(const SpaceMap &mu, std::span<const std::size_t> base_dims, std::mt19937_64 &rng);

}  // namespace hcb
