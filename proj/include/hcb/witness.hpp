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

// The witness for the lower bound on the flip: a level-m tensor F over one
// base point whose Haagerup norm is sqrt(m) while that of its flip is m.
//
//   F = sum_{i,j,k} w^{k(j-i)} e_{i,j} (x) b_j (x) c_k,   w = exp(2 pi i / m)
//
// with b_j, c_k the indicators of m points y_j in mu1^{-1}x and z_k in
// mu2^{-1}x. Exponents use 1-based i, j, k.

#include <cstddef>
#include <span>
#include <vector>

#include "hcb/tensor.hpp"

namespace hcb {

enum class RepresentationKind {
    diagonal,            // rho(f) = sum_i f(p_i) e_{i,i}
    fourier_conjugated,  // rho(f) = U (sum_i f(p_i) e_{i,i}) U^*
};

/// A *-representation of C(space) on C^m given by evaluation at m distinct
/// points.
struct PointRepresentation {
    RepresentationKind kind = RepresentationKind::diagonal;
    SpacePtr space;
    std::vector<std::size_t> points;

    /// Throws InputError on repeated or out-of-range points.
    PointRepresentation(RepresentationKind kind, SpacePtr space, std::vector<std::size_t> points);

    std::size_t dim() const { return points.size(); }
    /// rho(f) for a function f on the whole space.
    ComplexMatrix operator()(std::span<const cplx> f) const;
    /// rho of the indicator of point y (zero when y is not one of the points).
    ComplexMatrix indicator(std::size_t y) const;
};

/// Constant maps {y0..y(p-1)} -> {x} and {z0..z(q-1)} -> {x}.
ProductPtr constant_product(std::size_t p, std::size_t q);

/// Block at (ys[j], zs[k]) is sum_i w^{k(j-i)} e_{i,j}; all other blocks are
/// zero. Throws InputError unless ys and zs are m distinct points of the
/// fibers over x.
BalancedTensor witness_tensor(const ProductPtr &product, std::size_t x, std::size_t m, std::span<const std::size_t> ys,
                              std::span<const std::size_t> zs);
/// Uses the first m points of each fiber over x.
BalancedTensor witness_tensor(const ProductPtr &product, std::size_t x, std::size_t m);

/// D(y_j) = sum_{i,k} w^{-ki} e_{1,j} (x) e_{i,k} and
/// E(z_k) = sum_j w^{kj} e_{j,1} (x) e_{k,j}, as m x m^2 and m^2 x m
/// matrices; zero at all other points. ||D|| = sqrt(m), ||E|| = 1.
Factorization witness_factorization(const ProductPtr &product, std::size_t m, std::span<const std::size_t> ys,
                                    std::span<const std::size_t> zs);
Factorization witness_factorization(const ProductPtr &product, std::size_t x, std::size_t m);

/// sum over pairs (y2, y1) of t(y2, y1) (x) rho2(d_{y2}) rho1(d_{y1}) for a
/// tensor over Y2 x_X Y1. The result lives in M_n (x) M_m and its norm is
/// a lower bound for the Haagerup norm of t. Throws InputError when the
/// representations do not sit over one base point of t's product.
ComplexMatrix apply_rho_pair(const BalancedTensor &t, const PointRepresentation &rho2,
                             const PointRepresentation &rho1);

}  // namespace hcb
