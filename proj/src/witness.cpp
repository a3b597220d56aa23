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

#include "hcb/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "hcb/error.hpp"

namespace hcb {

namespace {

// w^e with w = exp(2 pi i / m), exponent reduced mod m.
cplx root_power(long long e, std::size_t m) {
    const long long mm = static_cast<long long>(m);
    e %= mm;
    if (e < 0) {
        e += mm;
    }
    if (e == 0) {
        return 1.0;
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(m));
}

void check_points(std::span<const std::size_t> pts, const SpaceMap &map, std::size_t x, std::size_t m,
                  const char *side) {
    if (pts.size() != m) {
        throw InputError(std::string("witness: need ") + std::to_string(m) + " points on the " + side + " side, got " +
                         std::to_string(pts.size()));
    }
    std::set<std::size_t> seen;
    for (std::size_t y : pts) {
        if (y >= map.domain()->size() || map(y) != x) {
            throw InputError(std::string("witness: ") + side + " point is not in the fiber over the base point");
        }
        if (!seen.insert(y).second) {
            throw InputError(std::string("witness: repeated ") + side + " point");
        }
    }
}

std::vector<std::size_t> first_points(const SpaceMap &map, std::size_t x, std::size_t m, const char *side) {
    if (x >= map.codomain()->size()) {
        throw InputError("witness: base point out of range");
    }
    std::vector<std::size_t> f = map.fiber(x);
    if (f.size() < m) {
        throw InputError(std::string("witness: the ") + side + " fiber has " + std::to_string(f.size()) +
                         " points, fewer than " + std::to_string(m));
    }
    f.resize(m);
    return f;
}

}  // namespace

PointRepresentation::PointRepresentation(RepresentationKind k, SpacePtr s, std::vector<std::size_t> pts)
    : kind(k), space(std::move(s)), points(std::move(pts)) {
    if (!space) {
        throw InputError("representation needs a space");
    }
    std::set<std::size_t> seen;
    for (std::size_t y : points) {
        if (y >= space->size() || !seen.insert(y).second) {
            throw InputError("representation points must be distinct points of the space");
        }
    }
}

ComplexMatrix PointRepresentation::operator()(std::span<const cplx> f) const {
    if (f.size() != space->size()) {
        throw InputError("representation: function is not defined on the whole space");
    }
    const std::size_t m = dim();
    ComplexMatrix d(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        d(i, i) = f[points[i]];
    }
    if (kind == RepresentationKind::diagonal) {
        return d;
    }
    const ComplexMatrix u = fourier_unitary(m);
    return multiply_adjoint(u * d, u);
}

ComplexMatrix PointRepresentation::indicator(std::size_t y) const {
    std::vector<cplx> f(space->size(), 0.0);
    f.at(y) = 1.0;
    return (*this)(f);
}

ProductPtr constant_product(std::size_t p, std::size_t q) {
    auto x = make_space({"x"});
    std::vector<std::string> ys, zs;
    for (std::size_t i = 0; i < p; ++i) {
        ys.push_back("y" + std::to_string(i));
    }
    for (std::size_t i = 0; i < q; ++i) {
        zs.push_back("z" + std::to_string(i));
    }
    SpaceMap m1(make_space(ys), x, std::vector<std::size_t>(p, 0));
    SpaceMap m2(make_space(zs), x, std::vector<std::size_t>(q, 0));
    return make_product(m1, m2);
}

BalancedTensor witness_tensor(const ProductPtr &product, std::size_t x, std::size_t m, std::span<const std::size_t> ys,
                              std::span<const std::size_t> zs) {
    if (m == 0) {
        throw InputError("witness: m must be positive");
    }
    check_points(ys, product->left_map, x, m, "left");
    check_points(zs, product->right_map, x, m, "right");
    BalancedTensor zero = BalancedTensor::zero(product, m);
    std::vector<ComplexMatrix> blocks = zero.blocks();
    for (std::size_t j = 1; j <= m; ++j) {
        for (std::size_t k = 1; k <= m; ++k) {
            ComplexMatrix &b = blocks[product->index_of(ys[j - 1], zs[k - 1])];
            for (std::size_t i = 1; i <= m; ++i) {
                b(i - 1, j - 1) = root_power(static_cast<long long>(k) * (static_cast<long long>(j) - static_cast<long long>(i)), m);
            }
        }
    }
    return BalancedTensor(product, m, std::move(blocks));
}

BalancedTensor witness_tensor(const ProductPtr &product, std::size_t x, std::size_t m) {
    const auto ys = first_points(product->left_map, x, m, "left");
    const auto zs = first_points(product->right_map, x, m, "right");
    return witness_tensor(product, x, m, ys, zs);
}

Factorization witness_factorization(const ProductPtr &product, std::size_t m, std::span<const std::size_t> ys,
                                    std::span<const std::size_t> zs) {
    if (m == 0 || ys.empty() || zs.empty()) {
        throw InputError("witness: m must be positive");
    }
    const std::size_t x = product->left_map(ys[0]);
    check_points(ys, product->left_map, x, m, "left");
    check_points(zs, product->right_map, x, m, "right");
    Factorization f;
    f.level = m;
    f.inner = m * m;
    f.left.assign(product->left_map.domain()->size(), ComplexMatrix(m, m * m));
    f.right.assign(product->right_map.domain()->size(), ComplexMatrix(m * m, m));
    for (std::size_t j = 1; j <= m; ++j) {
        ComplexMatrix &d = f.left[ys[j - 1]];
        for (std::size_t i = 1; i <= m; ++i) {
            for (std::size_t k = 1; k <= m; ++k) {
                d(i - 1, (j - 1) * m + (k - 1)) = root_power(-static_cast<long long>(k * i), m);
            }
        }
    }
    for (std::size_t k = 1; k <= m; ++k) {
        ComplexMatrix &e = f.right[zs[k - 1]];
        for (std::size_t j = 1; j <= m; ++j) {
            e((j - 1) * m + (k - 1), j - 1) = root_power(static_cast<long long>(k * j), m);
        }
    }
    return f;
}

Factorization witness_factorization(const ProductPtr &product, std::size_t x, std::size_t m) {
    const auto ys = first_points(product->left_map, x, m, "left");
    const auto zs = first_points(product->right_map, x, m, "right");
    return witness_factorization(product, m, ys, zs);
}

ComplexMatrix apply_rho_pair(const BalancedTensor &t, const PointRepresentation &rho2,
                             const PointRepresentation &rho1) {
    const FiberedProduct &fp = *t.product();
    if (!(*rho2.space == *fp.left_map.domain()) || !(*rho1.space == *fp.right_map.domain())) {
        throw InputError("apply_rho_pair: representations are not on the tensor's spaces");
    }
    if (rho1.dim() != rho2.dim() || rho1.dim() == 0) {
        throw InputError("apply_rho_pair: representations have different dimensions");
    }
    const std::size_t x = fp.left_map(rho2.points[0]);
    for (std::size_t y : rho2.points) {
        if (fp.left_map(y) != x) {
            throw InputError("apply_rho_pair: representation points lie over different base points");
        }
    }
    for (std::size_t y : rho1.points) {
        if (fp.right_map(y) != x) {
            throw InputError("apply_rho_pair: representation points lie over different base points");
        }
    }
    const std::size_t m = rho1.dim();
    ComplexMatrix out(t.level() * m, t.level() * m);
    for (std::size_t a : rho2.points) {
        const ComplexMatrix r2 = rho2.indicator(a);
        for (std::size_t b : rho1.points) {
            out += kron(t.block(a, b), r2 * rho1.indicator(b));
        }
    }
    return out;
}

}  // namespace hcb
