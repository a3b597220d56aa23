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

#include "hcb/haagerup.hpp"

#include <algorithm>
#include <cmath>

#include "hcb/error.hpp"

namespace hcb {

namespace {

int severity(SdpStatus s) {
    switch (s) {
    case SdpStatus::converged:
        return 0;
    case SdpStatus::max_iter:
        return 1;
    case SdpStatus::infeasible_numerics:
        return 2;
    }
    return 2;
}

Factorization left_factorization(const FiberBlockGrid &g) {
    const std::size_t p = g.p(), q = g.q(), n = g.level;
    Factorization f;
    f.level = n;
    f.inner = n * p;
    for (std::size_t a = 0; a < p; ++a) {
        ComplexMatrix d(n, n * p);
        for (std::size_t i = 0; i < n; ++i) {
            d(i, i * p + a) = 1.0;
        }
        f.left.push_back(std::move(d));
    }
    for (std::size_t b = 0; b < q; ++b) {
        ComplexMatrix e(n * p, n);
        for (std::size_t a = 0; a < p; ++a) {
            const ComplexMatrix &blk = g.at(a, b);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    e(i * p + a, j) = blk(i, j);
                }
            }
        }
        f.right.push_back(std::move(e));
    }
    return f;
}

Factorization right_factorization(const FiberBlockGrid &g) {
    const std::size_t p = g.p(), q = g.q(), n = g.level;
    Factorization f;
    f.level = n;
    f.inner = n * q;
    for (std::size_t a = 0; a < p; ++a) {
        ComplexMatrix d(n, n * q);
        for (std::size_t b = 0; b < q; ++b) {
            const ComplexMatrix &blk = g.at(a, b);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    d(i, j * q + b) = blk(i, j);
                }
            }
        }
        f.left.push_back(std::move(d));
    }
    for (std::size_t b = 0; b < q; ++b) {
        ComplexMatrix e(n * q, n);
        for (std::size_t j = 0; j < n; ++j) {
            e(j * q + b, j) = 1.0;
        }
        f.right.push_back(std::move(e));
    }
    return f;
}

}  // namespace

HaagerupResult haagerup_norm(const BalancedTensor &t, double tolerance) {
    HaagerupResult out;
    std::vector<FiberBlockGrid> grids = fiber_grids(t);
    std::vector<Factorization> certs;
    certs.reserve(grids.size());
    for (const auto &g : grids) {
        if (g.empty()) {
            certs.emplace_back();
            continue;
        }
        FiberNorm fn;
        fn.base = g.base;
        fn.p = g.p();
        fn.q = g.q();
        fn.result = factorization_norm({g, tolerance});
        out.value = std::max(out.value, fn.result.value);
        out.lower_bound = std::max(out.lower_bound, fn.result.lower_bound);
        out.upper_bound = std::max(out.upper_bound, fn.result.upper_bound);
        if (severity(fn.result.status) > severity(out.status)) {
            out.status = fn.result.status;
        }
        certs.push_back(fn.result.factorization);
        out.per_fiber.push_back(std::move(fn));
    }
    out.factorization = stitch(*t.product(), t.level(), grids, certs);
    return out;
}

Factorization hmin_factorization(const FiberBlockGrid &grid, FactorSide side) {
    if (grid.empty()) {
        throw InputError("hmin_factorization: grid is empty");
    }
    switch (side) {
    case FactorSide::left:
        return left_factorization(grid);
    case FactorSide::right:
        return right_factorization(grid);
    case FactorSide::balanced:
        break;
    }
    Factorization f = grid.p() <= grid.q() ? left_factorization(grid) : right_factorization(grid);
    const double l = f.left_norm(), r = f.right_norm();
    if (l > 0.0 && r > 0.0) {
        const double s = std::sqrt(r / l);
        for (auto &d : f.left) {
            d *= cplx{s};
        }
        for (auto &e : f.right) {
            e *= cplx{1.0 / s};
        }
    }
    return f;
}

Factorization hmin_factorization(const BalancedTensor &t, FactorSide side) {
    const std::vector<FiberBlockGrid> grids = fiber_grids(t);
    std::vector<Factorization> parts;
    parts.reserve(grids.size());
    for (const auto &g : grids) {
        parts.push_back(g.empty() ? Factorization{} : hmin_factorization(g, side));
    }
    return stitch(*t.product(), t.level(), grids, parts);
}

double comparison_inverse_ratio(const BalancedTensor &t, double tolerance) {
    const double m = min_norm(t);
    if (!(m > 0.0)) {
        throw InputError("comparison_inverse_ratio: tensor is zero");
    }
    return haagerup_norm(t, tolerance).value / m;
}

}  // namespace hcb
