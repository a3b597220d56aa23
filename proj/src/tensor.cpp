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

#include "hcb/tensor.hpp"

#include <algorithm>
#include <string>

#include "hcb/error.hpp"

namespace hcb {

ProductPtr make_product(const SpaceMap &m1, const SpaceMap &m2) {
    return std::make_shared<const FiberedProduct>(fibered_product(m1, m2));
}

BalancedTensor::BalancedTensor(ProductPtr product, std::size_t level, std::vector<ComplexMatrix> blocks)
    : product_(std::move(product)), level_(level), blocks_(std::move(blocks)) {
    if (!product_) {
        throw InputError("tensor needs a fibered product");
    }
    if (level_ == 0) {
        throw InputError("tensor level must be positive");
    }
    if (blocks_.size() != product_->pairs.size()) {
        throw InputError("tensor has " + std::to_string(blocks_.size()) + " blocks for " +
                         std::to_string(product_->pairs.size()) + " pairs");
    }
    for (const auto &b : blocks_) {
        if (b.rows() != level_ || b.cols() != level_) {
            throw InputError("tensor block is not " + std::to_string(level_) + "x" + std::to_string(level_));
        }
    }
}

BalancedTensor BalancedTensor::zero(ProductPtr product, std::size_t level) {
    const std::size_t n = product ? product->pairs.size() : 0;
    return BalancedTensor(std::move(product), level, std::vector<ComplexMatrix>(n, ComplexMatrix(level, level)));
}

const ComplexMatrix &BalancedTensor::block(std::size_t y1, std::size_t y2) const {
    const std::size_t i = product_->index_of(y1, y2);
    if (i == FiberedProduct::npos) {
        throw InputError("pair is not in the fibered product");
    }
    return blocks_[i];
}

BalancedTensor &BalancedTensor::operator+=(const BalancedTensor &other) {
    if (other.product_ != product_ && !(*other.product_->space == *product_->space)) {
        throw InputError("tensors live on different fibered products");
    }
    if (other.level_ != level_) {
        throw InputError("tensor levels differ");
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        blocks_[i] += other.blocks_[i];
    }
    return *this;
}

BalancedTensor &BalancedTensor::operator*=(cplx s) {
    for (auto &b : blocks_) {
        b *= s;
    }
    return *this;
}

BalancedTensor operator+(BalancedTensor a, const BalancedTensor &b) { return a += b; }
BalancedTensor operator*(cplx s, BalancedTensor t) { return t *= s; }

double max_entry_difference(const BalancedTensor &t, const BalancedTensor &u) {
    if (t.blocks().size() != u.blocks().size() || t.level() != u.level()) {
        throw InputError("tensors have different shapes");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < t.blocks().size(); ++i) {
        worst = std::max(worst, (t.block(i) - u.block(i)).max_abs());
    }
    return worst;
}

ComplexMatrix FiberBlockGrid::assembled() const { return assemble(p(), q(), blocks); }

FiberBlockGrid FiberBlockGrid::transposed() const {
    FiberBlockGrid g;
    g.base = base;
    g.row_points = col_points;
    g.col_points = row_points;
    g.level = level;
    g.blocks.reserve(blocks.size());
    for (std::size_t b = 0; b < q(); ++b) {
        for (std::size_t a = 0; a < p(); ++a) {
            g.blocks.push_back(at(a, b));
        }
    }
    return g;
}

FiberBlockGrid make_grid(std::size_t p, std::size_t q, std::size_t level, std::vector<ComplexMatrix> blocks) {
    if (blocks.size() != p * q) {
        throw InputError("grid needs " + std::to_string(p * q) + " blocks");
    }
    for (const auto &b : blocks) {
        if (b.rows() != level || b.cols() != level) {
            throw InputError("grid block has the wrong shape");
        }
    }
    FiberBlockGrid g;
    g.level = level;
    for (std::size_t a = 0; a < p; ++a) {
        g.row_points.push_back(a);
    }
    for (std::size_t b = 0; b < q; ++b) {
        g.col_points.push_back(b);
    }
    g.blocks = std::move(blocks);
    return g;
}

double Factorization::left_norm() const {
    double m = 0.0;
    for (const auto &d : left) {
        m = std::max(m, op_norm(d));
    }
    return m;
}

double Factorization::right_norm() const {
    double m = 0.0;
    for (const auto &e : right) {
        m = std::max(m, op_norm(e));
    }
    return m;
}

BalancedTensor from_elementary(std::span<const cplx> b1, std::span<const cplx> b2, ProductPtr product) {
    if (b1.size() != product->left_map.domain()->size() || b2.size() != product->right_map.domain()->size()) {
        throw InputError("from_elementary: function is not total on its space");
    }
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(product->pairs.size());
    for (const auto &[y1, y2] : product->pairs) {
        blocks.emplace_back(1, 1, std::vector<cplx>{b1[y1] * b2[y2]});
    }
    return BalancedTensor(std::move(product), 1, std::move(blocks));
}

ProductPtr flipped_product(const FiberedProduct &product) {
    return make_product(product.right_map, product.left_map);
}

BalancedTensor flip(const BalancedTensor &t) { return flip(t, flipped_product(*t.product())); }

BalancedTensor flip(const BalancedTensor &t, const ProductPtr &target) {
    const auto &src = *t.product();
    if (!(*target->left_map.domain() == *src.right_map.domain()) ||
        !(*target->right_map.domain() == *src.left_map.domain()) || target->pairs.size() != src.pairs.size()) {
        throw InputError("flip: target is not the flipped fibered product");
    }
    std::vector<ComplexMatrix> blocks(target->pairs.size());
    for (std::size_t i = 0; i < target->pairs.size(); ++i) {
        const auto &[y2, y1] = target->pairs[i];
        blocks[i] = t.block(y1, y2);
    }
    return BalancedTensor(target, t.level(), std::move(blocks));
}

BalancedTensor external_product(const Factorization &f, ProductPtr product) {
    if (f.left.size() != product->left_map.domain()->size() ||
        f.right.size() != product->right_map.domain()->size()) {
        throw InputError("external_product: factor is not defined on every point");
    }
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(product->pairs.size());
    for (const auto &[y1, y2] : product->pairs) {
        const auto &d = f.left[y1];
        const auto &e = f.right[y2];
        if (d.rows() != f.level || e.cols() != f.level || d.cols() != f.inner || e.rows() != f.inner) {
            throw InputError("external_product: factor shapes do not match level and inner dimension");
        }
        blocks.push_back(d * e);
    }
    return BalancedTensor(std::move(product), f.level, std::move(blocks));
}

std::vector<ComplexMatrix> external_product(const Factorization &f) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(f.left.size() * f.right.size());
    for (const auto &d : f.left) {
        for (const auto &e : f.right) {
            if (d.cols() != e.rows()) {
                throw InputError("external_product: inner dimensions differ");
            }
            blocks.push_back(d * e);
        }
    }
    return blocks;
}

double min_norm(const BalancedTensor &t) {
    double m = 0.0;
    for (const auto &b : t.blocks()) {
        m = std::max(m, op_norm(b));
    }
    return m;
}

double min_norm(const FiberBlockGrid &g) {
    double m = 0.0;
    for (const auto &b : g.blocks) {
        m = std::max(m, op_norm(b));
    }
    return m;
}

FiberBlockGrid restrict_to_fiber(const BalancedTensor &t, std::size_t x) {
    const auto &fp = *t.product();
    FiberBlockGrid g;
    g.base = x;
    g.level = t.level();
    g.row_points = fp.left_map.fiber(x);
    g.col_points = fp.right_map.fiber(x);
    if (g.row_points.empty() || g.col_points.empty()) {
        g.row_points.clear();
        g.col_points.clear();
        return g;
    }
    g.blocks.reserve(g.p() * g.q());
    for (std::size_t a : g.row_points) {
        for (std::size_t b : g.col_points) {
            g.blocks.push_back(t.block(a, b));
        }
    }
    return g;
}

std::vector<FiberBlockGrid> fiber_grids(const BalancedTensor &t) {
    std::vector<FiberBlockGrid> out;
    const std::size_t nx = t.product()->base_space()->size();
    out.reserve(nx);
    for (std::size_t x = 0; x < nx; ++x) {
        out.push_back(restrict_to_fiber(t, x));
    }
    return out;
}

BalancedTensor from_fiber_grids(ProductPtr product, std::size_t level, std::span<const FiberBlockGrid> grids) {
    std::vector<ComplexMatrix> blocks(product->pairs.size());
    std::vector<bool> seen(product->pairs.size(), false);
    for (const auto &g : grids) {
        for (std::size_t a = 0; a < g.p(); ++a) {
            for (std::size_t b = 0; b < g.q(); ++b) {
                const std::size_t i = product->index_of(g.row_points[a], g.col_points[b]);
                if (i == FiberedProduct::npos || seen[i]) {
                    throw InputError("from_fiber_grids: grids do not partition the fibered product");
                }
                seen[i] = true;
                blocks[i] = g.at(a, b);
            }
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) {
        throw InputError("from_fiber_grids: some pairs are not covered");
    }
    return BalancedTensor(std::move(product), level, std::move(blocks));
}

BalancedTensor pad_level(const BalancedTensor &t, std::size_t new_level) {
    if (new_level < t.level()) {
        throw InputError("pad_level: new level is smaller than the current one");
    }
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(t.blocks().size());
    for (const auto &b : t.blocks()) {
        ComplexMatrix padded(new_level, new_level);
        padded.set_slice(0, 0, b);
        blocks.push_back(std::move(padded));
    }
    return BalancedTensor(t.product(), new_level, std::move(blocks));
}

Factorization stitch(const FiberedProduct &product, std::size_t level, std::span<const FiberBlockGrid> grids,
                     std::span<const Factorization> factors) {
    if (grids.size() != factors.size()) {
        throw InputError("stitch: one factorization per grid is required");
    }
    std::size_t inner = 0;
    for (const auto &f : factors) {
        inner += f.inner;
    }
    inner = std::max<std::size_t>(inner, 1);
    Factorization out;
    out.level = level;
    out.inner = inner;
    out.left.assign(product.left_map.domain()->size(), ComplexMatrix(level, inner));
    out.right.assign(product.right_map.domain()->size(), ComplexMatrix(inner, level));
    std::size_t offset = 0;
    for (std::size_t k = 0; k < grids.size(); ++k) {
        const auto &g = grids[k];
        const auto &f = factors[k];
        if (g.empty()) {
            offset += f.inner;
            continue;
        }
        if (f.left.size() != g.p() || f.right.size() != g.q()) {
            throw InputError("stitch: factorization does not match its grid");
        }
        for (std::size_t a = 0; a < g.p(); ++a) {
            out.left[g.row_points[a]].set_slice(0, offset, f.left[a]);
        }
        for (std::size_t b = 0; b < g.q(); ++b) {
            out.right[g.col_points[b]].set_slice(offset, 0, f.right[b]);
        }
        offset += f.inner;
    }
    return out;
}

BalancedTensor random_tensor(ProductPtr product, std::size_t level, std::mt19937_64 &rng, double sparsity) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(product->pairs.size());
    for (std::size_t i = 0; i < product->pairs.size(); ++i) {
        ComplexMatrix b = random_gaussian(level, level, rng);
        if (sparsity > 0.0 && coin(rng) < sparsity) {
            b = ComplexMatrix(level, level);
        }
        blocks.push_back(std::move(b));
    }
    return BalancedTensor(std::move(product), level, std::move(blocks));
}

}  // namespace hcb
