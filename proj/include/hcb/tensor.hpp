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

// Matrix-level elements of C(Y1) (x)_{C(X)} C(Y2).
//
// Representation: a balanced tensor is stored as its image under the
// comparison map b1 (x) b2 |-> ((y1, y2) |-> b1(y1) b2(y2)), i.e. as an
// n x n block for every point of the fibered product Y1 x_X Y2. For finite
// discrete spaces this map is a linear bijection (the balanced tensor product
// splits over the fibers of X and C(F1) (x) C(F2) = C(F1 x F2)), so nothing is
// lost. The minimal and Haagerup norms are two different norms on the same
// stored data, and norm statements about the comparison map become
// statements about the ratio of the two.

#include <cstddef>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "hcb/matrix.hpp"
#include "hcb/topology.hpp"

namespace hcb {

using ProductPtr = std::shared_ptr<const FiberedProduct>;

ProductPtr make_product(const SpaceMap &m1, const SpaceMap &m2);

class BalancedTensor {
  public:
    /// blocks[i] is the n x n block at product->pairs[i].
    BalancedTensor(ProductPtr product, std::size_t level, std::vector<ComplexMatrix> blocks);
    static BalancedTensor zero(ProductPtr product, std::size_t level);

    std::size_t level() const { return level_; }
    const ProductPtr &product() const { return product_; }
    const std::vector<ComplexMatrix> &blocks() const { return blocks_; }
    const ComplexMatrix &block(std::size_t pair_index) const { return blocks_.at(pair_index); }
    /// Block at (y1, y2); throws InputError when the pair is not in the product.
    const ComplexMatrix &block(std::size_t y1, std::size_t y2) const;

    BalancedTensor &operator+=(const BalancedTensor &other);
    BalancedTensor &operator*=(cplx s);

  private:
    ProductPtr product_;
    std::size_t level_ = 0;
    std::vector<ComplexMatrix> blocks_;
};

BalancedTensor operator+(BalancedTensor a, const BalancedTensor &b);
BalancedTensor operator*(cplx s, BalancedTensor t);

/// max |t(i) - u(i)| over all block entries; InputError on shape mismatch.
double max_entry_difference(const BalancedTensor &t, const BalancedTensor &u);

/// The restriction of a tensor to one base point: a p x q grid of n x n
/// blocks, p = #mu1^{-1}x, q = #mu2^{-1}x.
struct FiberBlockGrid {
    std::size_t base = 0;
    std::vector<std::size_t> row_points;  // indices in Y1
    std::vector<std::size_t> col_points;  // indices in Y2
    std::size_t level = 0;
    std::vector<ComplexMatrix> blocks;  // row-major p x q

    std::size_t p() const { return row_points.size(); }
    std::size_t q() const { return col_points.size(); }
    bool empty() const { return blocks.empty(); }
    const ComplexMatrix &at(std::size_t a, std::size_t b) const { return blocks[a * q() + b]; }

    /// The pn x qn matrix with block (a, b) in position (a, b).
    ComplexMatrix assembled() const;
    /// Swaps the roles of rows and columns; block (a, b) moves to (b, a)
    /// unchanged.
    FiberBlockGrid transposed() const;
};

/// Builds a grid directly from blocks (row-major p x q). Point indices are
/// 0..p-1 and 0..q-1.
FiberBlockGrid make_grid(std::size_t p, std::size_t q, std::size_t level, std::vector<ComplexMatrix> blocks);

/// A pair (D, E) with D(a) n x m and E(b) m x n. At tensor level `left` is
/// indexed by points of Y1 and `right` by points of Y2; at grid level by the
/// grid's row and column positions.
struct Factorization {
    std::size_t level = 0;
    std::size_t inner = 0;
    std::vector<ComplexMatrix> left;
    std::vector<ComplexMatrix> right;

    /// sup over points of the block operator norm.
    double left_norm() const;
    double right_norm() const;
    double bound() const { return left_norm() * right_norm(); }
};

BalancedTensor from_elementary(std::span<const cplx> b1, std::span<const cplx> b2, ProductPtr product);

/// The product Y2 x_X Y1 with pairs in lexicographic order of (y2, y1).
ProductPtr flipped_product(const FiberedProduct &product);
/// Block at (y2, y1) of the result is the block of t at (y1, y2).
BalancedTensor flip(const BalancedTensor &t);
/// Same as flip(t) but onto a caller-supplied flipped product.
BalancedTensor flip(const BalancedTensor &t, const ProductPtr &target);

/// Block at (y1, y2) is D(y1) E(y2).
BalancedTensor external_product(const Factorization &f, ProductPtr product);
/// Grid-level counterpart: p x q blocks D(a) E(b).
std::vector<ComplexMatrix> external_product(const Factorization &f);

/// C*-norm in M_n (x) C(Y1 x_X Y2): max over pairs of the block operator norm.
double min_norm(const BalancedTensor &t);
double min_norm(const FiberBlockGrid &g);

FiberBlockGrid restrict_to_fiber(const BalancedTensor &t, std::size_t x);
std::vector<FiberBlockGrid> fiber_grids(const BalancedTensor &t);
/// Inverse of fiber_grids.
BalancedTensor from_fiber_grids(ProductPtr product, std::size_t level, std::span<const FiberBlockGrid> grids);

/// Embeds t at a higher matrix level by padding every block with zero rows
/// and columns.
BalancedTensor pad_level(const BalancedTensor &t, std::size_t new_level);

/// Joins per-fiber factorizations into one tensor-level factorization with
/// block-diagonal inner dimension. factors[i] must factor grids[i].
Factorization stitch(const FiberedProduct &product, std::size_t level, std::span<const FiberBlockGrid> grids,
                     std::span<const Factorization> factors);

/// Complex Gaussian blocks; each block is zeroed independently with
/// probability `sparsity`.
BalancedTensor random_tensor(ProductPtr product, std::size_t level, std::mt19937_64 &rng, double sparsity = 0.0);

}  // namespace hcb
