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

// Dense complex matrices and the handful of factorizations the norm
// computations need. Matrices are small (at most a few hundred rows), so
// everything is dense, row-major, double precision.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace hcb {

using cplx = std::complex<double>;

/// Row-major dense complex matrix. Zero-sized shapes are allowed (a 0-dim
/// fiber of a bundle has 0x0 blocks); everything else follows the usual
/// value semantics.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Throws InputError when data.size() != rows*cols or an entry is not finite.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

    static ComplexMatrix identity(std::size_t n);
    /// e_{i,j}: 1 at (i, j), zero elsewhere. Indices are 0-based.
    static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
    static ComplexMatrix column(std::span<const cplx> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> data() const { return data_; }
    std::span<cplx> data() { return data_; }

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(cplx s);

    /// Copy of rows [r0, r0+nr) and columns [c0, c0+nc).
    ComplexMatrix slice(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
    void set_slice(std::size_t r0, std::size_t c0, const ComplexMatrix &block);

    double frobenius_norm() const;
    double max_abs() const;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

/// a * b^*
ComplexMatrix multiply_adjoint(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix dagger(const ComplexMatrix &a);
ComplexMatrix transpose(const ComplexMatrix &a);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
/// (a + a^*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix &a);

/// A grid of square blocks of a common size.
struct BlockMatrix {
    std::size_t block_rows = 0;
    std::size_t block_cols = 0;
    std::size_t block_dim = 0;
    std::vector<ComplexMatrix> blocks;  // row-major grid

    BlockMatrix() = default;
    /// Throws InputError unless blocks.size() == block_rows*block_cols and
    /// every block is block_dim x block_dim.
    BlockMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t block_dim,
                std::vector<ComplexMatrix> blocks);

    const ComplexMatrix &at(std::size_t i, std::size_t j) const { return blocks[i * block_cols + j]; }
};

/// Assembles a row-major grid of blocks into one matrix. Blocks in a grid
/// row must share a height and blocks in a grid column a width.
ComplexMatrix assemble(std::size_t block_rows, std::size_t block_cols, std::span<const ComplexMatrix> blocks);
ComplexMatrix assemble(const BlockMatrix &b);

/// Largest singular value.
double op_norm(const ComplexMatrix &a);

/// True iff `a` is Hermitian within tol (entrywise) and its smallest
/// eigenvalue is >= -tol.
bool psd_check(const ComplexMatrix &a, double tol);

/// m^{-1/2} (w^{ij})_{i,j=1..m}, w = exp(2 pi i / m). Exponents use the
/// 1-based indices, so entry (0, 0) is w.
ComplexMatrix fourier_unitary(std::size_t m);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors
};

/// Cyclic complex Jacobi on the Hermitian part of `a`.
HermitianEigen hermitian_eigen(const ComplexMatrix &a);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a);

/// Lower-triangular L with a = L L^*, or nullopt when `a` is not
/// numerically positive definite.
std::optional<ComplexMatrix> cholesky(const ComplexMatrix &a);
ComplexMatrix lower_triangular_inverse(const ComplexMatrix &l);

/// Entries with independent standard normal real and imaginary parts.
ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64 &rng);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64 &rng);

}  // namespace hcb
