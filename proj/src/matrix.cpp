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

#include "hcb/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "hcb/error.hpp"
#include "hcb/kernels.hpp"

namespace hcb {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InputError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw InputError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                         std::to_string(rows_ * cols_));
    }
    for (const cplx &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InputError("matrix entry is not finite");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    if (i >= rows || j >= cols) {
        throw InputError("matrix unit index out of range");
    }
    ComplexMatrix m(rows, cols);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<cplx> data;
    data.reserve(r * c);
    for (const auto &row : rows) {
        if (row.size() != c) {
            throw InputError("ragged matrix literal");
        }
        data.insert(data.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(data));
}

ComplexMatrix ComplexMatrix::column(std::span<const cplx> entries) {
    return ComplexMatrix(entries.size(), 1, std::vector<cplx>(entries.begin(), entries.end()));
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
    for (cplx &z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix ComplexMatrix::slice(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw InputError("slice out of range");
    }
    ComplexMatrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), nc,
                    out.data_.begin() + static_cast<std::ptrdiff_t>(r * nc));
    }
    return out;
}

void ComplexMatrix::set_slice(std::size_t r0, std::size_t c0, const ComplexMatrix &block) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) {
        throw InputError("set_slice out of range");
    }
    for (std::size_t r = 0; r < block.rows_; ++r) {
        std::copy_n(block.data_.begin() + static_cast<std::ptrdiff_t>(r * block.cols_), block.cols_,
                    data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
    }
}

double ComplexMatrix::frobenius_norm() const {
    const auto &k = kernels::active();
    return std::sqrt(k.zdotc(data_.data(), data_.data(), data_.size()).real());
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw InputError("multiply: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
    }
    const auto &k = kernels::active();
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx *out = c.row(i).data();
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const cplx s = a(i, l);
            if (s != cplx{0.0, 0.0}) {
                k.zaxpy(s, b.row(l).data(), out, b.cols());
            }
        }
    }
    return c;
}

ComplexMatrix multiply_adjoint(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.cols()) {
        throw InputError("multiply_adjoint: column counts differ");
    }
    const auto &k = kernels::active();
    ComplexMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            c(i, j) = k.zdotc(b.row(j).data(), a.row(i).data(), a.cols());
        }
    }
    return c;
}

ComplexMatrix dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

ComplexMatrix transpose(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx s = a(i, j);
            if (s == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t r = 0; r < b.rows(); ++r) {
                for (std::size_t c = 0; c < b.cols(); ++c) {
                    out(i * b.rows() + r, j * b.cols() + c) = s * b(r, c);
                }
            }
        }
    }
    return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw InputError("hermitian_part: matrix is not square");
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    }
    return out;
}

BlockMatrix::BlockMatrix(std::size_t block_rows_, std::size_t block_cols_, std::size_t block_dim_,
                         std::vector<ComplexMatrix> blocks_)
    : block_rows(block_rows_), block_cols(block_cols_), block_dim(block_dim_), blocks(std::move(blocks_)) {
    if (blocks.size() != block_rows * block_cols) {
        throw InputError("block grid has the wrong number of blocks");
    }
    for (const auto &b : blocks) {
        if (b.rows() != block_dim || b.cols() != block_dim) {
            throw InputError("block is not " + std::to_string(block_dim) + "x" + std::to_string(block_dim));
        }
    }
}

ComplexMatrix assemble(std::size_t block_rows, std::size_t block_cols, std::span<const ComplexMatrix> blocks) {
    if (blocks.size() != block_rows * block_cols) {
        throw InputError("assemble: expected " + std::to_string(block_rows * block_cols) + " blocks");
    }
    std::vector<std::size_t> heights(block_rows, 0), widths(block_cols, 0);
    for (std::size_t i = 0; i < block_rows; ++i) {
        heights[i] = block_cols == 0 ? 0 : blocks[i * block_cols].rows();
    }
    for (std::size_t j = 0; j < block_cols; ++j) {
        widths[j] = block_rows == 0 ? 0 : blocks[j].cols();
    }
    for (std::size_t i = 0; i < block_rows; ++i) {
        for (std::size_t j = 0; j < block_cols; ++j) {
            const auto &b = blocks[i * block_cols + j];
            if (b.rows() != heights[i] || b.cols() != widths[j]) {
                throw InputError("assemble: inconsistent block shapes");
            }
        }
    }
    const std::size_t total_rows = std::accumulate(heights.begin(), heights.end(), std::size_t{0});
    const std::size_t total_cols = std::accumulate(widths.begin(), widths.end(), std::size_t{0});
    ComplexMatrix out(total_rows, total_cols);
    std::size_t r0 = 0;
    for (std::size_t i = 0; i < block_rows; ++i) {
        std::size_t c0 = 0;
        for (std::size_t j = 0; j < block_cols; ++j) {
            out.set_slice(r0, c0, blocks[i * block_cols + j]);
            c0 += widths[j];
        }
        r0 += heights[i];
    }
    return out;
}

ComplexMatrix assemble(const BlockMatrix &b) { return assemble(b.block_rows, b.block_cols, b.blocks); }

double op_norm(const ComplexMatrix &a) {
    if (a.empty()) {
        return 0.0;
    }
    if (a.rows() == 1 || a.cols() == 1) {
        return a.frobenius_norm();
    }
    // Work with the smaller Gram matrix.
    const ComplexMatrix gram = a.rows() <= a.cols() ? multiply_adjoint(a, a) : multiply_adjoint(dagger(a), dagger(a));
    const auto values = hermitian_eigenvalues(gram);
    return std::sqrt(std::max(0.0, values.back()));
}

bool psd_check(const ComplexMatrix &a, double tol) {
    if (!a.is_square()) {
        throw InputError("psd_check: matrix is not square");
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) {
                return false;
            }
        }
    }
    if (a.empty()) {
        return true;
    }
    return hermitian_eigenvalues(a).front() >= -tol;
}

ComplexMatrix fourier_unitary(std::size_t m) {
    if (m == 0) {
        throw InputError("fourier_unitary: m must be positive");
    }
    ComplexMatrix u(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t e = ((i + 1) * (j + 1)) % m;
            u(i, j) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(m));
        }
    }
    return u;
}

HermitianEigen hermitian_eigen(const ComplexMatrix &input) {
    ComplexMatrix a = hermitian_part(input);
    const std::size_t n = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                s += std::norm(a(i, j));
            }
        }
        return std::sqrt(s);
    };
    const double scale = a.frobenius_norm();

    for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
        if (off_norm() <= 1e-16 * scale) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300 || mag <= 1e-18 * scale) {
                    continue;
                }
                const cplx phase = apq / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) {
                    t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx ph_conj = std::conj(phase);
                // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q); A <- J^* A J.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * ph_conj * akq;
                    a(k, q) = s * akp + c * ph_conj * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * ph_conj * vkq;
                    v(k, q) = s * vkp + c * ph_conj * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, c) = v(r, order[c]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a) { return hermitian_eigen(a).values; }

std::optional<ComplexMatrix> cholesky(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw InputError("cholesky: matrix is not square");
    }
    const std::size_t n = a.rows();
    const auto &k = kernels::active();
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double d = a(j, j).real() - k.zdotc(l.row(j).data(), l.row(j).data(), j).real();
        if (!(d > 0.0)) {
            return std::nullopt;
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            // sum_k L(i,k) conj(L(j,k))
            const cplx s = k.zdotc(l.row(j).data(), l.row(i).data(), j);
            l(i, j) = (a(i, j) - s) / ljj;
        }
    }
    return l;
}

ComplexMatrix lower_triangular_inverse(const ComplexMatrix &l) {
    const std::size_t n = l.rows();
    ComplexMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        inv(j, j) = 1.0 / l(j, j);
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t k = j; k < i; ++k) {
                s += l(i, k) * inv(k, j);
            }
            inv(i, j) = -s / l(i, i);
        }
    }
    return inv;
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (cplx &z : m.data()) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {re, im};
    }
    return m;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64 &rng) {
    ComplexMatrix g = random_gaussian(n, n, rng);
    // Modified Gram-Schmidt on columns; the positive diagonal of R makes the
    // result Haar distributed.
    ComplexMatrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> col(n);
        for (std::size_t r = 0; r < n; ++r) {
            col[r] = g(r, j);
        }
        for (std::size_t k = 0; k < j; ++k) {
            cplx dot = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                dot += std::conj(q(r, k)) * col[r];
            }
            for (std::size_t r = 0; r < n; ++r) {
                col[r] -= dot * q(r, k);
            }
        }
        double norm = 0.0;
        for (const cplx &z : col) {
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r) {
            q(r, j) = col[r] / norm;
        }
    }
    return q;
}

}  // namespace hcb
