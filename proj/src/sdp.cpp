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

#include "hcb/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hcb/error.hpp"
#include "sdp_solver.hpp"

namespace hcb {

std::string_view to_string(SdpStatus s) {
    switch (s) {
    case SdpStatus::converged:
        return "converged";
    case SdpStatus::max_iter:
        return "max_iter";
    case SdpStatus::infeasible_numerics:
        return "infeasible_numerics";
    }
    return "unknown";
}

namespace {

Factorization zero_certificate(const FiberBlockGrid &g) {
    Factorization f;
    f.level = g.level;
    f.inner = 1;
    f.left.assign(g.p(), ComplexMatrix(g.level, 1));
    f.right.assign(g.q(), ComplexMatrix(1, g.level));
    return f;
}

// Standard-form data for the dual program. The primal variable X lives on
// (p+q)n and the constraints are tr X = 1 plus zero off-diagonal blocks
// inside each side.
detail::SdpProblem build_problem(const ComplexMatrix &g_hat, std::size_t p, std::size_t q, std::size_t n) {
    const std::size_t pn = p * n;
    const std::size_t dim = (p + q) * n;
    detail::SdpProblem prob;
    prob.dim = dim;
    prob.cost = ComplexMatrix(dim, dim);
    for (std::size_t r = 0; r < g_hat.rows(); ++r) {
        for (std::size_t c = 0; c < g_hat.cols(); ++c) {
            prob.cost(r, pn + c) = -g_hat(r, c);
            prob.cost(pn + c, r) = -std::conj(g_hat(r, c));
        }
    }

    detail::SparseHermitian trace;
    for (std::size_t i = 0; i < dim; ++i) {
        trace.entries.push_back({i, i, 1.0});
    }
    prob.constraints.push_back(std::move(trace));
    prob.rhs.push_back(1.0);

    auto add_side = [&](std::size_t offset, std::size_t blocks) {
        for (std::size_t a = 0; a < blocks; ++a) {
            for (std::size_t b = a + 1; b < blocks; ++b) {
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        const std::size_t r = offset + a * n + i;
                        const std::size_t c = offset + b * n + j;
                        // Re X_rc = 0 and Im X_rc = 0.
                        prob.constraints.push_back({{{r, c, 0.5}, {c, r, 0.5}}});
                        prob.rhs.push_back(0.0);
                        prob.constraints.push_back({{{r, c, cplx{0.0, 0.5}}, {c, r, cplx{0.0, -0.5}}}});
                        prob.rhs.push_back(0.0);
                    }
                }
            }
        }
    };
    add_side(0, p);
    add_side(pn, q);
    return prob;
}

struct Certificate {
    double upper = std::numeric_limits<double>::infinity();
    Factorization factors;
};

// Upper bound from the dual variable y: Z = C - A^*(y), flipped in sign on
// the between-side blocks, is [[tI + K1, G], [G^*, tI + K2]] with t = -y_0.
// Its Gram factor splits into D and E.
Certificate certify_upper(const detail::SdpProblem &prob, const std::vector<double> &y, std::size_t p,
                          std::size_t q, std::size_t n) {
    const std::size_t pn = p * n;
    const std::size_t dim = prob.dim;
    ComplexMatrix m = prob.cost - detail::apply_adjoint(prob, y);
    for (std::size_t r = 0; r < pn; ++r) {
        for (std::size_t c = pn; c < dim; ++c) {
            m(r, c) = -m(r, c);
            m(c, r) = -m(c, r);
        }
    }
    m = hermitian_part(m);
    double t = -y[0];
    double shift = 0.0;
    std::optional<ComplexMatrix> l = cholesky(m);
    if (!l) {
        const double lmin = hermitian_eigenvalues(m).front();
        shift = std::max(-lmin, 0.0) * (1.0 + 1e-9) + 1e-15 * std::max(1.0, std::abs(t));
        for (int attempt = 0; attempt < 30 && !l; ++attempt) {
            ComplexMatrix shifted = m;
            for (std::size_t i = 0; i < dim; ++i) {
                shifted(i, i) += shift;
            }
            l = cholesky(shifted);
            if (!l) {
                shift *= 2.0;
            }
        }
        if (!l) {
            return {};
        }
    }
    Certificate cert;
    cert.upper = t + shift;
    cert.factors.level = n;
    cert.factors.inner = dim;
    for (std::size_t a = 0; a < p; ++a) {
        cert.factors.left.push_back(l->slice(a * n, n, 0, dim));
    }
    for (std::size_t b = 0; b < q; ++b) {
        cert.factors.right.push_back(dagger(l->slice(pn + b * n, n, 0, dim)));
    }
    return cert;
}

// Lower bound from the primal variable: project onto the feasible set
// (zero the constrained blocks, shift to PSD, renormalise the trace) and
// evaluate the objective.
double certify_lower(const detail::SdpProblem &prob, const ComplexMatrix &x, std::size_t p, std::size_t q,
                     std::size_t n) {
    const std::size_t pn = p * n;
    ComplexMatrix xp = hermitian_part(x);
    auto zero_side = [&](std::size_t offset, std::size_t blocks) {
        for (std::size_t a = 0; a < blocks; ++a) {
            for (std::size_t b = 0; b < blocks; ++b) {
                if (a == b) {
                    continue;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        xp(offset + a * n + i, offset + b * n + j) = 0.0;
                    }
                }
            }
        }
    };
    zero_side(0, p);
    zero_side(pn, q);
    const double lmin = hermitian_eigenvalues(xp).front();
    if (lmin < 0.0) {
        for (std::size_t i = 0; i < xp.rows(); ++i) {
            xp(i, i) += -lmin;
        }
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < xp.rows(); ++i) {
        trace += xp(i, i).real();
    }
    if (!(trace > 0.0)) {
        return 0.0;
    }
    double obj = 0.0;
    for (std::size_t r = 0; r < xp.rows(); ++r) {
        for (std::size_t c = 0; c < xp.cols(); ++c) {
            obj -= (prob.cost(r, c) * xp(c, r)).real();
        }
    }
    return obj / trace;
}

bool within_tolerance(double lower, double upper, double tol) {
    return upper - lower <= tol * std::max(1.0, upper);
}

}  // namespace

SdpResult factorization_norm(const FactorizationNormProblem &problem) {
    const FiberBlockGrid &grid = problem.grid;
    if (!(problem.tolerance > 0.0)) {
        throw InputError("factorization_norm: tolerance must be positive");
    }
    SdpResult result;
    if (grid.empty()) {
        result.factorization.level = grid.level;
        return result;
    }
    const std::size_t p = grid.p(), q = grid.q(), n = grid.level;
    const double scale = min_norm(grid);
    if (scale == 0.0) {
        result.factorization = zero_certificate(grid);
        return result;
    }

    // Normalised so the min-norm is 1; the value then lies in [1, sqrt(min(p, q))].
    ComplexMatrix g_hat = grid.assembled();
    g_hat *= cplx{1.0 / scale};
    const double tol = problem.tolerance;
    const double bracket_lower = 1.0;

    const detail::SdpProblem prob = build_problem(g_hat, p, q, n);
    const std::size_t dim = prob.dim;

    detail::SdpIterate start;
    start.x = ComplexMatrix::identity(dim) * cplx{1.0 / static_cast<double>(dim)};
    start.y.assign(prob.constraints.size(), 0.0);
    const double t0 = op_norm(g_hat) + 1.0;
    start.y[0] = -t0;
    start.z = prob.cost + ComplexMatrix::identity(dim) * cplx{t0};

    Certificate best;
    double best_lower = bracket_lower;
    bool converged = false;

    detail::SdpOptions options;
    options.max_iterations = 100;
    options.on_iterate = [&](const detail::SdpIterate &it) {
        // Only certify once the solver's own gap is in range; the checks
        // cost a factorization and an eigen-decomposition each.
        const double gap = std::abs(it.primal_objective - it.dual_objective);
        if (gap > 0.5 * tol * std::max(1.0, std::abs(it.dual_objective)) / scale && it.iterations % 5 != 4) {
            return false;
        }
        Certificate c = certify_upper(prob, it.y, p, q, n);
        if (c.upper < best.upper) {
            best = std::move(c);
        }
        best_lower = std::max(best_lower, certify_lower(prob, it.x, p, q, n));
        converged = within_tolerance(best_lower * scale, best.upper * scale, tol);
        return converged;
    };
    detail::SdpOutcome outcome;
    try {
        outcome = detail::solve_sdp(prob, std::move(start), options);
    } catch (const CheckFailure &) {
        outcome.termination = detail::SdpTermination::numerical_trouble;
    }
    if (!converged && !outcome.iterate.y.empty()) {
        Certificate c = certify_upper(prob, outcome.iterate.y, p, q, n);
        if (c.upper < best.upper) {
            best = std::move(c);
        }
        best_lower = std::max(best_lower, certify_lower(prob, outcome.iterate.x, p, q, n));
        converged = within_tolerance(best_lower * scale, best.upper * scale, tol);
    }

    result.iterations = outcome.iterate.iterations;
    if (!std::isfinite(best.upper)) {
        result.status = SdpStatus::infeasible_numerics;
        result.lower_bound = best_lower * scale;
        result.upper_bound = std::sqrt(static_cast<double>(std::min(p, q))) * scale;
        result.value = result.upper_bound;
        result.factorization = zero_certificate(grid);
        return result;
    }
    const double root = std::sqrt(scale);
    for (auto &d : best.factors.left) {
        d *= cplx{root};
    }
    for (auto &e : best.factors.right) {
        e *= cplx{root};
    }
    result.factorization = std::move(best.factors);
    result.upper_bound = best.upper * scale;
    result.lower_bound = std::min(best_lower * scale, result.upper_bound);
    result.value = result.upper_bound;
    if (converged) {
        result.status = SdpStatus::converged;
    } else if (outcome.termination == detail::SdpTermination::numerical_trouble) {
        result.status = SdpStatus::infeasible_numerics;
    } else {
        result.status = SdpStatus::max_iter;
    }
    return result;
}

namespace {

// Square root of a Hermitian PSD matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix &a) {
    const HermitianEigen e = hermitian_eigen(a);
    const std::size_t n = a.rows();
    ComplexMatrix scaled = e.vectors;
    for (std::size_t c = 0; c < n; ++c) {
        const double s = std::sqrt(std::max(0.0, e.values[c]));
        for (std::size_t r = 0; r < n; ++r) {
            scaled(r, c) *= s;
        }
    }
    return multiply_adjoint(scaled, e.vectors);
}

double trace_norm(const ComplexMatrix &a) {
    const ComplexMatrix gram = a.rows() <= a.cols() ? multiply_adjoint(a, a) : multiply_adjoint(dagger(a), dagger(a));
    double s = 0.0;
    for (double v : hermitian_eigenvalues(gram)) {
        s += std::sqrt(std::max(0.0, v));
    }
    return s;
}

ComplexMatrix block_diagonal(std::span<const ComplexMatrix> blocks, std::size_t n) {
    ComplexMatrix out(blocks.size() * n, blocks.size() * n);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        out.set_slice(i * n, i * n, blocks[i]);
    }
    return out;
}

}  // namespace

double weighted_trace_norm_bound(const FiberBlockGrid &grid, std::span<const ComplexMatrix> left_weights,
                                 std::span<const ComplexMatrix> right_weights) {
    if (grid.empty()) {
        return 0.0;
    }
    const std::size_t n = grid.level;
    std::vector<ComplexMatrix> lw(left_weights.begin(), left_weights.end());
    std::vector<ComplexMatrix> rw(right_weights.begin(), right_weights.end());
    if (lw.empty()) {
        lw.assign(grid.p(), ComplexMatrix::identity(n) * cplx{1.0 / static_cast<double>(grid.p() * n)});
    }
    if (rw.empty()) {
        rw.assign(grid.q(), ComplexMatrix::identity(n) * cplx{1.0 / static_cast<double>(grid.q() * n)});
    }
    if (lw.size() != grid.p() || rw.size() != grid.q()) {
        throw InputError("weighted_trace_norm_bound: one weight per grid row and column is required");
    }
    auto total_trace = [](const std::vector<ComplexMatrix> &ws) {
        double t = 0.0;
        for (const auto &w : ws) {
            if (!psd_check(w, 1e-12)) {
                throw InputError("weighted_trace_norm_bound: weights must be positive semidefinite");
            }
            for (std::size_t i = 0; i < w.rows(); ++i) {
                t += w(i, i).real();
            }
        }
        return t;
    };
    if (std::abs(total_trace(lw) - 1.0) > 1e-9 || std::abs(total_trace(rw) - 1.0) > 1e-9) {
        throw InputError("weighted_trace_norm_bound: weights must have total trace 1 on each side");
    }
    const ComplexMatrix wl = psd_sqrt(block_diagonal(lw, n));
    const ComplexMatrix wr = psd_sqrt(block_diagonal(rw, n));
    return trace_norm(wl * grid.assembled() * wr);
}

namespace {

// Adaptive Nelder-Mead (Gao-Han parameters) for nonsmooth objectives.
template <class F>
std::pair<std::vector<double>, double> nelder_mead(F &&f, std::vector<double> x0, double step, int max_evals) {
    const std::size_t d = x0.size();
    const double dd = static_cast<double>(d);
    const double alpha = 1.0, beta = 1.0 + 2.0 / dd, gamma = 0.75 - 1.0 / (2.0 * dd), delta = 1.0 - 1.0 / dd;
    std::vector<std::vector<double>> simplex(d + 1, x0);
    std::vector<double> values(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        simplex[i + 1][i] += step;
    }
    int evals = 0;
    for (std::size_t i = 0; i <= d; ++i) {
        values[i] = f(simplex[i]);
        ++evals;
    }
    std::vector<std::size_t> order(d + 1);
    while (evals < max_evals) {
        for (std::size_t i = 0; i <= d; ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0], worst = order[d], second = order[d - 1];
        if (values[worst] - values[best] <= 1e-13 * (1.0 + std::abs(values[best]))) {
            break;
        }
        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                centroid[j] += simplex[order[i]][j] / dd;
            }
        }
        auto along = [&](double t) {
            std::vector<double> p(d);
            for (std::size_t j = 0; j < d; ++j) {
                p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
            }
            return p;
        };
        std::vector<double> xr = along(-alpha);
        const double fr = f(xr);
        ++evals;
        if (fr < values[best]) {
            std::vector<double> xe = along(-alpha * beta);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                simplex[worst] = std::move(xe);
                values[worst] = fe;
            } else {
                simplex[worst] = std::move(xr);
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = std::move(xr);
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        std::vector<double> xc = along(outside ? -alpha * gamma : gamma);
        const double fc = f(xc);
        ++evals;
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = std::move(xc);
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= d; ++i) {
            auto &v = simplex[order[i]];
            for (std::size_t j = 0; j < d; ++j) {
                v[j] = simplex[best][j] + delta * (v[j] - simplex[best][j]);
            }
            values[order[i]] = f(v);
            ++evals;
        }
    }
    const auto it = std::min_element(values.begin(), values.end());
    return {simplex[static_cast<std::size_t>(it - values.begin())], *it};
}

}  // namespace

double brute_force_norm(const FiberBlockGrid &grid, const BruteForceOptions &options) {
    if (grid.empty()) {
        return 0.0;
    }
    const std::size_t n = grid.level;
    if (grid.p() * grid.q() * n > 12) {
        throw InputError("brute_force_norm: p*q*n must be at most 12");
    }
    // Search over the factor on the smaller side; h(G) equals h of the
    // adjoint grid with the sides swapped.
    ComplexMatrix a = grid.assembled();
    std::size_t row_blocks = grid.p(), col_blocks = grid.q();
    if (grid.q() < grid.p()) {
        a = dagger(a);
        std::swap(row_blocks, col_blocks);
    }
    const std::size_t rows = a.rows();

    const HermitianEigen range = hermitian_eigen(multiply_adjoint(a, a));
    const double top = std::max(range.values.back(), 0.0);
    if (top == 0.0) {
        return 0.0;
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < rows; ++i) {
        if (range.values[i] > 1e-20 * top) {
            kept.push_back(i);
        }
    }
    const std::size_t rank = kept.size();
    const std::size_t cap = options.inner_dim_cap == 0 ? rows : options.inner_dim_cap;
    if (cap < rank) {
        throw InputError("brute_force_norm: inner dimension cap " + std::to_string(cap) + " is below the grid rank " +
                         std::to_string(rank));
    }
    const std::size_t inner = std::min(cap, rows);
    ComplexMatrix basis(rows, rank);  // orthonormal basis of range(a)
    for (std::size_t c = 0; c < rank; ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            basis(r, c) = range.vectors(r, kept[c]);
        }
    }

    // Parameters: T (rank x rank) and V (rows x (inner - rank)), complex.
    // R = [basis * T | V] has range(R) >= range(a) whenever T is invertible.
    const std::size_t t_count = rank * rank;
    const std::size_t v_count = rows * (inner - rank);
    auto unpack = [&](const std::vector<double> &x) {
        ComplexMatrix t(rank, rank);
        for (std::size_t i = 0; i < t_count; ++i) {
            t.data()[i] = {x[2 * i], x[2 * i + 1]};
        }
        ComplexMatrix r(rows, inner);
        r.set_slice(0, 0, basis * t);
        for (std::size_t i = 0; i < v_count; ++i) {
            const std::size_t row = i / (inner - rank), col = rank + i % (inner - rank);
            r(row, col) = {x[2 * (t_count + i)], x[2 * (t_count + i) + 1]};
        }
        return r;
    };
    auto objective = [&](const std::vector<double> &x) {
        const ComplexMatrix r = unpack(x);
        const ComplexMatrix rdag = dagger(r);
        const auto l = cholesky(rdag * r);
        if (!l) {
            return std::numeric_limits<double>::infinity();
        }
        // C^* = (R^* R)^{-1} R^* a
        const ComplexMatrix linv = lower_triangular_inverse(*l);
        const ComplexMatrix c_adj = dagger(linv) * (linv * (rdag * a));
        if ((r * c_adj - a).max_abs() > 1e-8 * std::max(1.0, a.max_abs())) {
            return std::numeric_limits<double>::infinity();
        }
        double left = 0.0, right = 0.0;
        for (std::size_t b = 0; b < row_blocks; ++b) {
            left = std::max(left, op_norm(r.slice(b * n, n, 0, inner)));
        }
        for (std::size_t b = 0; b < col_blocks; ++b) {
            right = std::max(right, op_norm(c_adj.slice(0, inner, b * n, n)));
        }
        return left * right;
    };

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t dims = 2 * (t_count + v_count);
    double best = std::numeric_limits<double>::infinity();
    const int restarts = std::max(1, options.restarts);
    for (int s = 0; s < restarts; ++s) {
        std::vector<double> x(dims);
        if (s == 0) {
            // T = I, V = 0.
            for (std::size_t i = 0; i < rank; ++i) {
                x[2 * (i * rank + i)] = 1.0;
            }
        } else {
            for (double &v : x) {
                v = normal(rng);
            }
        }
        double value = objective(x);
        double step = 0.5;
        for (int round = 0; round < 8; ++round) {
            auto [xn, fn] = nelder_mead(objective, x, step, 400 * static_cast<int>(dims) + 400);
            const bool improved = fn < value * (1.0 - 1e-10);
            x = std::move(xn);
            value = fn;
            step = improved ? step : step * 0.3;
            if (step < 1e-7) {
                break;
            }
        }
        best = std::min(best, value);
    }
    return best;
}

}  // namespace hcb
