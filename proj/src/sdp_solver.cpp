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

#include "sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hcb/error.hpp"
#include "hcb/kernels.hpp"

namespace hcb::detail {

namespace {

// Constraint entries flattened into parallel arrays; constraint i owns
// entries [start[i], start[i+1]).
struct FlatConstraints {
    std::vector<std::size_t> start;
    std::vector<std::size_t> row;
    std::vector<std::size_t> col;
    std::vector<cplx> coef;

    explicit FlatConstraints(const SdpProblem &p) {
        start.reserve(p.constraints.size() + 1);
        start.push_back(0);
        for (const auto &c : p.constraints) {
            for (const auto &e : c.entries) {
                row.push_back(e.row);
                col.push_back(e.col);
                coef.push_back(e.coef);
            }
            start.push_back(row.size());
        }
    }
    std::size_t size() const { return start.size() - 1; }
};

// Re tr(A_i M) for every constraint, M arbitrary square.
std::vector<double> apply_constraints(const FlatConstraints &fc, const ComplexMatrix &m) {
    std::vector<double> out(fc.size(), 0.0);
    for (std::size_t i = 0; i < fc.size(); ++i) {
        double s = 0.0;
        for (std::size_t e = fc.start[i]; e < fc.start[i + 1]; ++e) {
            s += (fc.coef[e] * m(fc.col[e], fc.row[e])).real();
        }
        out[i] = s;
    }
    return out;
}

ComplexMatrix adjoint(const FlatConstraints &fc, std::size_t dim, const std::vector<double> &y) {
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < fc.size(); ++i) {
        if (y[i] == 0.0) {
            continue;
        }
        for (std::size_t e = fc.start[i]; e < fc.start[i + 1]; ++e) {
            out(fc.row[e], fc.col[e]) += y[i] * fc.coef[e];
        }
    }
    return out;
}

double real_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    // Re tr(a b) for Hermitian a, b equals Re sum conj(a_ij) b_ij.
    return kernels::active().zdotc(a.data().data(), b.data().data(), a.data().size()).real();
}

// Dense symmetric positive definite factorization H = L L^T, row-major,
// lower triangle only.
class RealCholesky {
  public:
    bool factor(std::vector<double> h, std::size_t n) {
        n_ = n;
        l_ = std::move(h);
        const auto &k = kernels::active();
        for (std::size_t j = 0; j < n; ++j) {
            double *lj = l_.data() + j * n;
            const double d = lj[j] - k.ddot(lj, lj, j);
            if (!(d > 0.0) || !std::isfinite(d)) {
                return false;
            }
            const double ljj = std::sqrt(d);
            lj[j] = ljj;
            for (std::size_t i = j + 1; i < n; ++i) {
                double *li = l_.data() + i * n;
                li[j] = (li[j] - k.ddot(li, lj, j)) / ljj;
            }
        }
        return true;
    }

    std::vector<double> solve(std::vector<double> x) const {
        const auto &k = kernels::active();
        for (std::size_t i = 0; i < n_; ++i) {
            const double *li = l_.data() + i * n_;
            x[i] = (x[i] - k.ddot(li, x.data(), i)) / li[i];
        }
        for (std::size_t i = n_; i-- > 0;) {
            const double *li = l_.data() + i * n_;
            x[i] /= li[i];
            k.daxpy(-x[i], li, x.data(), i);
        }
        return x;
    }

  private:
    std::size_t n_ = 0;
    std::vector<double> l_;
};

// Lower triangle (and mirrored upper) of H_ij = Re tr(A_i X A_j W).
std::vector<double> schur_matrix(const FlatConstraints &fc, const ComplexMatrix &x, const ComplexMatrix &w) {
    const std::size_t k = fc.size();
    std::vector<double> h(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t e = fc.start[i]; e < fc.start[i + 1]; ++e) {
                const std::size_t re = fc.row[e], ce = fc.col[e];
                cplx acc = 0.0;
                for (std::size_t f = fc.start[j]; f < fc.start[j + 1]; ++f) {
                    acc += fc.coef[f] * x(ce, fc.row[f]) * w(fc.col[f], re);
                }
                s += (fc.coef[e] * acc).real();
            }
            h[i * k + j] = s;
            h[j * k + i] = s;
        }
    }
    return h;
}

ComplexMatrix hermitian_inverse(const ComplexMatrix &a) {
    const auto l = cholesky(a);
    if (!l) {
        throw CheckFailure("sdp: iterate lost positive definiteness");
    }
    const ComplexMatrix linv = lower_triangular_inverse(*l);
    // a^{-1} = L^{-*} L^{-1}
    return hermitian_part(dagger(linv) * linv);
}

// Largest alpha with m + alpha * dm >= 0 (infinity when dm >= 0).
double max_step(const ComplexMatrix &m, const ComplexMatrix &dm) {
    const auto l = cholesky(m);
    if (!l) {
        return 0.0;
    }
    const ComplexMatrix linv = lower_triangular_inverse(*l);
    const ComplexMatrix scaled = multiply_adjoint(linv * dm, linv);
    const double lmin = hermitian_eigenvalues(scaled).front();
    if (lmin >= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -1.0 / lmin;
}

double vector_norm(const std::vector<double> &v) {
    double s = 0.0;
    for (double d : v) {
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

ComplexMatrix apply_adjoint(const SdpProblem &problem, const std::vector<double> &y) {
    return adjoint(FlatConstraints(problem), problem.dim, y);
}

SdpOutcome solve_sdp(const SdpProblem &problem, SdpIterate it, const SdpOptions &options) {
    const FlatConstraints fc(problem);
    const std::size_t n = problem.dim;
    const std::size_t k = fc.size();
    if (problem.rhs.size() != k || it.y.size() != k || it.x.rows() != n || it.z.rows() != n) {
        throw InputError("sdp: inconsistent problem dimensions");
    }

    SdpOutcome out;
    for (int iter = 0;; ++iter) {
        const std::vector<double> ax = apply_constraints(fc, it.x);
        std::vector<double> rp(k);
        for (std::size_t i = 0; i < k; ++i) {
            rp[i] = problem.rhs[i] - ax[i];
        }
        ComplexMatrix rd = problem.cost - adjoint(fc, n, it.y) - it.z;
        rd = hermitian_part(rd);

        it.iterations = iter;
        it.primal_objective = real_inner(problem.cost, it.x);
        it.dual_objective = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            it.dual_objective += problem.rhs[i] * it.y[i];
        }
        it.primal_infeasibility = vector_norm(rp) / (1.0 + vector_norm(problem.rhs));
        it.dual_infeasibility = rd.frobenius_norm() / (1.0 + problem.cost.frobenius_norm());

        if (options.on_iterate && options.on_iterate(it)) {
            out.termination = SdpTermination::stopped_by_callback;
            break;
        }
        const double gap = std::abs(it.primal_objective - it.dual_objective);
        if (gap <= options.gap_tolerance * (1.0 + std::abs(it.primal_objective) + std::abs(it.dual_objective)) &&
            it.primal_infeasibility <= options.feasibility_tolerance &&
            it.dual_infeasibility <= options.feasibility_tolerance) {
            out.termination = SdpTermination::gap_reached;
            break;
        }
        if (iter >= options.max_iterations) {
            out.termination = SdpTermination::max_iterations;
            break;
        }

        const ComplexMatrix w = hermitian_inverse(it.z);
        const double mu = real_inner(it.x, it.z) / static_cast<double>(n);

        std::vector<double> h = schur_matrix(fc, it.x, w);
        RealCholesky chol;
        bool factored = chol.factor(h, k);
        for (double reg = 1e-14; !factored && reg < 1e-6; reg *= 100.0) {
            double scale = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                scale = std::max(scale, h[i * k + i]);
            }
            std::vector<double> hr = h;
            for (std::size_t i = 0; i < k; ++i) {
                hr[i * k + i] += reg * scale;
            }
            factored = chol.factor(std::move(hr), k);
        }
        if (!factored) {
            out.termination = SdpTermination::numerical_trouble;
            break;
        }

        const ComplexMatrix xrdw = it.x * rd * w;
        const std::vector<double> a_xrdw = apply_constraints(fc, xrdw);

        struct Direction {
            ComplexMatrix dx;
            std::vector<double> dy;
            ComplexMatrix dz;
        };
        auto direction = [&](const ComplexMatrix &rc) {
            const std::vector<double> a_rcw = apply_constraints(fc, rc * w);
            std::vector<double> rhs(k);
            for (std::size_t i = 0; i < k; ++i) {
                rhs[i] = rp[i] - a_rcw[i] + a_xrdw[i];
            }
            Direction d;
            d.dy = chol.solve(std::move(rhs));
            d.dz = hermitian_part(rd - adjoint(fc, n, d.dy));
            d.dx = hermitian_part(rc * w - it.x * d.dz * w);
            return d;
        };

        const ComplexMatrix xz = it.x * it.z;
        // Predictor (affine scaling).
        const Direction pred = direction(-1.0 * xz);
        const double ap = std::min(1.0, max_step(it.x, pred.dx));
        const double ad = std::min(1.0, max_step(it.z, pred.dz));
        const double mu_aff =
            real_inner(it.x + ap * pred.dx, it.z + ad * pred.dz) / static_cast<double>(n);
        const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
        const double sigma = ratio * ratio * ratio;

        // Corrector.
        ComplexMatrix rc = ComplexMatrix::identity(n) * cplx{sigma * mu};
        rc -= xz;
        rc -= pred.dx * pred.dz;
        const Direction corr = direction(rc);

        const double gamma = 0.9 + 0.09 * std::min(ap, ad);
        const double step_p = std::min(1.0, gamma * max_step(it.x, corr.dx));
        const double step_d = std::min(1.0, gamma * max_step(it.z, corr.dz));
        if (step_p < 1e-12 && step_d < 1e-12) {
            out.termination = SdpTermination::numerical_trouble;
            break;
        }
        it.x += step_p * corr.dx;
        it.x = hermitian_part(it.x);
        for (std::size_t i = 0; i < k; ++i) {
            it.y[i] += step_d * corr.dy[i];
        }
        it.z += step_d * corr.dz;
        it.z = hermitian_part(it.z);
    }
    out.iterate = std::move(it);
    return out;
}

}  // namespace hcb::detail
