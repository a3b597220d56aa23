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

// Primal-dual interior-point method for small dense complex SDPs in
// standard form:
//
//   minimize  <C, X>   subject to  <A_i, X> = b_i,  X >= 0      (primal)
//   maximize  b . y    subject to  Z = C - sum_i y_i A_i >= 0    (dual)
//
// with X, Z, C, A_i Hermitian and <A, X> = Re tr(A X). Constraint matrices
// are sparse lists of entries. The search direction is HKM with a Mehrotra
// predictor-corrector step.

#include <cstddef>
#include <functional>
#include <vector>

#include "hcb/matrix.hpp"

namespace hcb::detail {

/// A = sum_e coef_e * E(row_e, col_e). The entry list must describe a
/// Hermitian matrix (both (r, c) and (c, r) present off the diagonal).
struct SparseHermitian {
    struct Entry {
        std::size_t row;
        std::size_t col;
        cplx coef;
    };
    std::vector<Entry> entries;
};

struct SdpProblem {
    std::size_t dim = 0;
    ComplexMatrix cost;
    std::vector<SparseHermitian> constraints;
    std::vector<double> rhs;
};

struct SdpIterate {
    ComplexMatrix x;
    std::vector<double> y;
    ComplexMatrix z;
    int iterations = 0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
};

enum class SdpTermination { stopped_by_callback, gap_reached, max_iterations, numerical_trouble };

struct SdpOptions {
    int max_iterations = 80;
    /// Stop when |pobj - dobj| <= gap_tolerance * (1 + |pobj| + |dobj|) and
    /// both infeasibilities are below feasibility_tolerance.
    double gap_tolerance = 1e-12;
    double feasibility_tolerance = 1e-10;
    /// Called after every iteration; returning true stops the solve.
    std::function<bool(const SdpIterate &)> on_iterate;
};

struct SdpOutcome {
    SdpIterate iterate;
    SdpTermination termination = SdpTermination::max_iterations;
};

/// (x, y, z) is the starting point; x and z must be positive definite.
SdpOutcome solve_sdp(const SdpProblem &problem, SdpIterate start, const SdpOptions &options);

/// sum_i y_i A_i
ComplexMatrix apply_adjoint(const SdpProblem &problem, const std::vector<double> &y);

}  // namespace hcb::detail
