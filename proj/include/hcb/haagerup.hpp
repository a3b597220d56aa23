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

// Haagerup norm of a balanced tensor and the comparisons with the minimal
// norm. The Haagerup norm is the max over base points of the factorization
// norm of the fiber grid; fibers are solved independently.

#include <vector>

#include "hcb/sdp.hpp"
#include "hcb/tensor.hpp"

namespace hcb {

struct FiberNorm {
    std::size_t base = 0;
    std::size_t p = 0;
    std::size_t q = 0;
    SdpResult result;
};

struct HaagerupResult {
    double value = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    SdpStatus status = SdpStatus::converged;  // worst over fibers
    std::vector<FiberNorm> per_fiber;         // nonempty fibers only
    /// Per-fiber certificates joined block-diagonally; bound() <= upper_bound.
    Factorization factorization;
};

HaagerupResult haagerup_norm(const BalancedTensor &t, double tolerance = kDefaultTolerance);

enum class FactorSide {
    left,      // inner space C^{pn}: DD^* = I, ||E||^2 <= p min^2
    right,     // inner space C^{qn}: E^*E = I, ||D||^2 <= q min^2
    balanced,  // smaller side per fiber, rescaled so ||D|| = ||E||
};

/// The explicit factorization through the Kronecker identification
/// C^m (x) M_n. On the left side D(a) = sum_i e_{i, i m + a} and
/// E(b)[i m + a, j] = G(a, b)_{ij}. Throws InputError on an empty grid.
Factorization hmin_factorization(const FiberBlockGrid &grid, FactorSide side = FactorSide::left);

/// Tensor-level version: per-fiber factorizations stitched together. With
/// FactorSide::balanced, bound() <= sqrt(max_min_fiber) * min_norm(t).
Factorization hmin_factorization(const BalancedTensor &t, FactorSide side = FactorSide::balanced);

/// ||t||_h / ||t||_min, the norm of the inverse comparison map on t. Throws
/// InputError when t is zero.
double comparison_inverse_ratio(const BalancedTensor &t, double tolerance = kDefaultTolerance);

}  // namespace hcb
