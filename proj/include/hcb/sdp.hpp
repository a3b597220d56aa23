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

// Factorization (Haagerup) norm of a single fiber grid.
//
// For a p x q grid G of n x n blocks the norm is
//
//   inf { max_a ||D(a)|| * max_b ||E(b)|| : G(a, b) = D(a) E(b) }.
//
// It is computed as the semidefinite program
//
//   minimize t  over  M = [[P, G], [G^*, Q]] >= 0  with  P_aa <= t I, Q_bb <= t I
//
// where the off-diagonal blocks of P and Q are free. A Gram factor of the
// optimal M gives an explicit factorization with ||D(a)||^2 <= t and
// ||E(b)||^2 <= t, so every reported value is backed by a certificate. The
// dual program
//
//   maximize 2 Re <Y, G>  over  [[diag(W_a), Y], [Y^*, diag(V_b)]] >= 0,
//                              sum tr W_a + sum tr V_b = 1
//
// supplies the matching lower bound.

#include <cstdint>
#include <string_view>

#include "hcb/tensor.hpp"

namespace hcb {

inline constexpr double kDefaultTolerance = 1e-7;

struct FactorizationNormProblem {
    FiberBlockGrid grid;
    double tolerance = kDefaultTolerance;
};

enum class SdpStatus { converged, max_iter, infeasible_numerics };

std::string_view to_string(SdpStatus s);

struct SdpResult {
    /// The certified upper bound; equal to the certificate's ||D|| ||E||
    /// up to rounding.
    double value = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    Factorization factorization;
    int iterations = 0;
    SdpStatus status = SdpStatus::converged;
};

/// Solves to within `tolerance`, absolute for values <= 1 and relative
/// above. The lower bound is max(min-norm, dual objective); the upper bound
/// comes from the extracted factorization. An empty grid or a zero grid
/// has value 0 with a zero certificate.
SdpResult factorization_norm(const FactorizationNormProblem &problem);

struct BruteForceOptions {
    std::size_t inner_dim_cap = 0;  // 0: use the smaller side's p*n (or q*n)
    int restarts = 12;
    std::uint64_t seed = 1;
};

/// Multistart Nelder-Mead over exact factorizations G = R C^* with inner
/// dimension up to the cap. For a fixed left factor R the best right factor
/// is the minimum-norm solution R^+ G, so only R is searched. Returns the
/// best product of norms found, an upper bound on the true value. Requires
/// p*q*n <= 12; throws InputError when the cap is below the rank of the
/// assembled grid.
double brute_force_norm(const FiberBlockGrid &grid, const BruteForceOptions &options = {});

/// max over block-diagonal weights W, V (trace 1 each) of
/// ||W^{1/2} G V^{1/2}||_1, evaluated at the given weights. Any admissible
/// choice is a lower bound on the factorization norm; uniform weights
/// I/(pn), I/(qn) are used when the spans are empty.
double weighted_trace_norm_bound(const FiberBlockGrid &grid, std::span<const ComplexMatrix> left_weights = {},
                                 std::span<const ComplexMatrix> right_weights = {});

}  // namespace hcb
