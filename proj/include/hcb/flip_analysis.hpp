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

// The completely bounded norm of the flip b1 (x) b2 |-> b2 (x) b1 from the
// Haagerup tensor product over C(X) to the reversed one. Its exact value is
// sqrt(max_x min(#mu1^{-1}x, #mu2^{-1}x)). The norm is a supremum over all
// matrix levels and all tensors, so it is not a single convex program; this
// module reports the closed form together with sampled lower bounds and
// checks every inequality the closed form implies.

#include <cstdint>
#include <string>
#include <vector>

#include "hcb/sdp.hpp"
#include "hcb/tensor.hpp"

namespace hcb {

double certified_flip_cb_norm(const SpaceMap &m1, const SpaceMap &m2);

struct SamplingConfig {
    std::size_t level = 2;
    int trials = 20;
    std::uint64_t seed = 0;
    double tolerance = kDefaultTolerance;
    /// Probability of zeroing each block of a random sample.
    double sparsity = 0.0;
    /// Plant a witness at every base point whose smaller fiber has >= 2 points.
    bool plant_witnesses = true;
};

struct FlipSample {
    std::string source;  // "random" or "witness"
    std::size_t index = 0;
    double min = 0.0;
    double h = 0.0;       // ||t||_h
    double h_flip = 0.0;  // ||flip(t)||_h
    double flip_ratio() const { return h_flip / h; }
    double comparison_ratio() const { return h / min; }
    double flip_comparison_ratio() const { return h_flip / min; }
};

struct FlipBound {
    double certified = 0.0;
    std::size_t max_min_fiber = 0;
    double lower_bound = 0.0;
    std::size_t best_sample = 0;  // index into samples
    std::size_t skipped = 0;      // zero samples
    std::vector<FlipSample> samples;
    std::vector<BalancedTensor> tensors;  // parallel to samples
};

/// Max of ||flip(t)||_h / ||t||_h over seeded random tensors and planted
/// witnesses at the given level. Each random trial draws from its own
/// generator seeded by (seed, trial).
FlipBound flip_norm_lower_bound(const SpaceMap &m1, const SpaceMap &m2, const SamplingConfig &config);

struct Violation {
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    std::size_t sample = 0;
    BalancedTensor tensor;
};

struct TheoremReport {
    std::size_t max_min_fiber = 0;  // (c)
    double certified = 0.0;         // sqrt of (c)
    double comparison_ratio_max = 0.0;  // (a): max ||t||_h / ||t||_min
    double comparison_cap = 0.0;
    double flip_lower_bound = 0.0;  // (b)
    double flip_cap = 0.0;
    /// max over samples of ||flip t||_h / ||flip t||_min, which bounds the
    /// flip ratio of the same sample from above.
    double reversed_comparison_max = 0.0;
    FlipBound sampling;
    std::vector<Violation> violations;
    bool passed() const { return violations.empty(); }
};

/// Checks, for every sample and within 3 tolerance (relative above 1):
///   1 <= ||t||_h / ||t||_min <= sqrt(c), and the same for flip(t);
///   ||flip t||_h / ||t||_h <= ||flip t||_h / ||flip t||_min;
///   ||flip t||_h <= sqrt(c) ||t||_h.
TheoremReport verify_theorem(const SpaceMap &m1, const SpaceMap &m2, const SamplingConfig &config);

}  // namespace hcb
