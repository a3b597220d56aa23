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

#include "hcb/flip_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hcb/haagerup.hpp"
#include "hcb/witness.hpp"

namespace hcb {

double certified_flip_cb_norm(const SpaceMap &m1, const SpaceMap &m2) {
    return std::sqrt(static_cast<double>(max_min_fiber(m1, m2)));
}

namespace {

void evaluate(FlipBound &out, std::string source, std::size_t index, BalancedTensor t, const ProductPtr &flipped,
              double tol) {
    const double mn = min_norm(t);
    if (!(mn > 0.0)) {
        ++out.skipped;
        return;
    }
    // Normalised so both norms are of order one.
    t *= cplx{1.0 / mn};
    FlipSample s;
    s.source = std::move(source);
    s.index = index;
    s.min = 1.0;
    s.h = haagerup_norm(t, tol).value;
    s.h_flip = haagerup_norm(flip(t, flipped), tol).value;
    if (out.samples.empty() || s.flip_ratio() > out.samples[out.best_sample].flip_ratio()) {
        out.best_sample = out.samples.size();
        out.lower_bound = s.flip_ratio();
    }
    out.samples.push_back(std::move(s));
    out.tensors.push_back(std::move(t));
}

}  // namespace

FlipBound flip_norm_lower_bound(const SpaceMap &m1, const SpaceMap &m2, const SamplingConfig &config) {
    FlipBound out;
    out.max_min_fiber = max_min_fiber(m1, m2);
    out.certified = std::sqrt(static_cast<double>(out.max_min_fiber));
    const ProductPtr product = make_product(m1, m2);
    const ProductPtr flipped = flipped_product(*product);
    const std::size_t n = std::max<std::size_t>(config.level, 1);

    if (config.plant_witnesses) {
        for (std::size_t x = 0; x < product->base_space()->size(); ++x) {
            const std::size_t f = std::min(m1.fiber(x).size(), m2.fiber(x).size());
            if (f < 2) {
                continue;
            }
            const std::size_t k = std::min(n, f);
            evaluate(out, "witness", x, pad_level(witness_tensor(product, x, k), n), flipped, config.tolerance);
        }
    }
    for (int trial = 0; trial < config.trials; ++trial) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(trial)};
        std::mt19937_64 rng(seq);
        evaluate(out, "random", static_cast<std::size_t>(trial), random_tensor(product, n, rng, config.sparsity),
                 flipped, config.tolerance);
    }
    return out;
}

TheoremReport verify_theorem(const SpaceMap &m1, const SpaceMap &m2, const SamplingConfig &config) {
    TheoremReport r;
    r.sampling = flip_norm_lower_bound(m1, m2, config);
    r.max_min_fiber = r.sampling.max_min_fiber;
    r.certified = r.sampling.certified;
    r.comparison_cap = r.certified;
    r.flip_cap = r.certified;
    r.flip_lower_bound = r.sampling.lower_bound;

    const double eps = config.tolerance;
    auto slack = [&](double v) { return 3.0 * eps * std::max(1.0, std::abs(v)); };
    auto check_le = [&](const char *name, double lhs, double rhs, std::size_t i) {
        if (lhs > rhs + slack(rhs)) {
            r.violations.push_back({name, lhs, rhs, i, r.sampling.tensors[i]});
        }
    };
    for (std::size_t i = 0; i < r.sampling.samples.size(); ++i) {
        const FlipSample &s = r.sampling.samples[i];
        r.comparison_ratio_max = std::max(r.comparison_ratio_max, s.comparison_ratio());
        r.reversed_comparison_max = std::max(r.reversed_comparison_max, s.flip_comparison_ratio());
        check_le("min <= h", 1.0, s.comparison_ratio(), i);
        check_le("h <= sqrt(c) min", s.comparison_ratio(), r.comparison_cap, i);
        check_le("min <= h (flip)", 1.0, s.flip_comparison_ratio(), i);
        check_le("h <= sqrt(c) min (flip)", s.flip_comparison_ratio(), r.comparison_cap, i);
        check_le("flip ratio <= reversed comparison ratio", s.flip_ratio(), s.flip_comparison_ratio(), i);
        check_le("h(flip t) <= sqrt(c) h(t)", s.h_flip, r.flip_cap * s.h, i);
    }
    return r;
}

}  // namespace hcb
