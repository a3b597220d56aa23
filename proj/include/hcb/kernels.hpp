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

// Dense inner-loop kernels behind a runtime-selected dispatch table.
//
// Every kernel has a portable scalar reference implementation. When the
// library is built for x86-64 an AVX2+FMA variant is compiled in a separate
// translation unit and selected at first use if the CPU reports support.
// The environment variable HCB_KERNELS=scalar forces the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace hcb::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;

    /// sum_i a[i] * b[i]
    double (*ddot)(const double *a, const double *b, std::size_t n);
    /// y[i] += alpha * x[i]
    void (*daxpy)(double alpha, const double *x, double *y, std::size_t n);
    /// sum_i conj(a[i]) * b[i]
    cplx (*zdotc)(const cplx *a, const cplx *b, std::size_t n);
    /// sum_i a[i] * b[i]
    cplx (*zdotu)(const cplx *a, const cplx *b, std::size_t n);
    /// y[i] += alpha * x[i]
    void (*zaxpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);
};

const KernelTable &scalar_table();

/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable *avx2_table();

/// The table used by the library. Chosen once, on first call.
const KernelTable &active();

}  // namespace hcb::kernels
