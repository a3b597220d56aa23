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

#include "hcb/kernels.hpp"

namespace hcb::kernels {

namespace scalar {
double ddot(const double *a, const double *b, std::size_t n);
void daxpy(double alpha, const double *x, double *y, std::size_t n);
cplx zdotc(const cplx *a, const cplx *b, std::size_t n);
cplx zdotu(const cplx *a, const cplx *b, std::size_t n);
void zaxpy(cplx alpha, const cplx *x, cplx *y, std::size_t n);
}  // namespace scalar

#if defined(HCB_HAVE_AVX2)
namespace avx2 {
double ddot(const double *a, const double *b, std::size_t n);
void daxpy(double alpha, const double *x, double *y, std::size_t n);
cplx zdotc(const cplx *a, const cplx *b, std::size_t n);
cplx zdotu(const cplx *a, const cplx *b, std::size_t n);
void zaxpy(cplx alpha, const cplx *x, cplx *y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace hcb::kernels
