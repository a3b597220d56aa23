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

#include "kernels_impl.hpp"

#include <cstdlib>
#include <string_view>

namespace hcb::kernels {

const KernelTable &scalar_table() {
    static const KernelTable table{"scalar", scalar::ddot, scalar::daxpy, scalar::zdotc, scalar::zdotu,
                                   scalar::zaxpy};
    return table;
}

const KernelTable *avx2_table() {
#if defined(HCB_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    static const KernelTable table{"avx2", avx2::ddot, avx2::daxpy, avx2::zdotc, avx2::zdotu, avx2::zaxpy};
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &active() {
    static const KernelTable &chosen = [] () -> const KernelTable & {
        const char *forced = std::getenv("HCB_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar") {
            return scalar_table();
        }
        if (const KernelTable *t = avx2_table()) {
            return *t;
        }
        return scalar_table();
    }();
    return chosen;
}

}  // namespace hcb::kernels
