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

#include <stdexcept>
#include <string>

namespace hcb {

/// Malformed or inconsistent input: unknown labels, shape mismatches,
/// violated preconditions. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
  public:
    explicit InputError(const std::string &what) : std::invalid_argument(what) {}
};

/// A checked mathematical condition failed on otherwise well-formed input
/// (e.g. a cocycle residual above tolerance). The CLI maps this to exit code 1.
class CheckFailure : public std::runtime_error {
  public:
    explicit CheckFailure(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace hcb
