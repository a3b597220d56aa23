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

// JSON interchange. Complex numbers are [re, im] pairs, matrices are arrays
// of rows, tensor and datum blocks are keyed by "y1|y2" pair labels.

#include <string>

#include "json.hpp"

#include "hcb/descent.hpp"
#include "hcb/tensor.hpp"
#include "hcb/topology.hpp"

namespace hcb::io {

using json = nlohmann::ordered_json;

/// Parses text; malformed input throws InputError carrying the parser's
/// byte position.
json parse(const std::string &text, const std::string &source = "input");
json read_file(const std::string &path);

json to_json(const ComplexMatrix &m);
/// Throws InputError unless `j` is a rows x cols array of [re, im] pairs.
ComplexMatrix matrix_from_json(const json &j, std::size_t rows, std::size_t cols);

/// {"X": [...], "Y1": [...], "Y2": [...], "mu1": {...}, "mu2": {...}}
struct Instance {
    SpaceMap mu1;
    SpaceMap mu2;
};
Instance instance_from_json(const json &j);
json to_json(const Instance &inst);

/// {"X": [...], "Y": [...], "mu": {...}}; "Y1"/"mu1" are accepted as well.
SpaceMap cover_from_json(const json &j);

/// {"level": n, "blocks": {"y1|y2": matrix}}; missing pairs are zero.
json to_json(const BalancedTensor &t);
BalancedTensor tensor_from_json(const json &j, const ProductPtr &product);

/// {"level": n, "inner": m, "left": {"y": matrix}, "right": {"y": matrix}}
json to_json(const Factorization &f, const FiberedProduct &product);

/// {"dims": {"y": d}, "phi": {"y1|y2": matrix}}
json to_json(const DescentDatum &d);
DescentDatum datum_from_json(const json &j, const SpaceMap &mu);

json to_json(const FiniteBundle &b);

}  // namespace hcb::io
