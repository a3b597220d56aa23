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

#include "hcb/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hcb/error.hpp"

namespace hcb::io {

namespace {

const json &require(const json &j, const char *key, const std::string &what) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(what + ": missing key \"" + key + "\"");
    }
    return j.at(key);
}

std::vector<std::string> labels_from_json(const json &j, const std::string &what) {
    if (!j.is_array()) {
        throw InputError(what + " must be an array of labels");
    }
    std::vector<std::string> out;
    for (const auto &e : j) {
        if (!e.is_string()) {
            throw InputError(what + " must contain only strings");
        }
        std::string s = e.get<std::string>();
        if (s.find('|') != std::string::npos) {
            throw InputError(what + ": label \"" + s + "\" contains the reserved character '|'");
        }
        out.push_back(std::move(s));
    }
    return out;
}

SpaceMap map_from_json(const json &j, const SpacePtr &domain, const SpacePtr &codomain, const std::string &what) {
    if (!j.is_object()) {
        throw InputError(what + " must be an object from points to points");
    }
    std::vector<std::pair<std::string, std::string>> assignment;
    for (const auto &[k, v] : j.items()) {
        if (!v.is_string()) {
            throw InputError(what + ": value for \"" + k + "\" is not a label");
        }
        assignment.emplace_back(k, v.get<std::string>());
    }
    return SpaceMap::from_labels(domain, codomain, assignment);
}

json map_to_json(const SpaceMap &m) {
    json j = json::object();
    for (std::size_t i = 0; i < m.domain()->size(); ++i) {
        j[m.domain()->label(i)] = m.codomain()->label(m(i));
    }
    return j;
}

std::size_t pair_index(const FiberedProduct &p, const std::string &key, const std::string &what) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) {
        throw InputError(what + ": key \"" + key + "\" is not of the form y1|y2");
    }
    const std::size_t a = p.left_map.domain()->index_of(key.substr(0, bar));
    const std::size_t b = p.right_map.domain()->index_of(key.substr(bar + 1));
    const std::size_t i = p.index_of(a, b);
    if (i == FiberedProduct::npos) {
        throw InputError(what + ": pair \"" + key + "\" is not in the fibered product");
    }
    return i;
}

}  // namespace

json parse(const std::string &text, const std::string &source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

json read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

json to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j, std::size_t rows, std::size_t cols) {
    const std::string shape = std::to_string(rows) + "x" + std::to_string(cols);
    if (!j.is_array() || j.size() != rows) {
        throw InputError("matrix must be an array of " + std::to_string(rows) + " rows (" + shape + ")");
    }
    std::vector<cplx> data;
    data.reserve(rows * cols);
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != cols) {
            throw InputError("matrix row must have " + std::to_string(cols) + " entries (" + shape + ")");
        }
        for (const auto &e : row) {
            if (e.is_number()) {
                data.emplace_back(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                data.emplace_back(e[0].get<double>(), e[1].get<double>());
            } else {
                throw InputError("matrix entries must be [re, im] pairs");
            }
        }
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

Instance instance_from_json(const json &j) {
    const std::string what = "instance";
    auto x = make_space(labels_from_json(require(j, "X", what), "X"));
    auto y1 = make_space(labels_from_json(require(j, "Y1", what), "Y1"));
    auto y2 = make_space(labels_from_json(require(j, "Y2", what), "Y2"));
    return {map_from_json(require(j, "mu1", what), y1, x, "mu1"), map_from_json(require(j, "mu2", what), y2, x, "mu2")};
}

json to_json(const Instance &inst) {
    json j;
    j["X"] = inst.mu1.codomain()->points();
    j["Y1"] = inst.mu1.domain()->points();
    j["Y2"] = inst.mu2.domain()->points();
    j["mu1"] = map_to_json(inst.mu1);
    j["mu2"] = map_to_json(inst.mu2);
    return j;
}

SpaceMap cover_from_json(const json &j) {
    const std::string what = "instance";
    const char *ykey = j.is_object() && j.contains("Y") ? "Y" : "Y1";
    const char *mkey = j.is_object() && j.contains("mu") ? "mu" : "mu1";
    auto x = make_space(labels_from_json(require(j, "X", what), "X"));
    auto y = make_space(labels_from_json(require(j, ykey, what), ykey));
    return map_from_json(require(j, mkey, what), y, x, mkey);
}

json to_json(const BalancedTensor &t) {
    json j;
    j["level"] = t.level();
    json blocks = json::object();
    for (std::size_t i = 0; i < t.blocks().size(); ++i) {
        blocks[t.product()->space->label(i)] = to_json(t.block(i));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

BalancedTensor tensor_from_json(const json &j, const ProductPtr &product) {
    const std::string what = "tensor";
    const json &lv = require(j, "level", what);
    if (!lv.is_number_unsigned() || lv.get<std::size_t>() == 0) {
        throw InputError("tensor: level must be a positive integer");
    }
    const std::size_t n = lv.get<std::size_t>();
    const json &bj = require(j, "blocks", what);
    if (!bj.is_object()) {
        throw InputError("tensor: blocks must be an object keyed by pair labels");
    }
    std::vector<ComplexMatrix> blocks(product->pairs.size(), ComplexMatrix(n, n));
    for (const auto &[k, v] : bj.items()) {
        blocks[pair_index(*product, k, what)] = matrix_from_json(v, n, n);
    }
    return BalancedTensor(product, n, std::move(blocks));
}

json to_json(const Factorization &f, const FiberedProduct &product) {
    json j;
    j["level"] = f.level;
    j["inner"] = f.inner;
    json left = json::object(), right = json::object();
    for (std::size_t y = 0; y < f.left.size(); ++y) {
        left[product.left_map.domain()->label(y)] = to_json(f.left[y]);
    }
    for (std::size_t y = 0; y < f.right.size(); ++y) {
        right[product.right_map.domain()->label(y)] = to_json(f.right[y]);
    }
    j["left"] = std::move(left);
    j["right"] = std::move(right);
    return j;
}

json to_json(const FiniteBundle &b) {
    json j = json::object();
    for (std::size_t y = 0; y < b.dims.size(); ++y) {
        j[b.space->label(y)] = b.dims[y];
    }
    return j;
}

json to_json(const DescentDatum &d) {
    json j;
    j["dims"] = to_json(d.bundle);
    json phi = json::object();
    for (std::size_t i = 0; i < d.phi.size(); ++i) {
        phi[d.pairs->space->label(i)] = to_json(d.phi[i]);
    }
    j["phi"] = std::move(phi);
    return j;
}

DescentDatum datum_from_json(const json &j, const SpaceMap &mu) {
    const std::string what = "descent datum";
    const json &dj = require(j, "dims", what);
    if (!dj.is_object()) {
        throw InputError("descent datum: dims must be an object keyed by point labels");
    }
    const auto &space = *mu.domain();
    std::vector<std::size_t> dims(space.size());
    std::vector<bool> seen(space.size(), false);
    for (const auto &[k, v] : dj.items()) {
        if (!v.is_number_unsigned()) {
            throw InputError("descent datum: dimension of \"" + k + "\" must be a nonnegative integer");
        }
        const std::size_t y = space.index_of(k);
        dims[y] = v.get<std::size_t>();
        seen[y] = true;
    }
    for (std::size_t y = 0; y < seen.size(); ++y) {
        if (!seen[y]) {
            throw InputError("descent datum: no dimension for \"" + space.label(y) + "\"");
        }
    }
    const ProductPtr pairs = make_product(mu, mu);
    const json &pj = require(j, "phi", what);
    if (!pj.is_object()) {
        throw InputError("descent datum: phi must be an object keyed by pair labels");
    }
    std::vector<ComplexMatrix> phi(pairs->pairs.size());
    std::vector<bool> have(pairs->pairs.size(), false);
    for (const auto &[k, v] : pj.items()) {
        const std::size_t i = pair_index(*pairs, k, what);
        const auto [y1, y2] = pairs->pairs[i];
        phi[i] = matrix_from_json(v, dims[y1], dims[y2]);
        have[i] = true;
    }
    for (std::size_t i = 0; i < have.size(); ++i) {
        if (!have[i]) {
            throw InputError("descent datum: no phi block for \"" + pairs->space->label(i) + "\"");
        }
    }
    return DescentDatum(mu, FiniteBundle(mu.domain(), std::move(dims)), std::move(phi));
}

}  // namespace hcb::io
