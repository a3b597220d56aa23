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

#include "hcb/topology.hpp"

#include <algorithm>

#include "hcb/error.hpp"

namespace hcb {

FiniteSpace::FiniteSpace(std::vector<std::string> points) : points_(std::move(points)) {
    index_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].empty()) {
            throw InputError("empty point label");
        }
        if (!index_.emplace(points_[i], i).second) {
            throw InputError("duplicate point label '" + points_[i] + "'");
        }
    }
}

std::size_t FiniteSpace::index_of(const std::string &label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) {
        throw InputError("unknown point label '" + label + "'");
    }
    return it->second;
}

SpacePtr make_space(std::vector<std::string> points) {
    return std::make_shared<const FiniteSpace>(std::move(points));
}

SpaceMap::SpaceMap(SpacePtr domain, SpacePtr codomain, std::vector<std::size_t> assignment)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment)) {
    if (!domain_ || !codomain_) {
        throw InputError("space map needs a domain and a codomain");
    }
    if (assignment_.size() != domain_->size()) {
        throw InputError("space map does not assign every domain point");
    }
    for (std::size_t v : assignment_) {
        if (v >= codomain_->size()) {
            throw InputError("space map value outside the codomain");
        }
    }
}

SpaceMap SpaceMap::from_labels(SpacePtr domain, SpacePtr codomain,
                               const std::vector<std::pair<std::string, std::string>> &assignment) {
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> table(domain->size(), unset);
    for (const auto &[from, to] : assignment) {
        const std::size_t i = domain->index_of(from);
        if (table[i] != unset) {
            throw InputError("point '" + from + "' assigned twice");
        }
        table[i] = codomain->index_of(to);
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] == unset) {
            throw InputError("point '" + domain->label(i) + "' is not assigned");
        }
    }
    return SpaceMap(std::move(domain), std::move(codomain), std::move(table));
}

SpaceMap SpaceMap::identity(SpacePtr space) {
    std::vector<std::size_t> table(space->size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i] = i;
    }
    return SpaceMap(space, space, std::move(table));
}

std::vector<std::size_t> SpaceMap::fiber(std::size_t x) const {
    if (x >= codomain_->size()) {
        throw InputError("fiber: base index out of range");
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        if (assignment_[i] == x) {
            out.push_back(i);
        }
    }
    return out;
}

bool SpaceMap::is_surjective() const {
    std::vector<bool> hit(codomain_->size(), false);
    for (std::size_t v : assignment_) {
        hit[v] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SpaceMap compose(const SpaceMap &outer, const SpaceMap &inner) {
    if (!(*inner.codomain() == *outer.domain())) {
        throw InputError("compose: codomain of the inner map is not the domain of the outer map");
    }
    std::vector<std::size_t> table(inner.domain()->size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i] = outer(inner(i));
    }
    return SpaceMap(inner.domain(), outer.codomain(), std::move(table));
}

std::vector<std::string> fiber(const SpaceMap &m, const std::string &x) {
    std::vector<std::string> out;
    for (std::size_t i : m.fiber(m.codomain()->index_of(x))) {
        out.push_back(m.domain()->label(i));
    }
    return out;
}

std::size_t FiberedProduct::index_of(std::size_t y1, std::size_t y2) const {
    const auto it = lookup_.find(y1 * right_map.domain()->size() + y2);
    return it == lookup_.end() ? npos : it->second;
}

FiberedProduct fibered_product(const SpaceMap &m1, const SpaceMap &m2) {
    if (!(*m1.codomain() == *m2.codomain())) {
        throw InputError("fibered_product: maps have different codomains");
    }
    FiberedProduct fp;
    fp.left_map = m1;
    fp.right_map = m2;
    const auto &y1s = *m1.domain();
    const auto &y2s = *m2.domain();
    std::vector<std::string> labels;
    std::vector<std::size_t> p1, p2;
    for (std::size_t a = 0; a < y1s.size(); ++a) {
        for (std::size_t b = 0; b < y2s.size(); ++b) {
            if (m1(a) != m2(b)) {
                continue;
            }
            fp.lookup_.emplace(a * y2s.size() + b, fp.pairs.size());
            fp.pairs.emplace_back(a, b);
            fp.base.push_back(m1(a));
            labels.push_back(y1s.label(a) + "|" + y2s.label(b));
            p1.push_back(a);
            p2.push_back(b);
        }
    }
    fp.space = make_space(std::move(labels));
    fp.proj1 = SpaceMap(fp.space, m1.domain(), std::move(p1));
    fp.proj2 = SpaceMap(fp.space, m2.domain(), std::move(p2));
    return fp;
}

std::size_t max_min_fiber(const SpaceMap &m1, const SpaceMap &m2) {
    if (!(*m1.codomain() == *m2.codomain())) {
        throw InputError("max_min_fiber: maps have different codomains");
    }
    const std::size_t nx = m1.codomain()->size();
    std::vector<std::size_t> c1(nx, 0), c2(nx, 0);
    for (std::size_t v : m1.assignment()) {
        ++c1[v];
    }
    for (std::size_t v : m2.assignment()) {
        ++c2[v];
    }
    std::size_t best = 0;
    for (std::size_t x = 0; x < nx; ++x) {
        best = std::max(best, std::min(c1[x], c2[x]));
    }
    return best;
}

TripleProduct triple_product(const SpaceMap &m) {
    TripleProduct tp;
    tp.base_map = m;
    tp.pairs = fibered_product(m, m);
    const auto &ys = *m.domain();
    std::vector<std::string> labels;
    std::vector<std::size_t> f12, f23, f13;
    for (std::size_t a = 0; a < ys.size(); ++a) {
        for (std::size_t b = 0; b < ys.size(); ++b) {
            if (m(a) != m(b)) {
                continue;
            }
            for (std::size_t c = 0; c < ys.size(); ++c) {
                if (m(b) != m(c)) {
                    continue;
                }
                tp.triples.push_back({a, b, c});
                labels.push_back(ys.label(a) + "|" + ys.label(b) + "|" + ys.label(c));
                f12.push_back(tp.pairs.index_of(a, b));
                f23.push_back(tp.pairs.index_of(b, c));
                f13.push_back(tp.pairs.index_of(a, c));
            }
        }
    }
    tp.space = make_space(std::move(labels));
    tp.pi12 = SpaceMap(tp.space, tp.pairs.space, std::move(f12));
    tp.pi23 = SpaceMap(tp.space, tp.pairs.space, std::move(f23));
    tp.pi13 = SpaceMap(tp.space, tp.pairs.space, std::move(f13));
    return tp;
}

}  // namespace hcb
