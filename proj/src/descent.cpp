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

#include "hcb/descent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcb/error.hpp"

namespace hcb {

namespace {

double unitarity_defect(const ComplexMatrix &u) {
    if (!u.is_square()) {
        return 1.0;
    }
    const ComplexMatrix id = ComplexMatrix::identity(u.rows());
    return std::max(op_norm(multiply_adjoint(dagger(u), dagger(u)) - id), op_norm(multiply_adjoint(u, u) - id));
}

std::string pair_label(const DescentDatum &d, std::size_t y1, std::size_t y2) {
    const auto &sp = *d.mu.domain();
    return "(" + sp.label(y1) + ", " + sp.label(y2) + ")";
}

void check_section(const SpaceMap &mu, std::span<const std::size_t> s) {
    if (s.size() != mu.codomain()->size()) {
        throw InputError("section must assign one point to every base point");
    }
    for (std::size_t x = 0; x < s.size(); ++x) {
        if (s[x] >= mu.domain()->size() || mu(s[x]) != x) {
            throw InputError("section is not a right inverse of the base map");
        }
    }
}

}  // namespace

FiniteBundle::FiniteBundle(SpacePtr s, std::vector<std::size_t> d) : space(std::move(s)), dims(std::move(d)) {
    if (!space || dims.size() != space->size()) {
        throw InputError("bundle needs one dimension per point");
    }
}

BundleMap::BundleMap(FiniteBundle src, FiniteBundle tgt, std::vector<ComplexMatrix> b)
    : source(std::move(src)), target(std::move(tgt)), blocks(std::move(b)) {
    if (!(*source.space == *target.space)) {
        throw InputError("bundle map: source and target live over different spaces");
    }
    if (blocks.size() != source.dims.size()) {
        throw InputError("bundle map needs one block per point");
    }
    for (std::size_t y = 0; y < blocks.size(); ++y) {
        if (blocks[y].rows() != target.dims[y] || blocks[y].cols() != source.dims[y]) {
            throw InputError("bundle map block at " + source.space->label(y) + " has the wrong shape");
        }
    }
}

BundleMap BundleMap::identity(const FiniteBundle &b) {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t d : b.dims) {
        blocks.push_back(ComplexMatrix::identity(d));
    }
    return BundleMap(b, b, std::move(blocks));
}

DescentDatum::DescentDatum(SpaceMap m, FiniteBundle b, std::vector<ComplexMatrix> p)
    : mu(std::move(m)), bundle(std::move(b)), pairs(make_product(mu, mu)), phi(std::move(p)) {
    if (!(*bundle.space == *mu.domain())) {
        throw InputError("descent datum: bundle is not over the domain of the base map");
    }
    if (phi.size() != pairs->pairs.size()) {
        throw InputError("descent datum needs one phi block per pair of the fibered product");
    }
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const auto [y1, y2] = pairs->pairs[i];
        if (phi[i].rows() != bundle.dims[y1] || phi[i].cols() != bundle.dims[y2]) {
            throw InputError("descent datum: phi block at " + pairs->space->label(i) + " has the wrong shape");
        }
    }
}

const ComplexMatrix &DescentDatum::at(std::size_t y1, std::size_t y2) const {
    const std::size_t i = pairs->index_of(y1, y2);
    if (i == FiberedProduct::npos) {
        throw InputError("descent datum: pair is not in the fibered product");
    }
    return phi[i];
}

FiniteBundle pullback(const FiniteBundle &f, const SpaceMap &m) {
    if (!(*f.space == *m.codomain())) {
        throw InputError("pullback: bundle is not over the codomain of the map");
    }
    std::vector<std::size_t> dims(m.domain()->size());
    for (std::size_t y = 0; y < dims.size(); ++y) {
        dims[y] = f.dims[m(y)];
    }
    return FiniteBundle(m.domain(), std::move(dims));
}

BundleMap pullback_map(const BundleMap &t, const SpaceMap &m) {
    std::vector<ComplexMatrix> blocks(m.domain()->size());
    for (std::size_t y = 0; y < blocks.size(); ++y) {
        blocks[y] = t.blocks[m(y)];
    }
    return BundleMap(pullback(t.source, m), pullback(t.target, m), std::move(blocks));
}

DescentDatum canonical_datum(const FiniteBundle &f, const SpaceMap &mu) {
    FiniteBundle e = pullback(f, mu);
    const ProductPtr pairs = make_product(mu, mu);
    std::vector<ComplexMatrix> phi;
    phi.reserve(pairs->pairs.size());
    for (const auto &pr : pairs->pairs) {
        phi.push_back(ComplexMatrix::identity(e.dims[pr.first]));
    }
    return DescentDatum(mu, std::move(e), std::move(phi));
}

CocycleReport check_cocycle(const DescentDatum &d, double tol) {
    CocycleReport r;
    for (std::size_t i = 0; i < d.phi.size(); ++i) {
        const double u = unitarity_defect(d.phi[i]);
        if (u > r.unitarity_residual) {
            r.unitarity_residual = u;
            r.worst_pair = i;
        }
    }
    bool any = false;
    for (std::size_t x = 0; x < d.mu.codomain()->size(); ++x) {
        const std::vector<std::size_t> f = d.mu.fiber(x);
        for (std::size_t a : f) {
            for (std::size_t b : f) {
                const ComplexMatrix &ab = d.at(a, b);
                for (std::size_t c : f) {
                    const ComplexMatrix &bc = d.at(b, c);
                    double res = 1.0;
                    if (ab.cols() == bc.rows()) {
                        res = op_norm(ab * bc - d.at(a, c));
                    }
                    // Near-ties keep the earlier triple.
                    if (!any || res > r.cocycle_residual * (1.0 + 1e-9) + 1e-15) {
                        r.cocycle_residual = res;
                        r.worst_triple = {a, b, c};
                        any = true;
                    }
                }
            }
        }
    }
    r.passed = r.cocycle_residual <= tol && r.unitarity_residual <= tol;
    return r;
}

std::vector<std::size_t> default_section(const SpaceMap &mu) {
    std::vector<std::size_t> s(mu.codomain()->size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        const auto f = mu.fiber(x);
        if (f.empty()) {
            throw InputError("base map is not surjective: nothing lies over " + mu.codomain()->label(x));
        }
        s[x] = f.front();
    }
    return s;
}

Reconstruction reconstruct(const DescentDatum &d, std::span<const std::size_t> section, double tol) {
    Reconstruction r;
    if (section.empty()) {
        r.section = default_section(d.mu);
    } else {
        check_section(d.mu, section);
        r.section.assign(section.begin(), section.end());
    }
    const CocycleReport c = check_cocycle(d, tol);
    if (!c.passed) {
        throw CheckFailure("descent datum fails the cocycle check: residual " + std::to_string(c.cocycle_residual) +
                           ", unitarity residual " + std::to_string(c.unitarity_residual));
    }
    std::vector<std::size_t> dims(r.section.size());
    for (std::size_t x = 0; x < dims.size(); ++x) {
        dims[x] = d.bundle.dims[r.section[x]];
    }
    r.base = FiniteBundle(d.mu.codomain(), std::move(dims));
    std::vector<ComplexMatrix> u;
    u.reserve(d.mu.domain()->size());
    for (std::size_t y = 0; y < d.mu.domain()->size(); ++y) {
        u.push_back(d.at(y, r.section[d.mu(y)]));
    }
    r.unit = BundleMap(pullback(r.base, d.mu), d.bundle, std::move(u));
    return r;
}

double unit_residual(const Reconstruction &r, const DescentDatum &d) {
    double worst = 0.0;
    for (const auto &[y1, y2] : d.pairs->pairs) {
        worst = std::max(worst, op_norm(r.unit.blocks[y1] - d.at(y1, y2) * r.unit.blocks[y2]));
    }
    return worst;
}

double unitary_residual(const BundleMap &u) {
    double worst = 0.0;
    for (const auto &b : u.blocks) {
        worst = std::max(worst, unitarity_defect(b));
    }
    return worst;
}

BundleMap section_isomorphism(const Reconstruction &r1, const Reconstruction &r2, const DescentDatum &d) {
    std::vector<ComplexMatrix> w;
    w.reserve(r1.section.size());
    for (std::size_t x = 0; x < r1.section.size(); ++x) {
        w.push_back(d.at(r2.section[x], r1.section[x]));
    }
    return BundleMap(r1.base, r2.base, std::move(w));
}

namespace {

struct PairResidual {
    double value = 0.0;
    std::size_t y1 = 0, y2 = 0;
};

PairResidual worst_morphism_pair(const BundleMap &t, const DescentDatum &d1, const DescentDatum &d2) {
    if (!(t.source == d1.bundle) || !(t.target == d2.bundle) || !(*d1.mu.codomain() == *d2.mu.codomain()) ||
        d1.mu.assignment() != d2.mu.assignment()) {
        throw InputError("bundle map does not run between the two descent data");
    }
    PairResidual w;
    for (const auto &[y1, y2] : d1.pairs->pairs) {
        const double r = op_norm(t.blocks[y1] * d1.at(y1, y2) - d2.at(y1, y2) * t.blocks[y2]);
        if (r > w.value) {
            w = {r, y1, y2};
        }
    }
    return w;
}

}  // namespace

double morphism_residual(const BundleMap &t, const DescentDatum &d1, const DescentDatum &d2) {
    return worst_morphism_pair(t, d1, d2).value;
}

BundleMap morphism_descends(const BundleMap &t, const DescentDatum &d1, const DescentDatum &d2, double tol) {
    const PairResidual w = worst_morphism_pair(t, d1, d2);
    if (w.value > tol) {
        throw CheckFailure("bundle map is not a morphism of descent data: residual " + std::to_string(w.value) +
                           " at pair " + pair_label(d1, w.y1, w.y2));
    }
    const Reconstruction r1 = reconstruct(d1, {}, tol);
    const Reconstruction r2 = reconstruct(d2, {}, tol);
    std::vector<ComplexMatrix> s;
    s.reserve(r1.section.size());
    for (std::size_t x = 0; x < r1.section.size(); ++x) {
        const std::size_t y = r1.section[x];
        s.push_back(dagger(r2.unit.blocks[y]) * t.blocks[y] * r1.unit.blocks[y]);
    }
    return BundleMap(r1.base, r2.base, std::move(s));
}

DescentDatum coboundary_datum(const SpaceMap &mu, std::span<const ComplexMatrix> v) {
    if (v.size() != mu.domain()->size()) {
        throw InputError("coboundary needs one matrix per point");
    }
    std::vector<std::size_t> dims;
    for (const auto &m : v) {
        if (!m.is_square()) {
            throw InputError("coboundary matrices must be square");
        }
        dims.push_back(m.rows());
    }
    const ProductPtr pairs = make_product(mu, mu);
    std::vector<ComplexMatrix> phi;
    phi.reserve(pairs->pairs.size());
    for (const auto &[y1, y2] : pairs->pairs) {
        phi.push_back(multiply_adjoint(v[y1], v[y2]));
    }
    return DescentDatum(mu, FiniteBundle(mu.domain(), std::move(dims)), std::move(phi));
}

DescentDatum random_coboundary(const SpaceMap &mu, std::span<const std::size_t> base_dims, std::mt19937_64 &rng) {
    if (base_dims.size() != mu.codomain()->size()) {
        throw InputError("random_coboundary needs one dimension per base point");
    }
    std::vector<ComplexMatrix> v;
    v.reserve(mu.domain()->size());
    for (std::size_t y = 0; y < mu.domain()->size(); ++y) {
        v.push_back(random_unitary(base_dims[mu(y)], rng));
    }
    return coboundary_datum(mu, v);
}

}  // namespace hcb
