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

// Finite discrete spaces, maps between them, fibered products and triple
// products. All values are immutable once built; spaces are shared between
// maps through shared_ptr<const FiniteSpace>.

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hcb {

/// An ordered set of distinct labels. The order is the canonical indexing
/// used for every matrix layout built on top of the space.
class FiniteSpace {
  public:
    FiniteSpace() = default;
    /// Throws InputError on duplicate or empty labels.
    explicit FiniteSpace(std::vector<std::string> points);

    std::size_t size() const { return points_.size(); }
    const std::vector<std::string> &points() const { return points_; }
    const std::string &label(std::size_t i) const { return points_.at(i); }
    bool contains(const std::string &label) const { return index_.contains(label); }
    /// Throws InputError for an unknown label.
    std::size_t index_of(const std::string &label) const;

    friend bool operator==(const FiniteSpace &a, const FiniteSpace &b) { return a.points_ == b.points_; }

  private:
    std::vector<std::string> points_;
    std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(std::vector<std::string> points);

/// A total function between finite spaces, stored as an index table.
class SpaceMap {
  public:
    SpaceMap() = default;
    /// assignment[i] is the codomain index of domain point i.
    SpaceMap(SpacePtr domain, SpacePtr codomain, std::vector<std::size_t> assignment);
    /// Label-based construction; every domain point must be assigned.
    static SpaceMap from_labels(SpacePtr domain, SpacePtr codomain,
                                const std::vector<std::pair<std::string, std::string>> &assignment);
    static SpaceMap identity(SpacePtr space);

    const SpacePtr &domain() const { return domain_; }
    const SpacePtr &codomain() const { return codomain_; }
    std::size_t operator()(std::size_t i) const { return assignment_.at(i); }
    const std::vector<std::size_t> &assignment() const { return assignment_; }

    /// Domain indices mapping to codomain index x, in canonical order.
    std::vector<std::size_t> fiber(std::size_t x) const;
    bool is_surjective() const;

  private:
    SpacePtr domain_;
    SpacePtr codomain_;
    std::vector<std::size_t> assignment_;
};

/// `outer` after `inner`; requires inner.codomain == outer.domain.
SpaceMap compose(const SpaceMap &outer, const SpaceMap &inner);

/// Label-level fiber query. Throws InputError for an unknown label.
std::vector<std::string> fiber(const SpaceMap &m, const std::string &x);

/// Y1 x_X Y2 with its two projections. Pair (y1, y2) is labelled "y1|y2".
struct FiberedProduct {
    SpaceMap left_map;   // mu1: Y1 -> X
    SpaceMap right_map;  // mu2: Y2 -> X
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    SpacePtr space;   // the pairs as a finite space
    SpaceMap proj1;   // space -> Y1
    SpaceMap proj2;   // space -> Y2
    std::vector<std::size_t> base;  // base point of each pair

    const SpacePtr &base_space() const { return left_map.codomain(); }
    /// Index of pair (y1, y2), or npos when the pair is not in the product.
    std::size_t index_of(std::size_t y1, std::size_t y2) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    friend FiberedProduct fibered_product(const SpaceMap &, const SpaceMap &);
    std::unordered_map<std::size_t, std::size_t> lookup_;  // y1 * |Y2| + y2 -> index
};

/// Pairs enumerated in lexicographic order of (y1, y2). Throws InputError
/// when the codomains differ.
FiberedProduct fibered_product(const SpaceMap &m1, const SpaceMap &m2);

/// max over x of min(#m1^{-1}x, #m2^{-1}x); 0 for an empty base.
std::size_t max_min_fiber(const SpaceMap &m1, const SpaceMap &m2);

/// Y x_X Y x_X Y with the three face maps into Y x_X Y. Triple
/// (y1, y2, y3) is labelled "y1|y2|y3".
struct TripleProduct {
    SpaceMap base_map;
    FiberedProduct pairs;  // fibered_product(base_map, base_map)
    std::vector<std::array<std::size_t, 3>> triples;
    SpacePtr space;
    SpaceMap pi12, pi23, pi13;  // space -> pairs.space
};

TripleProduct triple_product(const SpaceMap &m);

}  // namespace hcb
