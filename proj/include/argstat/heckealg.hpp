/*
 * Copyright 2026 The argstat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

#include "argstat/forms.hpp"
#include "argstat/satake.hpp"

namespace argstat {

using BigInt = boost::multiprecision::cpp_int;
using HeckeIndex = std::pair<int, int>;  // (k, l) for A(p^k, p^l)

struct HeckeCombination {
    std::map<HeckeIndex, BigInt> terms;

    // Adds c to the (k, l) coefficient, dropping the entry if it reaches 0.
    void add(HeckeIndex kl, const BigInt& c);
    bool operator==(const HeckeCombination&) const = default;
};

struct SupportSet {
    int n = 0;
    std::set<HeckeIndex> pairs;
};

inline constexpr int kMaxExpandPower = 40;

// Multiplication by A(1, p).
HeckeCombination pieri_multiply(const HeckeCombination& c);
HeckeCombination expand_power(int n);
SupportSet support_set(int n);
bool dimension_check(int n);

// dim of the GL(3) irrep with highest weight (k+l, k, 0)
BigInt basis_dimension(int k, int l);

// A(p^k, p^l) at the given Satake roots, as the Schur function with highest
// weight (k+l, k, 0).
cplx basis_value(int k, int l, const SatakeTriple& s);
cplx evaluate_combination(const HeckeCombination& c, const SatakeTriple& s);

// A(m, n) by multiplicativity over the primes dividing m*n.
cplx composite_coefficient(const FormRecord& f, std::uint64_t m, std::uint64_t n);

}  // namespace argstat
