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

#include <array>
#include <cstdint>
#include <vector>

#include "argstat/error.hpp"
#include "argstat/forms.hpp"

namespace argstat {

struct SatakeTriple {
    std::array<cplx, 3> alpha{};
    std::uint64_t prime = 0;
};

struct SatakeSolution {
    SatakeTriple triple;
    bool kim_sarnak = true;
    double residual = 0.0;  // max error in (e1, e2, e3)
    Warnings warnings;
};

// Roots of X^3 - a1p X^2 + ap1 X - 1 in canonical order.
SatakeSolution solve_satake(cplx a1p, cplx ap1, std::uint64_t p);

// Descending modulus (ties within 1e-9 relative), then ascending argument.
void canonical_order(std::array<cplx, 3>& roots);

// C(p^k) for k = 1..k_max.
std::vector<cplx> power_sums(cplx a1p, cplx ap1, int k_max);

cplx root_power_sum(const SatakeTriple& t, int k);

bool check_kim_sarnak(const SatakeTriple& t);

}  // namespace argstat
