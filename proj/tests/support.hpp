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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "argstat/forms.hpp"
#include "argstat/satake.hpp"

namespace argstat::testing {

using cplx = std::complex<double>;

// Small deterministic generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng_); }
    cplx complex_in_box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

    // unit-modulus roots with product 1
    SatakeTriple tempered_triple(std::uint64_t p = 2) {
        double a = uniform(-std::numbers::pi, std::numbers::pi);
        double b = uniform(-std::numbers::pi, std::numbers::pi);
        SatakeTriple t;
        t.alpha = {std::polar(1.0, a), std::polar(1.0, b), std::polar(1.0, -a - b)};
        t.prime = p;
        return t;
    }

    LanglandsParameter tempered_mu(double scale) {
        double b1 = uniform(-scale, scale), b2 = uniform(-scale, scale);
        return LanglandsParameter{{cplx(0, b1), cplx(0, b2), cplx(0, -b1 - b2)}};
    }

    // Admissible and possibly non-tempered: (a + ib, -a + ib, -2ib) permuted.
    LanglandsParameter admissible_mu(double scale) {
        double a = uniform(-5.0 / 14.0, 5.0 / 14.0);
        double b = uniform(-scale, scale);
        std::array<cplx, 3> m{cplx(a, b), cplx(-a, b), cplx(0, -2 * b)};
        std::shuffle(m.begin(), m.end(), eng_);
        return LanglandsParameter{m};
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline cplx e1(const SatakeTriple& t) { return t.alpha[0] + t.alpha[1] + t.alpha[2]; }
inline cplx e2(const SatakeTriple& t) {
    return t.alpha[0] * t.alpha[1] + t.alpha[0] * t.alpha[2] + t.alpha[1] * t.alpha[2];
}

inline double max_diff(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
    double m = 0;
    for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace argstat::testing
