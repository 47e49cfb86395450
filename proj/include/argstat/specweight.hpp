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
#include <optional>

#include "argstat/forms.hpp"

namespace argstat {

struct TestFunctionConfig {
    LanglandsParameter mu0;
    double T = 0.0;
    double eta = 0.2;
    int A = 1;
    double M() const;
};

// T := |mu0|. Rejects non-tempered mu0, eta outside (0, 1/2), A < 1 and any
// nu0_j = 0.
TestFunctionConfig make_test_function(const LanglandsParameter& mu0, double eta, int A);

// I, w2..w6: (m1,m2,m3), (m1,m3,m2), (m2,m1,m3), (m2,m3,m1), (m3,m1,m2), (m3,m2,m1)
std::array<LanglandsParameter, 6> weyl_orbit(const LanglandsParameter& mu);

cplx p_polynomial(const LanglandsParameter& mu, const TestFunctionConfig& cfg);

struct HValue {
    double value = 0.0;
    double imag_residual = 0.0;
};

HValue h_test_ex(const LanglandsParameter& mu, const TestFunctionConfig& cfg);
double h_test(const LanglandsParameter& mu, const TestFunctionConfig& cfg);

struct SpecDensity {
    double value = 0.0;       // |prod 3 nu_j tan(3 pi nu_j / 2)|
    double raw_signed = 0.0;  // real part of the printed product
};

SpecDensity spec_density_ex(const LanglandsParameter& mu);
double spec_density(const LanglandsParameter& mu);

struct Quadrature {
    double spacing = 1.0 / 20.0;  // in units of M
    double cutoff = 6.0;          // in units of M, around each orbit point
};

struct HResult {
    double value = 0.0;
    double coarse = 0.0;          // same rule at twice the spacing
    double relative_error = 0.0;  // |value - coarse| / value
    std::uint64_t points = 0;
    double spacing = 0.0;
    double cutoff = 0.0;
};

// Throws NumericalError when the two resolutions differ by more than 1%.
HResult compute_H(const TestFunctionConfig& cfg, const Quadrature& q = {}, unsigned threads = 0);

struct DiagonalPrediction {
    double main = 0.0;
    double envelope = 0.0;
    bool negligible = false;
};

inline constexpr double kDefaultEnvelopeEpsilon = 0.01;
inline constexpr double kVartheta = 7.0 / 64.0;

double diagonal_envelope(double P, double T, double M, double epsilon);

DiagonalPrediction diagonal_predictor(std::uint64_t m1, std::uint64_t m2, std::uint64_t n1, std::uint64_t n2,
                                      const TestFunctionConfig& cfg, double H,
                                      double epsilon = kDefaultEnvelopeEpsilon);

// Smallest P at which the envelope reaches 0.01 H, found by bisection in
// log P; nullopt when it already does at P = 1.
std::optional<double> negligible_crossover(const TestFunctionConfig& cfg, double H,
                                           double epsilon = kDefaultEnvelopeEpsilon);

}  // namespace argstat
