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

#include "argstat/forms.hpp"
#include "argstat/smoothing.hpp"
#include "argstat/zeta.hpp"

namespace argstat {

// E(s) = zeta(s + i t1) zeta(s + i t2) zeta(s + i t3)
struct EisensteinSpec {
    std::array<double, 3> t{};
};

EisensteinSpec make_eisenstein(double t1, double t2, double t3);

// FormRecord of E: alpha_j(p) = p^(-i t_j), mu_j = -i t_j, coefficients at
// every prime <= prime_limit, zeros shifted from the embedded ordinate table.
FormRecord eisenstein_form(const EisensteinSpec& spec, std::uint64_t prime_limit);
ZeroSet eisenstein_zeros(const EisensteinSpec& spec);

inline constexpr double kOrdinateExclusion = 1e-3;

// (1/pi) arg zeta(1/2 + it), refusing heights within 1e-3 of an ordinate or
// of the pole.
double s_zeta(double t, double path_resolution);

struct SOracle {
    double value = 0.0;
    std::array<double, 3> components{};
    // arg contributions of the sigma >= kArgumentStart tail, exact there
    std::array<double, 3> tail{};
};

SOracle s_oracle(const EisensteinSpec& spec, double t, double path_resolution = 0.05);

struct RvmCheck {
    double n_formula = 0.0;
    std::uint64_t n_counted = 0;
};

RvmCheck rv_mangoldt_check(double t);

struct Lemma31 {
    cplx lhs;
    cplx rhs;
    double gap = 0.0;
    double tail_estimate = 0.0;  // omitted zeros beyond the window
    std::size_t zeros_used = 0;
    Warnings warnings;
};

Lemma31 lemma31_check(const EisensteinSpec& spec, cplx s, const SmoothingConfig& cfg, double zero_window,
                      double tolerance = 2e-3);

struct SApproxResult {
    double main_term = 0.0;
    double error_budget = 0.0;
    double sigma_x_used = 0.0;
    double plain_abs = 0.0;
    double tail_bound = 0.0;
};

inline constexpr double kDefaultErrorConstant = 10.0;

SApproxResult approx_s(const FormRecord& f, double t, const SmoothingConfig& cfg,
                       double error_constant = kDefaultErrorConstant);

}  // namespace argstat
