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

#include <cstdint>
#include <vector>

#include "argstat/forms.hpp"
#include "argstat/zeros.hpp"

namespace argstat {

struct SmoothingConfig {
    double x = 4.0;
};

// Throws ValidationError unless x >= 4.
SmoothingConfig make_smoothing(double x);

double von_mangoldt(std::uint64_t n);

// Lambda_x(n) / Lambda(n). Branches: n <= x, x < n <= x^2, x^2 < n < x^3,
// n >= x^3.
double lambda_x_ratio(std::uint64_t n, double x);
double lambda_x(std::uint64_t n, const SmoothingConfig& cfg);

double prime_reciprocal_sum(double X);

enum class WeightMode { plain, divided_by_log, log_xp };

struct DirichletSum {
    cplx value;
    // Upper bound on the omitted terms x^3 >= n > summed_to; 0 when the
    // stored coefficients reach x^3.
    double tail_bound = 0.0;
    std::uint64_t summed_to = 0;
};

inline constexpr double kDefaultTailTolerance = 1e-3;

DirichletSum dirichlet_sum_ex(const FormRecord& f, double sigma, double t, const SmoothingConfig& cfg,
                              WeightMode mode, double tail_tolerance = kDefaultTailTolerance);
cplx dirichlet_sum(const FormRecord& f, double sigma, double t, const SmoothingConfig& cfg,
                   WeightMode mode);

// No completeness check and no x >= 4 requirement (x > 1).
double sigma_x_core(const std::vector<Zero>& zeros, double t, double log_x);
// Throws MissingDataError unless the completeness box certifies the window.
double sigma_x(const ZeroSet& zeros, double t, const SmoothingConfig& cfg);

bool count_certified(const ZeroSet& zeros, double sigma, double H);
std::uint64_t count_zeros(const ZeroSet& zeros, double sigma, double H);

}  // namespace argstat
