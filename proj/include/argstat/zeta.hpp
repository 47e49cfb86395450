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

#include <cstddef>
#include <vector>

#include "argstat/error.hpp"

namespace argstat {

struct ZetaValue {
    cplx value;
    double error_bound = 0.0;
    bool certified = false;
    Warnings warnings;
};

// Euler-Maclaurin with `terms` summands and `bernoulli_order` Bernoulli
// corrections. Certified when |Im s| <= 100 and the remainder bound is <= 1e-10.
ZetaValue zeta_em(cplx s, int terms, int bernoulli_order);

// zeta_em with terms chosen from |s|, order 10.
cplx zeta(cplx s);

// d/ds log zeta(s) by Richardson-extrapolated central differences at
// step 1e-4.
cplx zeta_log_derivative(cplx s);

cplx log_gamma(cplx z);
double riemann_siegel_theta(double t);
double hardy_z(double t);

struct ArgumentTrace {
    double arg = 0.0;        // continuous arg zeta(1/2 + it) from +inf
    double start_arg = 0.0;  // principal arg at kArgumentStart, exact there
    std::size_t steps = 0;
    double max_increment = 0.0;
    std::vector<double> sigma_samples;
    std::vector<cplx> phase_values;
};

inline constexpr double kArgumentStart = 4.0;

// Continuous argument along sigma = kArgumentStart -> 1/2 at height t with steps no
// longer than `resolution`. keep_path stores the samples.
ArgumentTrace zeta_argument(double t, double resolution, bool keep_path = false);

struct ZetaOrdinate {
    double gamma = 0.0;
    double residual = 0.0;  // |Z(gamma)|
};

// Sign changes of Z on (0, t_max] at grid `step`, refined by bisection.
std::vector<ZetaOrdinate> locate_zeta_ordinates(double t_max, double step);

// Table generated at build time by locate_zeta_ordinates.
const std::vector<ZetaOrdinate>& zeta_ordinates();
// Height up to which the table is complete.
double zeta_table_height();

}  // namespace argstat
