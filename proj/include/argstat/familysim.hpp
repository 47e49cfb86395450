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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "argstat/rng.hpp"
#include "argstat/satake.hpp"
#include "argstat/specweight.hpp"
#include "argstat/zeros.hpp"

namespace argstat {

// ---- Sato-Tate sampling ----------------------------------------------------

// Peak of |Delta|^2 on the SU(3) torus, reached at the cube roots of unity.
inline constexpr double kVandermondePeak = 27.0;

double vandermonde_sq(double theta1, double theta2);

// Haar-random conjugacy class of SU(3), by rejection from the flat torus.
SatakeTriple sample_su3(Rng& rng);
// Same, returning only the angles (theta1, theta2).
std::pair<double, double> sample_su3_angles(Rng& rng);

// E[f] over Haar SU(3) by the Weyl integration formula on a grid x grid
// periodic trapezoid rule; exact for trigonometric polynomials of degree < grid.
cplx weyl_expectation(const std::function<cplx(const std::array<cplx, 3>&)>& f, int grid = 96);

// (1/pi) Im sum_p A(1,p) p^{-1/2-it}; A(1,p) is the triple's trace.
double m_f(const std::vector<SatakeTriple>& sample, double t);

// ---- moments ---------------------------------------------------------------

enum class Weighting { uniform, spectral };

struct SimConfig {
    double prime_bound = 1e5;
    double t = 1.0;
    std::uint64_t sample_count = 20000;
    std::uint64_t seed = 1;
    int n_max = 4;
    Weighting weighting = Weighting::uniform;
    std::optional<TestFunctionConfig> spectral;
    unsigned threads = 0;
};

void validate_sim_config(const SimConfig& cfg);

struct MomentRow {
    int order = 0;
    double empirical = 0.0;
    double target = 0.0;
    double stderr_ = 0.0;
    double normalized = 0.0;  // moment of M / sqrt(sum 1/p)
};

struct MomentReport {
    SimConfig config;
    std::uint64_t prime_count = 0;
    double sum_inv_p = 0.0;
    double variance_target = 0.0;  // sum 1/p / (2 pi^2)
    std::vector<MomentRow> rows;
    double kurtosis = 0.0;         // m4 / m2^2, when n_max >= 4
    double cdf_distance = 0.0;
    bool pre_asymptotic = false;
    double effective_samples = 0.0;
    // 1/N_F is set to 1 for synthetic draws
    Warnings notes;
    std::vector<double> samples;
    std::vector<double> weights;  // empty for uniform weighting
    double runtime_seconds = 0.0;
};

// (2m)! / (m! (2 pi)^{2m}) for n = 2m, 0 for odd n.
double clt_constant(int n);

MomentReport run_moments(const SimConfig& cfg);

// CDF of the normal law with mean 0 and variance 1/(2 pi^2).
double gaussian_cdf(double xi);

double max_cdf_distance(const std::vector<double>& a, const std::vector<double>& b);

// Kolmogorov distance between the (weighted) empirical law of
// M / sqrt(sum 1/p) and gaussian_cdf.
double gaussian_distance(const MomentReport& report);
double gaussian_distance(const std::vector<double>& normalized, const std::vector<double>& weights = {});

// ---- symbolic audit --------------------------------------------------------

enum class HeckeCase { case1 = 1, case2 = 2, case3 = 3 };

// prime -> (number of A(1,p) factors, number of A(p,1) factors)
using HeckeTerm = std::map<std::uint64_t, std::pair<int, int>>;

HeckeCase hecke_case_classifier(const HeckeTerm& term);

struct AuditRow {
    HeckeTerm term;
    HeckeCase kase = HeckeCase::case1;
    std::uint64_t sequences = 0;  // ordered factor choices producing the term
    double expectation = 0.0;     // Sato-Tate expectation from the Weyl oracle
};

struct MomentAudit {
    int n = 0;
    int r = 0;
    std::vector<std::uint64_t> primes;
    std::vector<AuditRow> rows;
    double case1_max = 0.0;
    double case3_max_deviation = 0.0;  // max |E - 1| over case3 rows
    std::uint64_t case3_sequences_per_set = 0;
    std::uint64_t case3_sequences_per_tuple = 0;
    std::uint64_t case3_expected_per_tuple = 0;  // (2m)!/m!
    double case3_coefficient = 0.0;              // per ordered tuple times (2 pi)^{-2m}
    bool case1_ok = false;
    bool case3_ok = false;
    double total_expectation = 0.0;  // E[M^n] with z_p = p^{-1/2-it}
    double t = 1.0;
};

MomentAudit symbolic_moment_audit(int n, int r, double t = 1.0, int grid = 96);

// ---- zero-density harness -------------------------------------------------

struct ZeroEnsembleConfig {
    double theta = 0.05;
    double logT = 50.0;
    double H = 10.0;
    int n = 1;
    int k = 1;
    double delta = 0.01;
    double t = 1.0;
    int forms = 64;         // synthetic zero sets per ensemble
    bool zero_free = false;  // theta-intensity 0
};

void validate_zero_ensemble(const ZeroEnsembleConfig& cfg);

// (10 / log x)^{4n} x^{40 n k / log x}
double zero_free_floor(const ZeroEnsembleConfig& cfg);

// Explicit c with lhs <= c / (log T)^{4n} for every draw of the model.
double zero_density_constant(const ZeroEnsembleConfig& cfg);

struct ZeroDensityResult {
    double lhs = 0.0;
    double rhs_bound = 0.0;
    double c = 0.0;
    double log_x = 0.0;
    double max_sigma_offset = 0.0;
    std::uint64_t zeros = 0;
    bool holds = false;
};

// One synthetic ZeroSet; bin counts obey N(sigma, H) <= H T^{-theta sigma} log T.
std::vector<Zero> synthetic_zero_set(const ZeroEnsembleConfig& cfg, Rng& rng);

// c defaults to zero_density_constant(cfg).
ZeroDensityResult zero_density_harness(const ZeroEnsembleConfig& cfg, std::uint64_t seed, std::uint64_t draw,
                                       std::optional<double> c = std::nullopt);

// Poisson deviate built from the uniform stream.
std::uint64_t poisson(Rng& rng, double lambda);

}  // namespace argstat
