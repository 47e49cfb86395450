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
#include <string>
#include <vector>

#include "argstat/error.hpp"
#include "argstat/zeros.hpp"

namespace argstat {

inline constexpr double kKimSarnak = 5.0 / 14.0;

struct LanglandsParameter {
    std::array<cplx, 3> mu{};
    bool operator==(const LanglandsParameter&) const = default;
};

struct SpectralParameter {
    std::array<cplx, 3> nu{};
    bool operator==(const SpectralParameter&) const = default;
};

// (A(1,p), A(p,1))
struct HeckePair {
    cplx a1p;
    cplx ap1;
    bool operator==(const HeckePair&) const = default;
};

struct PrimeCoefficient {
    std::uint64_t p = 0;
    HeckePair a;
    bool operator==(const PrimeCoefficient&) const = default;
};

struct FormRecord {
    std::string label;
    LanglandsParameter mu;
    std::vector<PrimeCoefficient> coefficients;  // sorted by p
    std::optional<ZeroSet> zeros;
    double normalization = 1.0;
    double gamma_scale = 2.0;
    // Largest P such that every prime <= P has stored coefficients.
    std::uint64_t coverage = 1;

    const HeckePair* coefficient(std::uint64_t p) const;
    bool operator==(const FormRecord&) const = default;
};

struct Admissibility {
    double zero_sum_error = 0.0;
    double max_abs_re = 0.0;
    double self_dual_error = 0.0;
    bool zero_sum = true;
    bool kim_sarnak = true;
    bool self_dual = true;
    bool tempered = true;
    Warnings notes;
    bool ok() const { return zero_sum && kim_sarnak && self_dual; }
};

Admissibility check_langlands(const LanglandsParameter& mu);
// Throws ValidationError naming the failed invariant.
void validate_langlands(const LanglandsParameter& mu, const std::string& context = "mu");

SpectralParameter mu_to_nu(const LanglandsParameter& mu);
LanglandsParameter nu_to_mu(const SpectralParameter& nu);

double gamma_scale_of(const LanglandsParameter& mu);
double euclidean_norm(const std::array<cplx, 3>& v);

// Validates every FormRecord invariant, sorts coefficients, fills
// gamma_scale and coverage.
FormRecord make_form(std::string label, LanglandsParameter mu, std::vector<PrimeCoefficient> coefficients,
                     std::optional<ZeroSet> zeros = std::nullopt, double normalization = 1.0);

std::string dual_label(const std::string& label);
FormRecord dual_form(const FormRecord& f);

struct GenericPosition {
    bool generic = false;
    double min_ratio = 0.0;  // over the six |mu_j|/|mu|, |nu_j|/|mu|
    double max_ratio = 0.0;
    double worst_ratio = 0.0;  // the ratio furthest outside [c_lo, c_hi], or nearest its edge
};

GenericPosition is_generic_position(const LanglandsParameter& mu0, double c_lo = 0.05, double c_hi = 1.0);

}  // namespace argstat
