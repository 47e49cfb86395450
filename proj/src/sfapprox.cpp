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

#include "argstat/sfapprox.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "argstat/primes.hpp"

namespace argstat {

namespace {

constexpr double kPi = std::numbers::pi;

// x^v (1 - x^v)^2 / v^3
cplx kernel(cplx v, double log_x) {
    cplx xv = std::exp(v * log_x);
    cplx d = 1.0 - xv;
    return xv * d * d / (v * v * v);
}

double max_abs_shift(const EisensteinSpec& spec) {
    return std::max({std::abs(spec.t[0]), std::abs(spec.t[1]), std::abs(spec.t[2])});
}

}  // namespace

EisensteinSpec make_eisenstein(double t1, double t2, double t3) {
    if (std::abs(t1 + t2 + t3) > 1e-12) throw ValidationError("eisenstein: shifts must sum to 0");
    return EisensteinSpec{{t1, t2, t3}};
}

ZeroSet eisenstein_zeros(const EisensteinSpec& spec) {
    const double H = zeta_table_height() - max_abs_shift(spec);
    std::vector<Zero> zs;
    for (double tj : spec.t) {
        for (const auto& o : zeta_ordinates()) {
            for (double g : {o.gamma - tj, -o.gamma - tj}) {
                if (std::abs(g) <= H) zs.push_back({0.0, g});
            }
        }
    }
    return make_zero_set(std::move(zs), CompletenessBox{0.0, H});
}

FormRecord eisenstein_form(const EisensteinSpec& spec, std::uint64_t prime_limit) {
    LanglandsParameter mu;
    for (int j = 0; j < 3; ++j) mu.mu[j] = cplx(0.0, -spec.t[j]);
    std::vector<PrimeCoefficient> coeffs;
    for (auto p : primes_up_to(prime_limit)) {
        const double lp = std::log(static_cast<double>(p));
        cplx a = 0.0, b = 0.0;
        for (double tj : spec.t) {
            a += std::exp(cplx(0.0, -tj * lp));
            b += std::exp(cplx(0.0, tj * lp));
        }
        coeffs.push_back({p, {a, b}});
    }
    std::ostringstream label;
    label.precision(17);
    label << "zeta-product(" << spec.t[0] << "," << spec.t[1] << "," << spec.t[2] << ")";
    return make_form(label.str(), mu, std::move(coeffs), eisenstein_zeros(spec), 1.0);
}

double s_zeta(double t, double path_resolution) {
    const double at = std::abs(t);
    if (at < kOrdinateExclusion) {
        throw ValidationError("s_zeta: height within 1e-3 of the pole");
    }
    if (at + kOrdinateExclusion > zeta_table_height()) {
        throw MissingDataError("s_zeta: height beyond the ordinate table");
    }
    for (const auto& o : zeta_ordinates()) {
        if (std::abs(at - o.gamma) < kOrdinateExclusion) {
            std::ostringstream os;
            os.precision(12);
            os << "s_zeta: height " << t << " within 1e-3 of the ordinate " << o.gamma;
            throw ValidationError(os.str());
        }
    }
    auto tr = zeta_argument(at, path_resolution);
    // arg zeta(sigma - it) = -arg zeta(sigma + it)
    return (t < 0 ? -tr.arg : tr.arg) / kPi;
}

SOracle s_oracle(const EisensteinSpec& spec, double t, double path_resolution) {
    SOracle out;
    for (int j = 0; j < 3; ++j) {
        const double h = t + spec.t[j];
        out.components[j] = s_zeta(h, path_resolution);
        out.tail[j] = std::arg(zeta(cplx(kArgumentStart, h))) / kPi;
        out.value += out.components[j];
    }
    return out;
}

RvmCheck rv_mangoldt_check(double t) {
    if (!(t >= 5.0 && t <= 50.0)) throw ValidationError("rv_mangoldt_check: t must lie in [5, 50]");
    RvmCheck r;
    for (const auto& o : zeta_ordinates()) {
        if (o.gamma <= 50.0 && std::abs(o.gamma - t) < 0.1) {
            throw ValidationError("rv_mangoldt_check: t within 0.1 of a zeta ordinate");
        }
        if (o.gamma <= t) ++r.n_counted;
    }
    r.n_formula = t / (2 * kPi) * std::log(t / (2 * kPi * std::numbers::e)) + 7.0 / 8.0 + s_zeta(t, 0.05);
    return r;
}

Lemma31 lemma31_check(const EisensteinSpec& spec, cplx s, const SmoothingConfig& cfg, double zero_window,
                      double tolerance) {
    const double L = std::log(cfg.x);
    const double x3 = cfg.x * cfg.x * cfg.x;
    if (x3 > static_cast<double>(kPrimeCap)) throw ValidationError("lemma31: x^3 above the prime cap");
    if (zero_window + max_abs_shift(spec) > zeta_table_height()) {
        throw MissingDataError("lemma31: zero window exceeds the ordinate table");
    }
    Lemma31 out;
    for (double tj : spec.t) {
        cplx w = s + cplx(0.0, tj);
        if (std::abs(w - 1.0) < 1e-9) throw ValidationError("lemma31: s at a pole of E");
        for (int m = 1; m <= 50; ++m) {
            if (std::abs(w + 2.0 * m) < 1e-9) throw ValidationError("lemma31: s on the trivial-zero lattice");
        }
        out.lhs += zeta_log_derivative(w);
    }

    auto form = eisenstein_form(spec, static_cast<std::uint64_t>(std::ceil(x3)));
    cplx rhs = -dirichlet_sum(form, s.real(), s.imag(), cfg, WeightMode::plain);

    cplx zsum = 0.0;
    for (double tj : spec.t) {
        for (const auto& o : zeta_ordinates()) {
            for (double g : {o.gamma - tj, -o.gamma - tj}) {
                if (std::abs(g) > zero_window) continue;
                cplx v = cplx(0.5, g) - s;
                if (std::abs(v) < 1e-9) throw ValidationError("lemma31: s at a zero of E");
                zsum += kernel(v, L);
                ++out.zeros_used;
            }
        }
    }
    cplx trivial = 0.0, pole = 0.0;
    for (double tj : spec.t) {
        for (int m = 1; m <= 50; ++m) trivial += kernel(cplx(-2.0 * m, -tj) - s, L);
        // residue -1 of E'/E at s + i t_j = 1
        pole += kernel(cplx(1.0, -tj) - s, L);
    }
    rhs += (-zsum - trivial + pole) / (L * L);
    out.rhs = rhs;
    out.gap = std::abs(out.lhs - out.rhs);

    // zeros beyond the window: density log(u / 2pi) / (2pi), six half-lines
    const double re = 0.5 - s.real();
    const double amp = std::exp(re * L) * std::pow(1.0 + std::exp(re * L), 2);
    const double c = std::abs(s.imag()) + max_abs_shift(spec);
    const double W = zero_window - c;
    if (W > 1.0) {
        double integral = (2.0 * std::log(W) + 1.0) / (4.0 * W * W) + c / (3.0 * W * W * W);
        out.tail_estimate = 6.0 * amp * integral / (2 * kPi) / (L * L);
    } else {
        out.tail_estimate = INFINITY;
    }
    if (out.tail_estimate > tolerance) {
        out.warnings.push_back("lemma31: zero-sum truncation tail exceeds the tolerance");
    }
    return out;
}

SApproxResult approx_s(const FormRecord& f, double t, const SmoothingConfig& cfg, double error_constant) {
    if (t == 0.0) throw ValidationError("approx_s: t must be nonzero");
    if (!(error_constant >= 0.0)) throw ValidationError("approx_s: error_constant must be nonnegative");
    if (!f.zeros) throw MissingDataError(f.label + ": approx_s requires zero data");
    SApproxResult r;
    r.sigma_x_used = sigma_x(*f.zeros, t, cfg);
    auto div = dirichlet_sum_ex(f, r.sigma_x_used, t, cfg, WeightMode::divided_by_log);
    auto plain = dirichlet_sum_ex(f, r.sigma_x_used, t, cfg, WeightMode::plain);
    const double d = r.sigma_x_used - 0.5;
    r.main_term = div.value.imag() / kPi;
    r.plain_abs = std::abs(plain.value);
    r.tail_bound = div.tail_bound / kPi + error_constant * d * plain.tail_bound;
    r.error_budget = error_constant * (d * r.plain_abs + d * std::log(std::abs(t) + f.gamma_scale)) +
                     r.tail_bound;
    return r;
}

}  // namespace argstat
