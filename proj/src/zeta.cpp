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

#include "argstat/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace argstat {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2 .. B_22
constexpr double kBernoulli[11] = {
    1.0 / 6.0,       -1.0 / 30.0,        1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,    7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0,  854513.0 / 138.0,
};

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

ZetaValue zeta_em(cplx s, int terms, int order) {
    if (s == cplx(1.0, 0.0)) throw ValidationError("zeta: pole at s = 1");
    if (terms < 10) throw ValidationError("zeta_em: terms must be >= 10");
    if (order < 2 || order > 10) throw ValidationError("zeta_em: bernoulli_order must lie in [2, 10]");
    const double N = terms;
    const double logN = std::log(N);
    cplx sum = 0.0;
    double mass = 0.0;  // for the rounding estimate
    for (int n = 1; n < terms; ++n) {
        const double ln = std::log(static_cast<double>(n));
        sum += std::exp(-s * ln);
        mass += std::exp(-s.real() * ln) * (1.0 + std::abs(s.imag()) * ln);
    }
    const cplx Ns = std::exp(-s * logN);  // N^-s
    sum += N * Ns / (s - 1.0) + 0.5 * Ns;
    // T_k = B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1)
    cplx rising = s;  // s(s+1)...(s+2k-2)
    cplx Npow = Ns / N;
    cplx next = 0.0;
    for (int k = 1; k <= order + 1; ++k) {
        cplx term = kBernoulli[k - 1] / factorial(2 * k) * rising * Npow;
        if (k <= order) {
            sum += term;
        } else {
            next = term;
        }
        rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
        Npow /= N * N;
    }
    ZetaValue out;
    out.value = sum;
    const double sigma = s.real();
    const double denom = sigma + 2 * order + 1;
    if (denom > 0.0) {
        out.error_bound = std::abs(next) * std::abs(s + double(2 * order + 1)) / denom +
                          4.0 * std::numeric_limits<double>::epsilon() * mass;
    } else {
        out.error_bound = INFINITY;
    }
    out.certified = std::abs(s.imag()) <= 100.0 && out.error_bound <= 1e-10;
    if (!out.certified) {
        std::ostringstream os;
        os << "zeta_em: accuracy not certified at s = (" << s.real() << "," << s.imag()
           << "), remainder bound " << out.error_bound;
        out.warnings.push_back(os.str());
    }
    return out;
}

cplx zeta(cplx s) {
    int terms = static_cast<int>(std::ceil(std::abs(s))) + 20;
    return zeta_em(s, terms, 10).value;
}

cplx zeta_log_derivative(cplx s) {
    auto D = [&](double h) {
        return std::log(zeta(s + h) / zeta(s - h)) / (2.0 * h);
    };
    const double h = 1e-4;
    return (4.0 * D(h / 2) - D(h)) / 3.0;
}

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw ValidationError("log_gamma: pole");
    }
    cplx shift = 0.0;
    while (z.real() < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    cplx inv = 1.0 / z, inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (int k = 1; k <= 10; ++k) {
        series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift;
}

double riemann_siegel_theta(double t) {
    return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

double hardy_z(double t) {
    cplx v = std::exp(cplx(0.0, riemann_siegel_theta(t))) * zeta(cplx(0.5, t));
    return v.real();
}

ArgumentTrace zeta_argument(double t, double resolution, bool keep_path) {
    if (!(resolution > 0.0)) throw ValidationError("zeta_argument: resolution must be positive");
    ArgumentTrace tr;
    double sigma = kArgumentStart;
    cplx cur = zeta(cplx(sigma, t));
    // |log zeta(s)| <= log zeta(4) < 0.1 on sigma >= 4, so the continuous
    // argument from +inf is the principal one there.
    tr.start_arg = std::arg(cur);
    double total = tr.start_arg;
    if (keep_path) {
        tr.sigma_samples.push_back(sigma);
        tr.phase_values.push_back(cur);
    }
    double h = resolution;
    const double limit = std::numbers::pi / 4;
    while (sigma > 0.5) {
        if (h < 1e-14) {
            throw NumericalError("zeta_argument: step underflow near t = " + std::to_string(t));
        }
        const double step = std::min(h, sigma - 0.5);
        const double s1 = sigma - 0.5 <= h ? 0.5 : sigma - step;
        cplx mid = zeta(cplx(0.5 * (sigma + s1), t));
        cplx end = zeta(cplx(s1, t));
        double d_full = std::arg(end / cur);
        double d_split = std::arg(mid / cur) + std::arg(end / mid);
        if (std::abs(d_full) >= limit || std::abs(d_full - d_split) > 1e-9) {
            h = 0.5 * step;
            continue;
        }
        total += d_split;
        tr.max_increment = std::max(tr.max_increment, std::abs(d_split));
        ++tr.steps;
        sigma = s1;
        cur = end;
        if (keep_path) {
            tr.sigma_samples.push_back(sigma);
            tr.phase_values.push_back(cur);
        }
        h = std::min(resolution, 2.0 * h);
    }
    tr.arg = total;
    return tr;
}

std::vector<ZetaOrdinate> locate_zeta_ordinates(double t_max, double step) {
    std::vector<ZetaOrdinate> out;
    double a = step;
    double za = hardy_z(a);
    while (a < t_max) {
        double b = std::min(a + step, t_max);
        double zb = hardy_z(b);
        if ((za < 0.0) != (zb < 0.0)) {
            double lo = a, hi = b, zlo = za;
            for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
                double m = 0.5 * (lo + hi);
                double zm = hardy_z(m);
                if ((zm < 0.0) == (zlo < 0.0)) {
                    lo = m;
                    zlo = zm;
                } else {
                    hi = m;
                }
            }
            double g = 0.5 * (lo + hi);
            out.push_back({g, std::abs(hardy_z(g))});
        }
        a = b;
        za = zb;
    }
    return out;
}

}  // namespace argstat
