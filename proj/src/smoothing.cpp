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

#include "argstat/smoothing.hpp"

#include <cmath>
#include <sstream>

#include "argstat/primes.hpp"
#include "argstat/satake.hpp"

namespace argstat {

namespace {

// psi(y) < 1.03883 y for all y > 0 (Rosser-Schoenfeld)
constexpr double kChebyshevPsi = 1.03883;

std::uint64_t smallest_factor(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t p = 3; p * p <= n; p += 2) {
        if (n % p == 0) return p;
    }
    return n;
}

// Omitted terms n > N under |C(n)| <= 3 n^theta and Lambda_x <= Lambda, by
// partial summation against psi: sum_{n>N} Lambda(n) g(n) <= c [N g(N) + int_N^inf g].
double tail_bound(double N, double a, double log_x, WeightMode mode) {
    double lN = std::log(N);
    double base = std::pow(N, 1.0 - a);
    double ng = 0.0, integral = 0.0;
    switch (mode) {
        case WeightMode::plain:
            ng = base;
            integral = base / (a - 1.0);
            break;
        case WeightMode::divided_by_log:
            ng = base / lN;
            integral = base / ((a - 1.0) * lN);
            break;
        case WeightMode::log_xp:
            ng = base * (log_x + lN);
            integral = base * ((log_x + lN) / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0)));
            break;
    }
    return kChebyshevPsi * 3.0 * (ng + integral);
}

}  // namespace

SmoothingConfig make_smoothing(double x) {
    if (!(x >= 4.0) || !std::isfinite(x)) throw ValidationError("smoothing: x must be >= 4");
    return SmoothingConfig{x};
}

double von_mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    std::uint64_t p = smallest_factor(n);
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

double lambda_x_ratio(std::uint64_t n, double x) {
    const double nd = static_cast<double>(n);
    if (nd <= x) return 1.0;
    const double x2 = x * x;
    if (nd >= x2 * x) return 0.0;
    const double L = std::log(x);
    const double l = std::log(nd);
    const double a = 3.0 * L - l;  // log(x^3/n)
    if (nd <= x2) {
        const double b = 2.0 * L - l;  // log(x^2/n)
        return (a * a - 2.0 * b * b) / (2.0 * L * L);
    }
    return a * a / (2.0 * L * L);
}

double lambda_x(std::uint64_t n, const SmoothingConfig& cfg) {
    double lam = von_mangoldt(n);
    if (lam == 0.0) return 0.0;
    return lam * lambda_x_ratio(n, cfg.x);
}

double prime_reciprocal_sum(double X) {
    if (!(X >= 2.0)) throw ValidationError("prime_reciprocal_sum: X must be >= 2");
    auto primes = primes_up_to(static_cast<std::uint64_t>(std::floor(X)));
    double s = 0.0;
    for (auto p : primes) s += 1.0 / static_cast<double>(p);
    return s;
}

DirichletSum dirichlet_sum_ex(const FormRecord& f, double sigma, double t, const SmoothingConfig& cfg,
                              WeightMode mode, double tail_tolerance) {
    if (!(sigma > 0.0)) throw ValidationError("dirichlet_sum: sigma must be positive");
    const double x = cfg.x;
    const double x3 = x * x * x;
    const double log_x = std::log(x);
    DirichletSum out;
    out.value = 0.0;
    if (x3 < 2.0) return out;

    const double limit = std::min(x3, static_cast<double>(f.coverage));
    if (x3 > static_cast<double>(f.coverage)) {
        const double theta = check_langlands(f.mu).tempered ? 0.0 : kKimSarnak;
        const double a = sigma - theta;
        const double N = std::max(2.0, static_cast<double>(f.coverage));
        double bound = a > 1.0 ? tail_bound(N, a, log_x, mode) : INFINITY;
        if (!(bound <= tail_tolerance)) {
            std::uint64_t top = x3 >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(std::floor(x3));
            std::uint64_t q = top;
            for (;;) {
                q = largest_prime_le(q);
                if (q == 0 || !f.coefficient(q)) break;
                --q;
            }
            std::ostringstream os;
            os << f.label << ": coefficients stop at " << f.coverage << " but x^3 = " << x3
               << "; largest missing prime " << q << " (tail bound " << bound << ")";
            throw MissingDataError(os.str());
        }
        out.tail_bound = bound;
    }

    cplx total = 0.0;
    for (const auto& c : f.coefficients) {
        const double pd = static_cast<double>(c.p);
        if (pd >= x3) break;
        const double lp = std::log(pd);
        int kmax = 0;
        for (double pk = pd; pk < x3; pk *= pd) ++kmax;
        if (kmax == 0) continue;
        auto C = power_sums(c.a.a1p, c.a.ap1, kmax);
        std::uint64_t n = 1;
        for (int k = 1; k <= kmax; ++k) {
            n *= c.p;
            const double ln = k * lp;
            double w = lambda_x_ratio(n, x) * lp;
            if (w == 0.0) continue;
            if (mode == WeightMode::divided_by_log) w /= ln;
            if (mode == WeightMode::log_xp) w *= log_x + lp;
            total += C[k - 1] * w * std::exp(cplx(-sigma * ln, -t * ln));
        }
    }
    out.value = total;
    out.summed_to = static_cast<std::uint64_t>(std::floor(limit));
    return out;
}

cplx dirichlet_sum(const FormRecord& f, double sigma, double t, const SmoothingConfig& cfg,
                   WeightMode mode) {
    return dirichlet_sum_ex(f, sigma, t, cfg, mode).value;
}

double sigma_x_core(const std::vector<Zero>& zeros, double t, double log_x) {
    double m = 5.0 / log_x;
    for (const auto& z : zeros) {
        double a = std::abs(z.beta);
        if (a <= m) continue;
        if (std::abs(t - z.gamma) <= std::exp(3.0 * a * log_x) / log_x) m = a;
    }
    return 0.5 + 2.0 * m;
}

double sigma_x(const ZeroSet& zs, double t, const SmoothingConfig& cfg) {
    if (!(cfg.x >= 4.0)) throw ValidationError("sigma_x: x must be >= 4");
    const double log_x = std::log(cfg.x);
    if (!zs.complete_in_box) throw MissingDataError("sigma_x: zero set carries no completeness box");
    const auto& box = *zs.complete_in_box;
    const double reach = std::abs(t) + std::exp(3.0 * box.B * log_x) / log_x;
    if (!(reach <= box.H)) {
        std::ostringstream os;
        os << "sigma_x: window up to |gamma| = " << reach << " exceeds the certified height " << box.H;
        throw MissingDataError(os.str());
    }
    return sigma_x_core(zs.zeros, t, log_x);
}

bool count_certified(const ZeroSet& zs, double sigma, double H) {
    if (!zs.complete_in_box) return false;
    return H <= zs.complete_in_box->H || sigma >= zs.complete_in_box->B;
}

std::uint64_t count_zeros(const ZeroSet& zs, double sigma, double H) {
    if (!count_certified(zs, sigma, H)) {
        std::ostringstream os;
        os << "count_zeros: (sigma=" << sigma << ", H=" << H << ") is not covered by the completeness box";
        throw MissingDataError(os.str());
    }
    std::uint64_t n = 0;
    for (const auto& z : zs.zeros) {
        if (z.beta > sigma && std::abs(z.gamma) < H) ++n;
    }
    return n;
}

}  // namespace argstat
