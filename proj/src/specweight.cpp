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

#include "argstat/specweight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "argstat/parallel.hpp"

namespace argstat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleGuard = 1e-6;

std::array<double, 3> imag3(const LanglandsParameter& mu) {
    return {mu.mu[0].imag(), mu.mu[1].imag(), mu.mu[2].imag()};
}

// Real-arithmetic version of h on the tempered plane, mu = i u.
struct TemperedKernel {
    std::array<std::array<double, 3>, 6> centers{};
    std::array<double, 3> inv_nu0_sq{};
    std::vector<double> c_sq;
    double inv_M_sq = 0.0;

    explicit TemperedKernel(const TestFunctionConfig& cfg) {
        auto orbit = weyl_orbit(cfg.mu0);
        for (int w = 0; w < 6; ++w) centers[w] = imag3(orbit[w]);
        auto nu0 = mu_to_nu(cfg.mu0);
        for (int j = 0; j < 3; ++j) inv_nu0_sq[j] = 1.0 / std::norm(nu0.nu[j]);
        for (int n = 0; n <= cfg.A; ++n) {
            double c = (1.0 + 2.0 * n) / 3.0;
            c_sq.push_back(c * c);
        }
        double M = cfg.M();
        inv_M_sq = 1.0 / (M * M);
    }

    double p_squared(const std::array<double, 3>& u) const {
        double v[3] = {(u[0] - u[1]) / 3.0, (u[1] - u[2]) / 3.0, 0.0};
        v[2] = -v[0] - v[1];
        double prod = 1.0;
        for (double c2 : c_sq) {
            for (int j = 0; j < 3; ++j) prod *= (v[j] * v[j] + c2) * inv_nu0_sq[j];
        }
        return prod * prod;
    }

    // psi is evaluated at (w(mu) - mu0)/M; the sum over w of |w(u) - u0|
    // equals the sum over w of |u - w^{-1}(u0)|, so the orbit of the centre works.
    double psi_sum(const std::array<double, 3>& u) const {
        double s = 0.0;
        for (const auto& c : centers) {
            double d0 = u[0] - c[0], d1 = u[1] - c[1], d2 = u[2] - c[2];
            s += std::exp(-(d0 * d0 + d1 * d1 + d2 * d2) * inv_M_sq);
        }
        return s;
    }

    double h(const std::array<double, 3>& u) const {
        double ps = psi_sum(u);
        return p_squared(u) * ps * ps;
    }
};

double density_tempered(const std::array<double, 3>& u) {
    double v[3] = {(u[0] - u[1]) / 3.0, (u[1] - u[2]) / 3.0, 0.0};
    v[2] = -v[0] - v[1];
    double prod = 1.0;
    for (double x : v) {
        double a = std::abs(x);
        prod *= 3.0 * a * std::tanh(1.5 * kPi * a);
    }
    return prod;
}

}  // namespace

double TestFunctionConfig::M() const { return std::pow(T, 1.0 - eta); }

TestFunctionConfig make_test_function(const LanglandsParameter& mu0, double eta, int A) {
    validate_langlands(mu0, "mu0");
    for (const auto& m : mu0.mu) {
        if (std::abs(m.real()) > 1e-12) throw ValidationError("mu0 must be tempered (Re mu0 = 0)");
    }
    if (!(eta > 0.0 && eta < 0.5)) throw ValidationError("eta must lie in (0, 1/2)");
    if (A < 1) throw ValidationError("A must be a positive integer");
    auto nu0 = mu_to_nu(mu0);
    for (int j = 0; j < 3; ++j) {
        if (std::abs(nu0.nu[j]) < 1e-12) {
            std::ostringstream os;
            os << "nu0_" << (j + 1) << " vanishes; P(mu) normalisation undefined";
            throw ValidationError(os.str());
        }
    }
    TestFunctionConfig cfg;
    cfg.mu0 = mu0;
    cfg.T = euclidean_norm(mu0.mu);
    cfg.eta = eta;
    cfg.A = A;
    return cfg;
}

std::array<LanglandsParameter, 6> weyl_orbit(const LanglandsParameter& mu) {
    const auto& m = mu.mu;
    return {LanglandsParameter{{m[0], m[1], m[2]}}, LanglandsParameter{{m[0], m[2], m[1]}},
            LanglandsParameter{{m[1], m[0], m[2]}}, LanglandsParameter{{m[1], m[2], m[0]}},
            LanglandsParameter{{m[2], m[0], m[1]}}, LanglandsParameter{{m[2], m[1], m[0]}}};
}

cplx p_polynomial(const LanglandsParameter& mu, const TestFunctionConfig& cfg) {
    auto nu = mu_to_nu(mu);
    auto nu0 = mu_to_nu(cfg.mu0);
    cplx prod = 1.0;
    for (int n = 0; n <= cfg.A; ++n) {
        double c = (1.0 + 2.0 * n) / 3.0;
        for (int j = 0; j < 3; ++j) prod *= (nu.nu[j] - c) * (nu.nu[j] + c) / std::norm(nu0.nu[j]);
    }
    return prod;
}

HValue h_test_ex(const LanglandsParameter& mu, const TestFunctionConfig& cfg) {
    const double M = cfg.M();
    cplx psi = 0.0;
    for (const auto& w : weyl_orbit(mu)) {
        cplx e = 0.0;
        for (int j = 0; j < 3; ++j) {
            cplx d = (w.mu[j] - cfg.mu0.mu[j]) / M;
            e += d * d;
        }
        psi += std::exp(e);
    }
    cplx p = p_polynomial(mu, cfg);
    cplx h = p * p * psi * psi;
    HValue out;
    out.value = h.real();
    out.imag_residual = std::abs(h.imag());
    return out;
}

double h_test(const LanglandsParameter& mu, const TestFunctionConfig& cfg) { return h_test_ex(mu, cfg).value; }

SpecDensity spec_density_ex(const LanglandsParameter& mu) {
    auto nu = mu_to_nu(mu);
    cplx raw = 1.0;
    double mag = 1.0;
    for (const auto& v : nu.nu) {
        cplx z = 1.5 * kPi * v;
        // cos(z) = 0 exactly at the poles
        if (std::abs(std::cos(z)) < kPoleGuard) {
            std::ostringstream os;
            os << "spec_density: nu = (" << v.real() << "," << v.imag() << ") sits on a pole of tan(3 pi nu / 2)";
            throw NumericalError(os.str());
        }
        cplx f = 3.0 * v * std::tan(z);
        raw *= f;
        mag *= std::abs(f);
    }
    return SpecDensity{mag, raw.real()};
}

double spec_density(const LanglandsParameter& mu) { return spec_density_ex(mu).value; }

HResult compute_H(const TestFunctionConfig& cfg, const Quadrature& q, unsigned threads) {
    if (!(q.spacing > 0.0) || !(q.cutoff >= 6.0)) {
        throw ValidationError("compute_H: need spacing > 0 and cutoff >= 6 (units of M)");
    }
    const TemperedKernel kernel(cfg);
    const double M = cfg.M();
    const double delta = q.spacing * M;
    const double R = q.cutoff * M;
    const double R2 = R * R;

    // Global lattice u = delta (i, j) covering every ball; the coarse rule
    // uses the sublattice with i, j even.
    double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
    for (const auto& c : kernel.centers) {
        lo1 = std::min(lo1, c[0]), hi1 = std::max(hi1, c[0]);
        lo2 = std::min(lo2, c[1]), hi2 = std::max(hi2, c[1]);
    }
    auto even_floor = [](double v) {
        long k = static_cast<long>(std::floor(v));
        return k - (((k % 2) + 2) % 2);
    };
    const long i0 = even_floor((lo1 - R) / delta), i1 = static_cast<long>(std::ceil((hi1 + R) / delta));
    const long j0 = even_floor((lo2 - R) / delta), j1 = static_cast<long>(std::ceil((hi2 + R) / delta));
    const std::size_t rows = static_cast<std::size_t>(i1 - i0 + 1);

    std::vector<double> fine(rows, 0.0), coarse(rows, 0.0);
    std::vector<std::uint64_t> counts(rows, 0);
    parallel_chunks(rows, rows, threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t r = b; r < e; ++r) {
            const long i = i0 + static_cast<long>(r);
            double sf = 0.0, sc = 0.0;
            std::uint64_t n = 0;
            for (long j = j0; j <= j1; ++j) {
                std::array<double, 3> u{delta * i, delta * j, 0.0};
                u[2] = -u[0] - u[1];
                bool inside = false;
                for (const auto& c : kernel.centers) {
                    double d0 = u[0] - c[0], d1 = u[1] - c[1], d2 = u[2] - c[2];
                    if (d0 * d0 + d1 * d1 + d2 * d2 <= R2) {
                        inside = true;
                        break;
                    }
                }
                if (!inside) continue;
                double v = kernel.h(u) * density_tempered(u);
                sf += v;
                if (i % 2 == 0 && j % 2 == 0) sc += v;
                ++n;
            }
            fine[r] = sf;
            coarse[r] = sc;
            counts[r] = n;
        }
    });
    double sf = 0.0, sc = 0.0;
    std::uint64_t n = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        sf += fine[r];
        sc += coarse[r];
        n += counts[r];
    }
    const double norm = 192.0 * std::pow(kPi, 5);
    HResult out;
    out.value = sf * delta * delta / norm;
    out.coarse = sc * 4.0 * delta * delta / norm;
    out.relative_error = out.value != 0.0 ? std::abs(out.value - out.coarse) / std::abs(out.value) : 0.0;
    out.points = n;
    out.spacing = delta;
    out.cutoff = R;
    if (!(out.relative_error <= 0.01)) {
        std::ostringstream os;
        os << "compute_H: unresolved quadrature, resolutions differ by " << out.relative_error * 100 << "%";
        throw NumericalError(os.str());
    }
    return out;
}

double diagonal_envelope(double P, double T, double M, double epsilon) {
    return std::pow(T * P, epsilon) * (T * std::sqrt(P) + T * T * T + T * M * M * std::pow(P, kVartheta));
}

DiagonalPrediction diagonal_predictor(std::uint64_t m1, std::uint64_t m2, std::uint64_t n1, std::uint64_t n2,
                                      const TestFunctionConfig& cfg, double H, double epsilon) {
    if (m1 == 0 || m2 == 0 || n1 == 0 || n2 == 0) throw ValidationError("diagonal_predictor: indices must be positive");
    double P = static_cast<double>(m1) * static_cast<double>(n1) * static_cast<double>(m2) * static_cast<double>(n2);
    DiagonalPrediction out;
    out.main = (m1 == n1 && m2 == n2) ? H : 0.0;
    out.envelope = diagonal_envelope(P, cfg.T, cfg.M(), epsilon);
    out.negligible = out.envelope < 0.01 * H;
    return out;
}

std::optional<double> negligible_crossover(const TestFunctionConfig& cfg, double H, double epsilon) {
    const double target = 0.01 * H;
    const double T = cfg.T, M = cfg.M();
    if (diagonal_envelope(1.0, T, M, epsilon) >= target) return std::nullopt;
    double lo = 0.0, hi = 1.0;
    while (diagonal_envelope(std::exp(hi), T, M, epsilon) < target) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (diagonal_envelope(std::exp(mid), T, M, epsilon) < target) lo = mid;
        else hi = mid;
    }
    return std::exp(hi);
}

}  // namespace argstat
