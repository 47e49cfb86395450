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

#include "argstat/familysim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "argstat/parallel.hpp"
#include "argstat/primes.hpp"
#include "argstat/smoothing.hpp"

namespace argstat {

namespace {

constexpr double kPi = std::numbers::pi;

// |Delta|^2 from the trace a of an SU(3) element.
double disc_from_trace(cplx a) {
    double n = std::norm(a);
    return -n * n + 8.0 * (a * a * a).real() - 18.0 * n + 27.0;
}

cplx trace_of(double t1, double t2) {
    cplx e1 = std::polar(1.0, t1), e2 = std::polar(1.0, t2);
    return e1 + e2 + std::conj(e1 * e2);
}

struct Accepted {
    double t1, t2;
    cplx trace;
};

Accepted draw_class(Rng& rng) {
    for (;;) {
        double t1 = rng.uniform(-kPi, kPi), t2 = rng.uniform(-kPi, kPi);
        cplx a = trace_of(t1, t2);
        if (rng.uniform() * kVandermondePeak <= disc_from_trace(a)) return {t1, t2, a};
    }
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

}  // namespace

double vandermonde_sq(double theta1, double theta2) {
    double t3 = -theta1 - theta2;
    auto d = [](double a, double b) {
        double s = std::sin(0.5 * (a - b));
        return 4.0 * s * s;
    };
    return d(theta1, theta2) * d(theta1, t3) * d(theta2, t3);
}

std::pair<double, double> sample_su3_angles(Rng& rng) {
    auto a = draw_class(rng);
    return {a.t1, a.t2};
}

SatakeTriple sample_su3(Rng& rng) {
    auto a = draw_class(rng);
    cplx e1 = std::polar(1.0, a.t1), e2 = std::polar(1.0, a.t2);
    SatakeTriple s;
    s.alpha = {e1, e2, std::conj(e1 * e2)};
    return s;
}

cplx weyl_expectation(const std::function<cplx(const std::array<cplx, 3>&)>& f, int grid) {
    if (grid < 8) throw ValidationError("weyl_expectation: grid must be >= 8");
    const double h = 2.0 * kPi / grid;
    cplx sum = 0.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            double t1 = i * h, t2 = j * h;
            cplx e1 = std::polar(1.0, t1), e2 = std::polar(1.0, t2);
            std::array<cplx, 3> al{e1, e2, std::conj(e1 * e2)};
            sum += f(al) * vandermonde_sq(t1, t2);
        }
    }
    return sum / (6.0 * grid * grid);
}

double m_f(const std::vector<SatakeTriple>& sample, double t) {
    double s = 0.0;
    for (const auto& st : sample) {
        double p = static_cast<double>(st.prime);
        cplx a = st.alpha[0] + st.alpha[1] + st.alpha[2];
        cplx z = std::polar(1.0 / std::sqrt(p), -t * std::log(p));
        s += (a * z).imag();
    }
    return s / kPi;
}

void validate_sim_config(const SimConfig& cfg) {
    if (!(cfg.prime_bound >= 10.0) || !(cfg.prime_bound <= static_cast<double>(kPrimeCap))) {
        throw ValidationError("sim: prime_bound must lie in [10, 1e8]");
    }
    if (!(cfg.t > 0.0) || !std::isfinite(cfg.t)) throw ValidationError("sim: t must be positive");
    if (cfg.sample_count < 100) throw ValidationError("sim: sample_count must be >= 100");
    if (cfg.n_max < 2 || cfg.n_max > 8 || cfg.n_max % 2 != 0) {
        throw ValidationError("sim: n_max must be an even integer in [2, 8]");
    }
    if (cfg.weighting == Weighting::spectral && !cfg.spectral) {
        throw ValidationError("sim: spectral weighting needs a test function config");
    }
}

double clt_constant(int n) {
    if (n < 0 || n % 2 != 0) return 0.0;
    int m = n / 2;
    double c = 1.0;
    for (int i = m + 1; i <= n; ++i) c *= i;
    return c / std::pow(2.0 * kPi, n);
}

double gaussian_cdf(double xi) { return 0.5 * (1.0 + std::erf(kPi * xi)); }

double max_cdf_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ValidationError("max_cdf_distance: length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double gaussian_distance(const std::vector<double>& xs, const std::vector<double>& weights) {
    if (xs.empty()) return 0.0;
    if (!weights.empty() && weights.size() != xs.size()) throw ValidationError("gaussian_distance: weight length");
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return xs[i] < xs[j] || (xs[i] == xs[j] && i < j);
    });
    double total = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) total += weights.empty() ? 1.0 : weights[i];
    double cum = 0.0, d = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        double g = gaussian_cdf(xs[idx[k]]);
        d = std::max(d, std::abs(cum / total - g));
        cum += weights.empty() ? 1.0 : weights[idx[k]];
        d = std::max(d, std::abs(cum / total - g));
    }
    return d;
}

double gaussian_distance(const MomentReport& report) {
    std::vector<double> z(report.samples.size());
    const double s = std::sqrt(report.sum_inv_p);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = report.samples[i] / s;
    return gaussian_distance(z, report.weights);
}

MomentReport run_moments(const SimConfig& cfg) {
    validate_sim_config(cfg);
    auto start = std::chrono::steady_clock::now();
    MomentReport rep;
    rep.config = cfg;

    const auto primes = primes_up_to(static_cast<std::uint64_t>(std::floor(cfg.prime_bound)), cfg.threads);
    std::vector<cplx> z(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        double p = static_cast<double>(primes[i]);
        z[i] = std::polar(1.0 / std::sqrt(p), -cfg.t * std::log(p));
        rep.sum_inv_p += 1.0 / p;
    }
    rep.prime_count = primes.size();
    rep.variance_target = rep.sum_inv_p / (2.0 * kPi * kPi);

    const std::size_t N = cfg.sample_count;
    rep.samples.assign(N, 0.0);
    const bool spectral = cfg.weighting == Weighting::spectral;
    if (spectral) rep.weights.assign(N, 0.0);

    // orthonormal basis of the zero-sum plane, for uniform draws in the M-ball
    const double r2 = 1.0 / std::sqrt(2.0), r6 = 1.0 / std::sqrt(6.0);
    const std::array<double, 3> b1{r2, -r2, 0.0}, b2{r6, r6, -2.0 * r6};

    const std::size_t chunks = std::min<std::size_t>(N, 256);
    parallel_chunks(N, chunks, cfg.threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Rng rng(cfg.seed, i);
            if (spectral) {
                const auto& tf = *cfg.spectral;
                double rad = tf.M() * std::sqrt(rng.uniform()), phi = rng.uniform(0.0, 2.0 * kPi);
                LanglandsParameter mu;
                for (int j = 0; j < 3; ++j) {
                    double u = tf.mu0.mu[j].imag() + rad * (std::cos(phi) * b1[j] + std::sin(phi) * b2[j]);
                    mu.mu[j] = cplx(0.0, u);
                }
                rep.weights[i] = h_test(mu, tf);
            }
            double s = 0.0;
            for (const auto& zp : z) s += (draw_class(rng).trace * zp).imag();
            rep.samples[i] = s / kPi;
        }
    });
    if (spectral) rep.notes.push_back("normalisation N_F set to 1 for synthetic spectral draws");

    // reductions below run in index order on one thread
    double wsum = 0.0, w2sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double w = spectral ? rep.weights[i] : 1.0;
        wsum += w;
        w2sum += w * w;
    }
    if (!(wsum > 0.0)) throw NumericalError("sim: spectral weights vanish on every draw");
    rep.effective_samples = wsum * wsum / w2sum;

    const double norm = std::sqrt(rep.sum_inv_p);
    for (int n = 1; n <= cfg.n_max; ++n) {
        MomentRow row;
        row.order = n;
        double m = 0.0;
        for (std::size_t i = 0; i < N; ++i) m += (spectral ? rep.weights[i] : 1.0) * std::pow(rep.samples[i], n);
        m /= wsum;
        double var = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double w = spectral ? rep.weights[i] : 1.0;
            double d = std::pow(rep.samples[i], n) - m;
            var += w * w * d * d;
        }
        row.empirical = m;
        // floor keeps the error strictly positive for degenerate samples
        row.stderr_ = std::max(std::sqrt(var) / wsum, 1e-300);
        row.target = clt_constant(n) * std::pow(rep.sum_inv_p, 0.5 * n);
        row.normalized = m / std::pow(norm, n);
        rep.rows.push_back(row);
    }
    if (cfg.n_max >= 4) rep.kurtosis = rep.rows[3].empirical / (rep.rows[1].empirical * rep.rows[1].empirical);
    rep.cdf_distance = gaussian_distance(rep);
    rep.pre_asymptotic = cfg.prime_bound < 1000.0 || N < 1000;
    if (rep.pre_asymptotic) rep.notes.push_back("pre-asymptotic: prime_bound < 1e3 or fewer than 1000 samples");
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

HeckeCase hecke_case_classifier(const HeckeTerm& term) {
    if (term.empty()) throw ValidationError("hecke_case_classifier: empty term");
    bool big = false;
    for (const auto& [p, mn] : term) {
        auto [m, n] = mn;
        if (m < 0 || n < 0 || m + n < 1) throw ValidationError("hecke_case_classifier: need m(p) + n(p) >= 1");
        if ((m - n) % 3 != 0) return HeckeCase::case1;
        if (m >= 2 || n >= 2) big = true;
    }
    return big ? HeckeCase::case2 : HeckeCase::case3;
}

MomentAudit symbolic_moment_audit(int n, int r, double t, int grid) {
    if (n < 1 || n > 6) throw ValidationError("symbolic_moment_audit: n must lie in [1, 6]");
    if (r < 1 || r > 3) throw ValidationError("symbolic_moment_audit: r must lie in [1, 3]");
    MomentAudit au;
    au.n = n;
    au.r = r;
    au.t = t;
    au.primes = {2, 3, 5};
    au.primes.resize(static_cast<std::size_t>(r));

    // each factor of M^n picks a prime and either A(1,p) z_p or A(p,1) conj(z_p)
    std::map<std::vector<std::pair<int, int>>, std::uint64_t> counts;
    const int choices = 2 * r;
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(choices);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::pair<int, int>> key(static_cast<std::size_t>(r), {0, 0});
        std::uint64_t c = code;
        for (int i = 0; i < n; ++i) {
            int pick = static_cast<int>(c % choices);
            c /= choices;
            if (pick % 2 == 0) ++key[pick / 2].first;
            else ++key[pick / 2].second;
        }
        ++counts[key];
    }

    std::map<std::pair<int, int>, cplx> local;
    auto local_expectation = [&](int m, int k) {
        auto it = local.find({m, k});
        if (it != local.end()) return it->second;
        cplx v = weyl_expectation(
            [m, k](const std::array<cplx, 3>& al) {
                cplx a = al[0] + al[1] + al[2];
                return std::pow(a, m) * std::pow(std::conj(a), k);
            },
            grid);
        local[{m, k}] = v;
        return v;
    };

    const cplx unit = 1.0 / (cplx(0.0, 2.0) * kPi);
    cplx total_e = 0.0;
    int m_half = n / 2;
    std::uint64_t case3_rows = 0;
    bool counts_ok = true;
    for (const auto& [key, count] : counts) {
        AuditRow row;
        cplx e = 1.0, coeff = static_cast<double>(count) * std::pow(unit, n);
        for (int j = 0; j < r; ++j) {
            auto [m, k] = key[j];
            if (m + k == 0) continue;
            row.term[au.primes[j]] = key[j];
            e *= local_expectation(m, k);
            double p = static_cast<double>(au.primes[j]);
            cplx z = std::polar(1.0 / std::sqrt(p), -t * std::log(p));
            coeff *= std::pow(z, m) * std::pow(-std::conj(z), k);
        }
        row.kase = hecke_case_classifier(row.term);
        row.sequences = count;
        row.expectation = e.real();
        total_e += coeff * e;
        if (row.kase == HeckeCase::case1) au.case1_max = std::max(au.case1_max, std::abs(e));
        if (row.kase == HeckeCase::case3) {
            ++case3_rows;
            au.case3_max_deviation = std::max(au.case3_max_deviation, std::abs(e - 1.0));
            if (au.case3_sequences_per_set == 0) au.case3_sequences_per_set = count;
            else if (au.case3_sequences_per_set != count) counts_ok = false;
        }
        au.rows.push_back(std::move(row));
    }
    au.total_expectation = total_e.real();
    au.case1_ok = au.case1_max <= 1e-6;

    if (n % 2 == 0 && m_half <= r) {
        au.case3_expected_per_tuple = factorial(n) / factorial(m_half);
        au.case3_sequences_per_tuple = au.case3_sequences_per_set / factorial(m_half);
        std::uint64_t sets = factorial(r) / (factorial(m_half) * factorial(r - m_half));
        au.case3_coefficient = static_cast<double>(au.case3_sequences_per_tuple) / std::pow(2.0 * kPi, n);
        au.case3_ok = counts_ok && case3_rows == sets &&
                      au.case3_sequences_per_tuple == au.case3_expected_per_tuple &&
                      au.case3_sequences_per_set % factorial(m_half) == 0 && au.case3_max_deviation <= 1e-9;
    } else {
        au.case3_ok = case3_rows == 0;
    }
    return au;
}

void validate_zero_ensemble(const ZeroEnsembleConfig& cfg) {
    if (!(cfg.theta > 0.0 && cfg.theta < 1.0)) throw ValidationError("zero ensemble: theta must lie in (0, 1)");
    if (!(cfg.logT > 0.0) || !std::isfinite(cfg.logT)) throw ValidationError("zero ensemble: logT must be positive");
    if (!(cfg.H > 0.0)) throw ValidationError("zero ensemble: H must be positive");
    if (cfg.n < 1 || cfg.k < 1) throw ValidationError("zero ensemble: n and k must be positive");
    if (cfg.forms < 1) throw ValidationError("zero ensemble: forms must be positive");
    const double cap = 3.0 * cfg.theta / (8.0 * cfg.n * cfg.k + 3.0);
    if (!(cfg.delta > 0.0 && cfg.delta < cap)) {
        std::ostringstream os;
        os << "zero ensemble: delta must lie in (0, 3 theta/(8nk+3)) = (0, " << cap << ")";
        throw ValidationError(os.str());
    }
}

double zero_free_floor(const ZeroEnsembleConfig& cfg) {
    const double L = cfg.delta * cfg.logT / 3.0;
    return std::pow(10.0 / L, 4 * cfg.n) * std::exp(40.0 * cfg.n * cfg.k);
}

double zero_density_constant(const ZeroEnsembleConfig& cfg) {
    validate_zero_ensemble(cfg);
    const double L = cfg.delta * cfg.logT / 3.0;
    double bound = zero_free_floor(cfg);
    if (!cfg.zero_free) {
        // a zero in ((i)/L, (i+1)/L] contributes at most 2^{4n} ((i+1)/L)^{4n} e^{8nk(i+1)};
        // at most floor(H T^{-theta i/L} log T) zeros lie above i/L
        double bins = 0.0;
        for (int i = 5; i < L / 2.0; ++i) {
            double cap = std::floor(cfg.H * std::exp(-cfg.theta * cfg.logT * i / L) * cfg.logT);
            bins += std::pow((i + 1) / L, 4 * cfg.n) * std::exp(8.0 * cfg.n * cfg.k * (i + 1)) * cap;
        }
        bound += std::pow(2.0, 4 * cfg.n + 1) * bins;
    }
    return bound * std::pow(cfg.logT, 4 * cfg.n);
}

std::uint64_t poisson(Rng& rng, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("poisson: lambda must be finite and >= 0");
    // sum of Poisson(<= 16) pieces, each by multiplication
    std::uint64_t n = 0;
    while (lambda > 0.0) {
        double piece = std::min(lambda, 16.0);
        lambda -= piece;
        double limit = std::exp(-piece), prod = rng.uniform();
        while (prod > limit) {
            ++n;
            prod *= rng.uniform();
        }
    }
    return n;
}

std::vector<Zero> synthetic_zero_set(const ZeroEnsembleConfig& cfg, Rng& rng) {
    if (cfg.zero_free) return {};
    // counts above sigma: B(sigma) = H log T T^{-theta sigma}
    const double a = cfg.theta * cfg.logT;
    const double B0 = cfg.H * cfg.logT;
    const double mass = B0 * (1.0 - std::exp(-0.5 * a));
    std::uint64_t K = std::min<std::uint64_t>(poisson(rng, mass), static_cast<std::uint64_t>(std::floor(B0)));
    std::vector<Zero> zs(K);
    const double span = 1.0 - std::exp(-0.5 * a);
    for (auto& z : zs) {
        z.beta = std::min(-std::log1p(-rng.uniform() * span) / a, std::nextafter(0.5, 0.0));
        z.gamma = rng.uniform(-cfg.H, cfg.H);
    }
    // truncation: the j-th largest beta may not exceed B^{-1}(j)
    std::sort(zs.begin(), zs.end(), [](const Zero& x, const Zero& y) {
        return x.beta > y.beta || (x.beta == y.beta && x.gamma < y.gamma);
    });
    for (std::size_t j = 0; j < zs.size(); ++j) {
        double lim = std::log(B0 / static_cast<double>(j + 1)) / a;
        zs[j].beta = std::min(zs[j].beta, lim);
    }
    return zs;
}

ZeroDensityResult zero_density_harness(const ZeroEnsembleConfig& cfg, std::uint64_t seed, std::uint64_t draw,
                                       std::optional<double> c) {
    validate_zero_ensemble(cfg);
    ZeroDensityResult out;
    out.log_x = cfg.delta * cfg.logT / 3.0;
    out.c = c ? *c : zero_density_constant(cfg);
    out.rhs_bound = out.c / std::pow(cfg.logT, 4 * cfg.n);
    const double x_pow = 4.0 * cfg.n * cfg.k * out.log_x;
    double sum = 0.0;
    for (int f = 0; f < cfg.forms; ++f) {
        Rng rng(Rng::mix(seed ^ Rng::mix(draw)), static_cast<std::uint64_t>(f));
        auto zs = synthetic_zero_set(cfg, rng);
        out.zeros += zs.size();
        double off = sigma_x_core(zs, cfg.t, out.log_x) - 0.5;
        out.max_sigma_offset = std::max(out.max_sigma_offset, off);
        sum += std::pow(off, 4 * cfg.n) * std::exp(x_pow * off);
    }
    out.lhs = sum / cfg.forms;
    // lhs and rhs can coincide exactly in the zero-free regime; allow rounding
    out.holds = out.lhs <= out.rhs_bound * (1.0 + 1e-12);
    return out;
}

}  // namespace argstat
