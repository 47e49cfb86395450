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

#include "argstat/forms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "argstat/primes.hpp"

namespace argstat {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kMatchTol = 1e-12;
constexpr double kConjTol = 1e-10;

std::string fmt_c(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

}  // namespace

ZeroSet make_zero_set(std::vector<Zero> zeros, std::optional<CompletenessBox> box) {
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const auto& z = zeros[i];
        if (!std::isfinite(z.beta) || !std::isfinite(z.gamma) || !(std::abs(z.beta) < 0.5)) {
            throw ValidationError("zeros[" + std::to_string(i) + "]: beta must satisfy |beta| < 1/2");
        }
    }
    if (box && (!(box->B >= 0.0) || !(box->H >= 0.0))) {
        throw ValidationError("complete_in_box: B and H must be nonnegative");
    }
    std::sort(zeros.begin(), zeros.end(), [](const Zero& a, const Zero& b) {
        return a.gamma != b.gamma ? a.gamma < b.gamma : a.beta < b.beta;
    });
    return ZeroSet{std::move(zeros), box};
}

const HeckePair* FormRecord::coefficient(std::uint64_t p) const {
    auto it = std::lower_bound(coefficients.begin(), coefficients.end(), p,
                               [](const PrimeCoefficient& c, std::uint64_t q) { return c.p < q; });
    if (it == coefficients.end() || it->p != p) return nullptr;
    return &it->a;
}

Admissibility check_langlands(const LanglandsParameter& m) {
    Admissibility r;
    const auto& mu = m.mu;
    r.zero_sum_error = std::abs(mu[0] + mu[1] + mu[2]);
    r.zero_sum = r.zero_sum_error <= kSumTol;
    for (const auto& z : mu) {
        r.max_abs_re = std::max(r.max_abs_re, std::abs(z.real()));
        if (z.real() != 0.0) r.tempered = false;
    }
    r.kim_sarnak = r.max_abs_re <= kKimSarnak + 1e-9;
    // {-mu_j} = {conj(mu_j)} as multisets: best of the six matchings
    std::array<int, 3> perm{0, 1, 2};
    double best = INFINITY;
    do {
        double worst = 0.0;
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(-mu[j] - std::conj(mu[perm[j]])));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    r.self_dual_error = best;
    r.self_dual = best <= kMatchTol;
    if (r.max_abs_re > kKimSarnak && r.max_abs_re <= 0.5) {
        r.notes.push_back("max |Re mu_j| exceeds 5/14 but lies within the 1/2 region");
    }
    return r;
}

void validate_langlands(const LanglandsParameter& mu, const std::string& context) {
    auto r = check_langlands(mu);
    std::ostringstream os;
    os.precision(6);
    if (!r.zero_sum) {
        os << context << ": mu sum is " << fmt_c(mu.mu[0] + mu.mu[1] + mu.mu[2]) << ", expected 0";
        throw ValidationError(os.str());
    }
    if (!r.kim_sarnak) {
        os << context << ": max |Re mu_j| = " << r.max_abs_re << " exceeds the Kim-Sarnak bound 5/14";
        throw ValidationError(os.str());
    }
    if (!r.self_dual) {
        os << context << ": {-mu_j} differs from {conj(mu_j)} by " << r.self_dual_error;
        throw ValidationError(os.str());
    }
}

SpectralParameter mu_to_nu(const LanglandsParameter& m) {
    const auto& mu = m.mu;
    if (std::abs(mu[0] + mu[1] + mu[2]) > kSumTol) {
        throw ValidationError("mu: mu sum is " + fmt_c(mu[0] + mu[1] + mu[2]) + ", expected 0");
    }
    SpectralParameter s;
    s.nu[0] = (mu[0] - mu[1]) / 3.0;
    s.nu[1] = (mu[1] - mu[2]) / 3.0;
    s.nu[2] = -s.nu[0] - s.nu[1];
    return s;
}

LanglandsParameter nu_to_mu(const SpectralParameter& s) {
    const auto& nu = s.nu;
    if (std::abs(nu[0] + nu[1] + nu[2]) > kSumTol) {
        throw ValidationError("nu: nu sum is " + fmt_c(nu[0] + nu[1] + nu[2]) + ", expected 0");
    }
    LanglandsParameter m;
    m.mu[0] = 2.0 * nu[0] + nu[1];
    m.mu[1] = nu[1] - nu[0];
    m.mu[2] = -nu[0] - 2.0 * nu[1];
    return m;
}

double gamma_scale_of(const LanglandsParameter& mu) {
    return 2.0 + std::max({std::abs(mu.mu[0]), std::abs(mu.mu[1]), std::abs(mu.mu[2])});
}

double euclidean_norm(const std::array<cplx, 3>& v) {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

FormRecord make_form(std::string label, LanglandsParameter mu, std::vector<PrimeCoefficient> coefficients,
                     std::optional<ZeroSet> zeros, double normalization) {
    const std::string ctx = label.empty() ? std::string("<unlabeled>") : label;
    if (label.empty()) throw ValidationError(ctx + ": label: must be nonempty");
    validate_langlands(mu, ctx + ": mu");
    if (!(normalization > 0.0) || !std::isfinite(normalization)) {
        throw ValidationError(ctx + ": normalization: must be positive");
    }
    std::sort(coefficients.begin(), coefficients.end(),
              [](const PrimeCoefficient& a, const PrimeCoefficient& b) { return a.p < b.p; });
    auto tempered = check_langlands(mu).tempered;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const auto& c = coefficients[i];
        const std::string path = ctx + ": coefficients[" + std::to_string(c.p) + "]";
        if (i > 0 && coefficients[i - 1].p == c.p) throw ValidationError(path + ": duplicate prime");
        if (!is_prime(c.p)) throw ValidationError(path + ": key is not prime");
        for (cplx z : {c.a.a1p, c.a.ap1}) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw ValidationError(path + ": non-finite coefficient");
            }
        }
        if (tempered && std::abs(std::conj(c.a.a1p) - c.a.ap1) > kConjTol) {
            throw ValidationError(path + ": conj(A(1,p)) != A(p,1) for tempered mu");
        }
    }
    if (zeros) *zeros = make_zero_set(std::move(zeros->zeros), zeros->complete_in_box);

    FormRecord f;
    f.label = std::move(label);
    f.mu = mu;
    f.gamma_scale = gamma_scale_of(mu);
    f.normalization = normalization;
    f.zeros = std::move(zeros);
    // coverage: walk the stored primes against the true prime sequence
    std::uint64_t cov = 1;
    if (!coefficients.empty()) {
        std::uint64_t top = std::min(coefficients.back().p, kPrimeCap);
        auto primes = primes_up_to(top);
        std::size_t i = 0;
        for (; i < primes.size() && i < coefficients.size() && primes[i] == coefficients[i].p; ++i) {}
        if (i == 0) {
            cov = 1;
        } else if (i < primes.size()) {
            cov = primes[i] - 1;
        } else {
            // all primes up to `top` stored; the next prime is the first gap
            std::uint64_t q = top + 1;
            while (!is_prime(q)) ++q;
            cov = q - 1;
        }
    }
    f.coverage = cov;
    f.coefficients = std::move(coefficients);
    return f;
}

std::string dual_label(const std::string& label) {
    if (!label.empty() && label.back() == '~') return label.substr(0, label.size() - 1);
    return label + "~";
}

FormRecord dual_form(const FormRecord& f) {
    FormRecord d = f;
    d.label = dual_label(f.label);
    for (auto& z : d.mu.mu) z = -z;
    for (auto& c : d.coefficients) std::swap(c.a.a1p, c.a.ap1);
    if (d.zeros) {
        for (auto& z : d.zeros->zeros) z.gamma = -z.gamma;
        *d.zeros = make_zero_set(std::move(d.zeros->zeros), d.zeros->complete_in_box);
    }
    return d;
}

GenericPosition is_generic_position(const LanglandsParameter& mu0, double c_lo, double c_hi) {
    if (!(c_lo > 0.0) || !(c_hi > c_lo)) throw ValidationError("generic position: need 0 < c_lo < c_hi");
    double norm = euclidean_norm(mu0.mu);
    if (norm == 0.0) throw ValidationError("generic position: mu0 = 0");
    auto nu = mu_to_nu(mu0);
    GenericPosition g;
    g.min_ratio = INFINITY;
    g.max_ratio = 0.0;
    double worst_margin = INFINITY;
    for (int j = 0; j < 6; ++j) {
        double r = std::abs(j < 3 ? mu0.mu[j] : nu.nu[j - 3]) / norm;
        g.min_ratio = std::min(g.min_ratio, r);
        g.max_ratio = std::max(g.max_ratio, r);
        double margin = std::min(r - c_lo, c_hi - r);
        if (margin < worst_margin) {
            worst_margin = margin;
            g.worst_ratio = r;
        }
    }
    g.generic = g.min_ratio >= c_lo && g.max_ratio <= c_hi;
    return g;
}

}  // namespace argstat
