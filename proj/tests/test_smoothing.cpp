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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "argstat/primes.hpp"
#include "argstat/sfapprox.hpp"
#include "argstat/smoothing.hpp"
#include "support.hpp"

using namespace argstat;
using argstat::testing::Gen;

namespace {

bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

FormRecord constant_form(std::uint64_t limit) {
    std::vector<PrimeCoefficient> c;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (trial_prime(p)) c.push_back({p, {3.0, 3.0}});
    }
    return make_form("trivial", LanglandsParameter{}, c);
}

// the two middle-branch formulas of Lambda_x / Lambda, literally
double branch2(double n, double x) {
    double a = std::log(x * x * x / n), b = std::log(x * x / n), l = std::log(x);
    return (a * a - 2 * b * b) / (2 * l * l);
}
double branch3(double n, double x) {
    double a = std::log(x * x * x / n), l = std::log(x);
    return a * a / (2 * l * l);
}

}  // namespace

TEST_CASE("sieve matches trial division and is partition independent") {
    auto p = primes_up_to(200000);
    std::vector<std::uint64_t> oracle;
    for (std::uint64_t n = 0; n <= 200000; ++n) {
        if (trial_prime(n)) oracle.push_back(n);
    }
    CHECK(p == oracle);
    CHECK(primes_up_to(3000000, 1) == primes_up_to(3000000, 3));
    auto a = primes_in_range(0, 123456), b = primes_in_range(123457, 200000);
    a.insert(a.end(), b.begin(), b.end());
    CHECK(a == oracle);
    CHECK_THROWS_AS(primes_up_to(kPrimeCap + 1), ValidationError);
}

TEST_CASE("Miller-Rabin") {
    for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == trial_prime(n));
    CHECK(is_prime(1000000007ULL));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
    CHECK(largest_prime_le(100) == 97);
}

TEST_CASE("von Mangoldt") {
    CHECK(von_mangoldt(1) == 0.0);
    CHECK(von_mangoldt(8) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(von_mangoldt(12) == 0.0);
    CHECK(von_mangoldt(49) == doctest::Approx(std::log(7.0)));
    CHECK(von_mangoldt(97) == doctest::Approx(std::log(97.0)));
}

TEST_CASE("Lambda_x branches") {
    auto cfg = make_smoothing(50.0);
    // n <= x exactly
    for (std::uint64_t n = 1; n <= 50; ++n) CHECK(lambda_x(n, cfg) == von_mangoldt(n));
    // n = x^2 = 2500 is not a prime power; the ratio formula is checked instead
    CHECK(lambda_x_ratio(2500, 50.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(branch2(2500, 50) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(branch3(2500, 50) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(branch2(50, 50) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::uint64_t n : {125000ULL, 125003ULL, 1000003ULL}) CHECK(lambda_x(n, cfg) == 0.0);
    // x = 4: n = 16 = x^2 is a prime power
    auto c4 = make_smoothing(4.0);
    CHECK(lambda_x(16, c4) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
    CHECK(lambda_x(64, c4) == 0.0);
    CHECK_THROWS_AS(make_smoothing(3.9), ValidationError);
}

TEST_CASE("Lambda_x continuity and sandwich on a dense grid") {
    for (double x : {4.0, 7.5, 50.0, 123.4}) {
        for (double u : {1.0, 2.0}) {
            double n = std::pow(x, u);
            double l = branch2(n, x), r = branch3(n, x);
            if (u == 1.0) CHECK(std::abs(l - 1.0) <= 1e-12);
            if (u == 2.0) CHECK(std::abs(l - r) <= 1e-12);
        }
        for (int i = 0; i <= 3000; ++i) {
            auto n = static_cast<std::uint64_t>(1 + i * (x * x * x) / 3000.0);
            double v = lambda_x_ratio(n, x);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            if (static_cast<double>(n) <= x) CHECK(v == 1.0);
        }
    }
}

TEST_CASE("prime reciprocal sums") {
    CHECK(prime_reciprocal_sum(2) == 0.5);
    double s = 0;
    int count = 0;
    for (int n = 2; n <= 100; ++n) {
        if (trial_prime(n)) {
            s += 1.0 / n;
            ++count;
        }
    }
    CHECK(count == 25);
    CHECK(prime_reciprocal_sum(100) == doctest::Approx(s).epsilon(1e-14));
    CHECK(std::abs(prime_reciprocal_sum(100) - 1.802817) <= 1e-5);
    double big = prime_reciprocal_sum(1e5);
    CHECK(std::abs(big - std::log(std::log(1e5)) - 0.27) <= 0.02);
    CHECK_THROWS_AS(prime_reciprocal_sum(1.5), ValidationError);
}

TEST_CASE("dirichlet sum: empty range") {
    auto f = constant_form(10);
    // x^3 < 2 cannot be built through make_smoothing (x >= 4); the sum itself
    // is still defined there
    SmoothingConfig tiny{1.25};
    CHECK(dirichlet_sum(f, 0.5, 0.0, tiny, WeightMode::plain) == cplx(0.0));
}

TEST_CASE("dirichlet sum: constant coefficients against a direct loop") {
    auto cfg = make_smoothing(20.0);
    auto f = constant_form(8000);
    for (auto mode : {WeightMode::plain, WeightMode::divided_by_log, WeightMode::log_xp}) {
        for (double t : {0.0, 3.7}) {
            cplx direct = 0.0;
            for (std::uint64_t n = 2; n < 8000; ++n) {
                double lam = von_mangoldt(n);
                if (lam == 0.0) continue;
                double w = lambda_x(n, cfg);
                if (mode == WeightMode::divided_by_log) w /= std::log(double(n));
                if (mode == WeightMode::log_xp) w *= std::log(20.0) + lam;
                direct += 3.0 * w * std::pow(double(n), cplx(-0.5, -t));
            }
            cplx got = dirichlet_sum(f, 0.5, t, cfg, mode);
            CHECK(std::abs(got - direct) <= 1e-10 * std::abs(direct));
        }
    }
}

TEST_CASE("dirichlet sum: zeta product against its Euler product derivative") {
    auto spec = make_eisenstein(0.5, -0.5, 0.0);
    auto f = eisenstein_form(spec, 8000);
    auto cfg = make_smoothing(20.0);
    cplx direct = 0.0;
    for (std::uint64_t n = 2; n < 8000; ++n) {
        double lam = von_mangoldt(n);
        if (lam == 0.0) continue;
        // -(d/ds) log prod_j (1 - p^(-s - i t_j))^(-1) at n = p^k carries log p * sum_j p^(-k(s + i t_j))
        for (double tj : spec.t) direct += lambda_x(n, cfg) * std::pow(double(n), cplx(-2.0, -tj));
    }
    cplx got = dirichlet_sum(f, 2.0, 0.0, cfg, WeightMode::plain);
    CHECK(std::abs(got - direct) <= 1e-8);
}

TEST_CASE("dirichlet sum: linearity over disjoint prime supports") {
    Gen g(41);
    std::vector<PrimeCoefficient> all, lo, hi;
    for (auto p : primes_up_to(8000)) {
        cplx a = g.complex_in_box(2.0);
        PrimeCoefficient c{p, {a, std::conj(a)}};
        all.push_back(c);
        (p % 4 == 1 ? lo : hi).push_back(c);
    }
    auto cfg = make_smoothing(20.0);
    LanglandsParameter mu;
    auto fa = make_form("a", mu, all), fl = make_form("l", mu, lo), fh = make_form("h", mu, hi);
    // the partial forms have coverage 1 but x^3 = 8000 needs a tail bound; use a large sigma
    for (double sigma : {4.0, 6.0}) {
        cplx s = dirichlet_sum(fa, sigma, 1.5, cfg, WeightMode::plain);
        auto pl = dirichlet_sum_ex(fl, sigma, 1.5, cfg, WeightMode::plain, 10.0);
        auto ph = dirichlet_sum_ex(fh, sigma, 1.5, cfg, WeightMode::plain, 10.0);
        CHECK(std::abs(s - (pl.value + ph.value)) <= 1e-12);
    }
}

TEST_CASE("dirichlet sum: beyond coverage") {
    auto f = constant_form(1000);
    auto cfg = make_smoothing(50.0);  // x^3 = 125000
    auto ok = dirichlet_sum_ex(f, 3.0, 0.0, cfg, WeightMode::plain);
    CHECK(ok.tail_bound > 0.0);
    CHECK(ok.tail_bound <= 1e-3);
    CHECK(ok.summed_to == 1008);  // 1009 is the first missing prime
    // the bound dominates the actual omitted part
    auto full = constant_form(125000);
    auto ref = dirichlet_sum(full, 3.0, 0.0, cfg, WeightMode::plain);
    CHECK(std::abs(ref - ok.value) <= ok.tail_bound);
    CHECK_THROWS_WITH_AS(dirichlet_sum(f, 0.5, 0.0, cfg, WeightMode::plain),
                         doctest::Contains("largest missing prime 124991"), MissingDataError);
}

TEST_CASE("sigma_x") {
    const double e10 = std::exp(10.0), e100 = std::exp(100.0);
    ZeroSet none = make_zero_set({}, CompletenessBox{0.4, 1e9});
    CHECK(sigma_x(none, 5.0, make_smoothing(e10)) == doctest::Approx(1.5));
    ZeroSet one = make_zero_set({{0.1, 7.0}}, CompletenessBox{0.1, 1e40});
    CHECK(sigma_x(one, 7.0, make_smoothing(e100)) == doctest::Approx(0.7));
    ZeroSet far = make_zero_set({{0.01, 17.0}}, CompletenessBox{0.4, 1e60});
    CHECK(sigma_x(far, 7.0, make_smoothing(e100)) == doctest::Approx(0.6));
    ZeroSet bare = make_zero_set({{0.01, 17.0}}, std::nullopt);
    CHECK_THROWS_AS(sigma_x(bare, 7.0, make_smoothing(e10)), MissingDataError);
    ZeroSet low = make_zero_set({}, CompletenessBox{0.4, 20});
    CHECK_THROWS_AS(sigma_x(low, 7.0, make_smoothing(e10)), MissingDataError);
}

TEST_CASE("sigma_x bounds and monotonicity") {
    Gen g(42);
    for (int i = 0; i < 200; ++i) {
        std::vector<Zero> zs;
        double maxb = 0;
        for (int k = 0; k < 20; ++k) {
            double b = g.uniform(-0.3, 0.3);
            maxb = std::max(maxb, std::abs(b));
            zs.push_back({b, g.uniform(-30, 30)});
        }
        auto z = make_zero_set(zs, CompletenessBox{0.3, 1e300});
        double t = g.uniform(-20, 20);
        for (double lx : {2.0, 3.0, 5.0, 8.0, 13.0}) {
            double s = sigma_x(z, t, make_smoothing(std::exp(lx)));
            CHECK(s >= 0.5 + 10 / lx - 1e-15);
            CHECK(s <= 0.5 + 2 * maxb + 10 / lx + 1e-15);
        }
    }
    // small offsets: the window x^{3|b|}/log x shrinks in x while 3|b| log x < 1
    for (int i = 0; i < 200; ++i) {
        std::vector<Zero> zs;
        for (int k = 0; k < 20; ++k) zs.push_back({g.uniform(-0.02, 0.02), g.uniform(-5, 5)});
        double t = g.uniform(-5, 5);
        double prev = INFINITY;
        for (double lx : {4.0, 6.0, 9.0, 13.0, 16.0}) {
            double s = sigma_x_core(zs, t, lx);
            CHECK(s <= prev);
            prev = s;
        }
    }
}

TEST_CASE("count_zeros") {
    auto z = make_zero_set({{0.1, 5}, {-0.2, 2}, {0.3, -8}}, CompletenessBox{0.3, 10});
    CHECK(count_zeros(z, 0.05, 6) == 1);
    CHECK(count_zeros(z, 0.3, 6) == 0);
    CHECK(count_zeros(z, 0.3, 1e9) == 0);
    CHECK_THROWS_AS(count_zeros(z, 0.05, 20), MissingDataError);
    auto bare = make_zero_set({{0.1, 5}}, std::nullopt);
    CHECK_THROWS_AS(count_zeros(bare, 0.0, 1), MissingDataError);

    std::vector<Zero> first100;
    for (int i = 0; i < 100; ++i) first100.push_back({0.0, zeta_ordinates()[i].gamma});
    auto zz = make_zero_set(first100, CompletenessBox{0.0, first100.back().gamma});
    CHECK(count_zeros(zz, 0.0, 1e9) == 0);
    CHECK(count_zeros(zz, -0.1, 50) == 10);
}

TEST_CASE("count_zeros monotonicity") {
    Gen g(43);
    std::vector<Zero> zs;
    for (int k = 0; k < 200; ++k) zs.push_back({g.uniform(-0.45, 0.45), g.uniform(-100, 100)});
    auto z = make_zero_set(zs, CompletenessBox{0.45, 100});
    for (int i = 0; i < 100; ++i) {
        double s1 = g.uniform(-0.5, 0.5), s2 = g.uniform(-0.5, 0.5);
        double h1 = g.uniform(0, 100), h2 = g.uniform(0, 100);
        if (s1 > s2) std::swap(s1, s2);
        if (h1 > h2) std::swap(h1, h2);
        CHECK(count_zeros(z, s1, h1) >= count_zeros(z, s2, h1));
        CHECK(count_zeros(z, s1, h1) <= count_zeros(z, s1, h2));
    }
}
