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

#include <fstream>
#include "json.hpp"

#include "argstat/familysim.hpp"
#include "argstat/primes.hpp"
#include "argstat/smoothing.hpp"
#include "support.hpp"

using namespace argstat;
using argstat::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

cplx trace(const std::array<cplx, 3>& a) { return a[0] + a[1] + a[2]; }

}  // namespace

TEST_CASE("rng streams are keyed by seed and index") {
    Rng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
    bool differ_c = false, differ_d = false;
    for (int i = 0; i < 100; ++i) {
        auto x = a.next();
        CHECK(x == b.next());
        differ_c |= x != c.next();
        differ_d |= x != d.next();
    }
    CHECK(differ_c);
    CHECK(differ_d);
    Rng u(9, 9);
    double lo = 1, hi = 0, s = 0;
    for (int i = 0; i < 100000; ++i) {
        double v = u.uniform();
        lo = std::min(lo, v), hi = std::max(hi, v), s += v;
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(std::abs(s / 100000 - 0.5) < 0.005);
}

TEST_CASE("poisson deviates") {
    Rng r(3, 0);
    for (double lam : {0.5, 7.0, 40.0}) {
        double s = 0, s2 = 0;
        const int N = 20000;
        for (int i = 0; i < N; ++i) {
            double k = static_cast<double>(poisson(r, lam));
            s += k, s2 += k * k;
        }
        double m = s / N, v = s2 / N - m * m;
        CHECK(std::abs(m - lam) < 5 * std::sqrt(lam / N));
        CHECK(std::abs(v - lam) < 0.1 * lam);
    }
    CHECK(poisson(r, 0.0) == 0);
}

TEST_CASE("vandermonde") {
    CHECK(vandermonde_sq(2 * kPi / 3, -2 * kPi / 3) == doctest::Approx(27.0).epsilon(1e-14));
    CHECK(std::abs(vandermonde_sq(0.3, 0.3)) < 1e-28);
    Gen g(2);
    for (int i = 0; i < 2000; ++i) {
        double v = vandermonde_sq(g.uniform(-kPi, kPi), g.uniform(-kPi, kPi));
        CHECK(v >= 0.0);
        CHECK(v <= kVandermondePeak * (1 + 1e-14));
    }
}

TEST_CASE("Weyl integration oracle") {
    auto E = [](auto f) { return weyl_expectation(f); };
    CHECK(std::abs(E([](const auto&) { return cplx(1.0); }) - 1.0) < 1e-14);
    CHECK(std::abs(E([](const auto& a) { return trace(a); })) < 1e-14);
    CHECK(std::abs(E([](const auto& a) { return std::norm(trace(a)); }) - 1.0) < 1e-14);
    CHECK(std::abs(E([](const auto& a) { return trace(a) * trace(a); })) < 1e-14);
    // 3 x 3 x 3 contains the trivial representation once
    CHECK(std::abs(E([](const auto& a) { return std::pow(trace(a), 3); }) - 1.0) < 1e-14);
    // 3 x 3bar = 1 + 8
    CHECK(std::abs(E([](const auto& a) { return std::pow(std::norm(trace(a)), 2); }) - 2.0) < 1e-13);
    // adjoint character |A|^2 - 1
    CHECK(std::abs(E([](const auto& a) { return std::norm(trace(a)) - 1.0; })) < 1e-14);
}

TEST_CASE("sampler matches the character oracle") {
    const int N = 1000000;
    Rng r(77, 0);
    cplx s1 = 0, s2 = 0;
    double sn = 0, sadj = 0, sadj2 = 0;
    for (int i = 0; i < N; ++i) {
        SatakeTriple t = sample_su3(r);
        if (i < 1000) {
            for (const auto& al : t.alpha) CHECK(std::abs(std::abs(al) - 1.0) < 1e-14);
            CHECK(std::abs(t.alpha[0] * t.alpha[1] * t.alpha[2] - 1.0) < 1e-14);
        }
        cplx a = trace(t.alpha);
        s1 += a;
        s2 += a * a;
        sn += std::norm(a);
        double adj = std::norm(a) - 1.0;
        sadj += adj;
        sadj2 += adj * adj;
    }
    const double rt = std::sqrt(static_cast<double>(N));
    CHECK(std::abs(s1.real() / N) <= 3 / rt);
    CHECK(std::abs(s1.imag() / N) <= 3 / rt);
    CHECK(std::abs(sn / N - 1.0) <= 5 / rt);
    CHECK(std::abs(s2 / static_cast<double>(N)) <= 5 / rt);
    // adjoint: oracle 0, standard error from the sample
    double m = sadj / N, se = std::sqrt((sadj2 / N - m * m) / N);
    CHECK(std::abs(m) <= 5 * se);
}

TEST_CASE("m_f") {
    CHECK(m_f({}, 3.0) == 0.0);
    auto primes = primes_up_to(500);
    std::vector<SatakeTriple> id;
    for (auto p : primes) id.push_back(SatakeTriple{{cplx(1), cplx(1), cplx(1)}, p});
    const double t = 2.5;
    double brute = 0.0;
    for (auto p : primes) brute += std::sin(-t * std::log(double(p))) / std::sqrt(double(p));
    CHECK(m_f(id, t) == doctest::Approx(3.0 / kPi * brute).epsilon(1e-13));

    Rng r(5, 5);
    std::vector<SatakeTriple> all, p1, p2;
    for (auto p : primes) {
        auto s = sample_su3(r);
        s.prime = p;
        all.push_back(s);
        (p % 4 == 1 ? p1 : p2).push_back(s);
    }
    CHECK(std::abs(m_f(all, t) - (m_f(p1, t) + m_f(p2, t))) < 1e-13);
}

TEST_CASE("constants") {
    CHECK(clt_constant(2) == doctest::Approx(1.0 / (2 * kPi * kPi)).epsilon(1e-15));
    CHECK(clt_constant(4) == doctest::Approx(12.0 / std::pow(2 * kPi, 4)).epsilon(1e-15));
    CHECK(clt_constant(3) == 0.0);
    CHECK(clt_constant(4) / (clt_constant(2) * clt_constant(2)) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(gaussian_cdf(0.0) == 0.5);
    // variance 1 / (2 pi^2): one standard deviation at 1/(pi sqrt 2)
    CHECK(gaussian_cdf(1 / (kPi * std::sqrt(2.0))) == doctest::Approx(0.8413447460685429).epsilon(1e-13));
}

TEST_CASE("gaussian distance") {
    std::vector<double> grid, cdf;
    for (int i = -200; i <= 200; ++i) {
        grid.push_back(i * 0.005);
        cdf.push_back(gaussian_cdf(i * 0.005));
    }
    CHECK(max_cdf_distance(cdf, cdf) <= 1e-12);

    // quantile sample: distance is exactly the half step 1/(2N)
    std::vector<double> q;
    const int N = 2000;
    for (int i = 0; i < N; ++i) {
        double target = (i + 0.5) / N, lo = -3, hi = 3;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (gaussian_cdf(mid) < target ? lo : hi) = mid;
        }
        q.push_back(0.5 * (lo + hi));
    }
    CHECK(gaussian_distance(q) == doctest::Approx(0.5 / N).epsilon(1e-6));
    std::vector<double> w(N, 2.5);
    CHECK(gaussian_distance(q, w) == doctest::Approx(gaussian_distance(q)).epsilon(1e-12));
}

TEST_CASE("sim config validation") {
    SimConfig c;
    c.sample_count = 99;
    CHECK_THROWS_AS(run_moments(c), ValidationError);
    c = SimConfig{};
    c.prime_bound = 5;
    CHECK_THROWS_AS(run_moments(c), ValidationError);
    c = SimConfig{};
    c.n_max = 5;
    CHECK_THROWS_AS(run_moments(c), ValidationError);
    c = SimConfig{};
    c.weighting = Weighting::spectral;
    CHECK_THROWS_AS(run_moments(c), ValidationError);
}

TEST_CASE("moments are deterministic under parallel execution") {
    SimConfig c;
    c.prime_bound = 2000;
    c.sample_count = 600;
    c.seed = 42;
    c.n_max = 6;
    c.threads = 1;
    auto a = run_moments(c);
    c.threads = 3;
    auto b = run_moments(c);
    REQUIRE(a.rows.size() == 6);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].empirical == b.rows[i].empirical);
        CHECK(a.rows[i].stderr_ == b.rows[i].stderr_);
        CHECK(a.rows[i].stderr_ > 0.0);
    }
    CHECK(a.samples == b.samples);
    CHECK(a.cdf_distance == b.cdf_distance);
    c.seed = 43;
    CHECK(run_moments(c).samples != a.samples);
}

TEST_CASE("even moments scale with the prime sum") {
    for (double pb : {1e3, 1e4, 1e5}) {
        SimConfig c;
        c.prime_bound = pb;
        c.sample_count = 3000;
        c.seed = 1234;
        c.n_max = 4;
        auto r = run_moments(c);
        double S = 0;
        for (auto p : primes_up_to(static_cast<std::uint64_t>(pb))) S += 1.0 / double(p);
        CHECK(r.sum_inv_p == doctest::Approx(S).epsilon(1e-13));
        CHECK(r.rows[1].empirical / r.rows[1].target == doctest::Approx(1.0).epsilon(0.15));
        CHECK(r.rows[3].empirical / r.rows[3].target == doctest::Approx(1.0).epsilon(0.15));
        CHECK(std::abs(r.rows[0].empirical) <= 4 * r.rows[0].stderr_);
        CHECK(std::abs(r.rows[2].empirical) <= 4 * r.rows[2].stderr_);
        CHECK_FALSE(r.pre_asymptotic);
    }
}

TEST_CASE("small prime bound is flagged") {
    SimConfig c;
    c.prime_bound = 10;
    c.sample_count = 1000;
    c.n_max = 2;
    auto r = run_moments(c);
    CHECK(r.pre_asymptotic);
    CHECK(r.prime_count == 4);
    CHECK(std::isfinite(r.cdf_distance));
}

TEST_CASE("spectral weighting") {
    const double n = std::sqrt(42.0), T = 30.0;
    LanglandsParameter mu0{{cplx(0, 5 * T / n), cplx(0, -T / n), cplx(0, -4 * T / n)}};
    SimConfig c;
    c.prime_bound = 500;
    c.sample_count = 800;
    c.n_max = 2;
    c.weighting = Weighting::spectral;
    c.spectral = make_test_function(mu0, 0.2, 1);
    auto r = run_moments(c);
    REQUIRE(r.weights.size() == 800);
    for (double w : r.weights) CHECK(w > 0.0);
    CHECK(r.effective_samples <= 800.0);
    CHECK(r.effective_samples > 10.0);
    CHECK_FALSE(r.notes.empty());
    CHECK(r.rows[1].empirical / r.rows[1].target == doctest::Approx(1.0).epsilon(0.4));
}

TEST_CASE("hecke case classifier") {
    CHECK(hecke_case_classifier({{2, {1, 0}}}) == HeckeCase::case1);
    CHECK(hecke_case_classifier({{2, {2, 2}}}) == HeckeCase::case2);
    CHECK(hecke_case_classifier({{2, {1, 1}}, {3, {1, 1}}}) == HeckeCase::case3);
    CHECK(hecke_case_classifier({{2, {3, 0}}}) == HeckeCase::case2);
    CHECK(hecke_case_classifier({{2, {1, 1}}, {3, {2, 0}}}) == HeckeCase::case1);
    CHECK_THROWS_AS(hecke_case_classifier({{2, {0, 0}}}), ValidationError);
}

TEST_CASE("symbolic moment audit") {
    auto a2 = symbolic_moment_audit(2, 1);
    const AuditRow* pair = nullptr;
    for (const auto& row : a2.rows) {
        if (row.kase == HeckeCase::case3) pair = &row;
    }
    REQUIRE(pair != nullptr);
    CHECK(pair->sequences == 2);
    CHECK(pair->expectation == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a2.case3_coefficient == doctest::Approx(clt_constant(2)).epsilon(1e-15));
    CHECK(a2.total_expectation == doctest::Approx(1.0 / (2 * kPi * kPi * 2)).epsilon(1e-12));

    auto a4 = symbolic_moment_audit(4, 2);
    CHECK(a4.case3_sequences_per_tuple == 12);
    CHECK(a4.case3_expected_per_tuple == 12);
    CHECK(a4.case3_ok);
    CHECK(a4.case1_ok);

    for (int n = 1; n <= 6; ++n) {
        for (int r = 1; r <= 3; ++r) {
            auto a = symbolic_moment_audit(n, r);
            CHECK(a.case1_ok);
            CHECK(a.case1_max <= 1e-6);
            CHECK(a.case3_ok);
            std::uint64_t seq = 0;
            for (const auto& row : a.rows) seq += row.sequences;
            std::uint64_t all = 1;
            for (int i = 0; i < n; ++i) all *= 2 * r;
            CHECK(seq == all);
        }
    }

    // odd order: the only surviving terms are case2 cubes
    auto a3 = symbolic_moment_audit(3, 1);
    CHECK(a3.case1_max <= 1e-6);
    double case2_mass = 0;
    for (const auto& row : a3.rows) {
        if (row.kase == HeckeCase::case2) case2_mass += std::abs(row.expectation);
    }
    CHECK(case2_mass == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(symbolic_moment_audit(7, 1), ValidationError);
}

TEST_CASE("zero-density harness") {
    ZeroEnsembleConfig z;
    z.zero_free = true;
    auto r = zero_density_harness(z, 1, 0);
    const double L = z.delta * z.logT / 3;
    double floor = std::pow(10 / L, 4) * std::pow(std::exp(L), 40 / L);
    CHECK(std::abs(r.lhs - floor) <= 1e-12 * floor);
    CHECK(r.zeros == 0);
    CHECK(r.holds);

    ZeroEnsembleConfig ref;
    std::ifstream in(std::string(ARGSTAT_DATA_DIR) + "/zero_density_constant.json");
    REQUIRE(in.good());
    auto j = nlohmann::json::parse(in);
    CHECK(j["config"]["theta"].get<double>() == ref.theta);
    CHECK(j["config"]["logT"].get<double>() == ref.logT);
    CHECK(j["config"]["H"].get<double>() == ref.H);
    const double frozen = j["c"].get<double>();
    CHECK(zero_density_constant(ref) == doctest::Approx(frozen).epsilon(1e-14));
    for (std::uint64_t d = 0; d < 100; ++d) {
        auto h = zero_density_harness(ref, 2026, d, frozen);
        CHECK(h.holds);
        CHECK(h.zeros > 0);
    }

    ZeroEnsembleConfig bad;
    bad.delta = 3 * bad.theta / (8.0 * bad.n * bad.k + 3) * 1.01;
    CHECK_THROWS_AS(zero_density_harness(bad, 1, 0), ValidationError);
}

TEST_CASE("synthetic zero sets respect the density bound") {
    ZeroEnsembleConfig z;
    z.theta = 0.2;
    z.logT = 30;
    z.delta = 0.05;
    z.H = 4;
    for (std::uint64_t f = 0; f < 20; ++f) {
        Rng r(11, f);
        auto zs = synthetic_zero_set(z, r);
        CHECK(!zs.empty());
        for (double s = 0.0; s < 0.5; s += 0.01) {
            std::size_t n = 0;
            for (const auto& q : zs) {
                CHECK(q.beta < 0.5);
                CHECK(std::abs(q.gamma) < z.H);
                if (q.beta > s) ++n;
            }
            CHECK(double(n) <= z.H * std::exp(-z.theta * z.logT * s) * z.logT);
        }
    }
    // the delta window keeps T^{-theta i/log x} below e^{-55} from bin 5 on, so
    // the bin terms only register for an enormous H
    ZeroEnsembleConfig big;
    big.theta = 0.9;
    big.delta = 0.2;
    big.logT = 300;
    big.H = 1e30;
    CHECK(zero_density_constant(big) > zero_free_floor(big) * std::pow(big.logT, 4));
    big.H = 1e3;
    CHECK(zero_density_constant(big) == zero_free_floor(big) * std::pow(big.logT, 4));
    big.forms = 4;
    CHECK(zero_density_harness(big, 3, 0).holds);
}
