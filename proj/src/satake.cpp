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

#include "argstat/satake.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace argstat {

namespace {

cplx eval_poly(cplx x, cplx a, cplx b) { return ((x - a) * x + b) * x - 1.0; }
cplx eval_dpoly(cplx x, cplx a, cplx b) { return (3.0 * x - 2.0 * a) * x + b; }

double sym_residual(const std::array<cplx, 3>& r, cplx a, cplx b) {
    cplx e1 = r[0] + r[1] + r[2];
    cplx e2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
    cplx e3 = r[0] * r[1] * r[2];
    return std::max({std::abs(e1 - a), std::abs(e2 - b), std::abs(e3 - 1.0)});
}

void clean(cplx& z) {
    if (std::abs(z.imag()) <= 1e-15 * std::abs(z)) z = cplx(z.real(), 0.0);
    if (std::abs(z.real()) <= 1e-15 * std::abs(z)) z = cplx(0.0, z.imag());
}

// Replace near-coincident eigenvalues by the exact multiple root they
// approximate: a triple root is a/3, a double root is the critical point of
// the cubic nearest the pair, and the third root follows from e3 = 1.
bool merge_clusters(std::array<cplx, 3>& r, cplx a, cplx b) {
    auto close = [](cplx u, cplx v) { return std::abs(u - v) <= 1e-4 * std::max(1.0, std::abs(u)); };
    bool c01 = close(r[0], r[1]), c02 = close(r[0], r[2]), c12 = close(r[1], r[2]);
    int links = int(c01) + int(c02) + int(c12);
    if (links == 0) return false;
    if (links >= 2) {
        cplx m = a / 3.0;
        r = {m, m, m};
        return true;
    }
    int i = c01 ? 0 : (c02 ? 0 : 1);
    int j = c01 ? 1 : (c02 ? 2 : 2);
    int k = 3 - i - j;
    cplx mean = 0.5 * (r[i] + r[j]);
    // p'(x) = 3x^2 - 2ax + b
    cplx disc = std::sqrt(a * a - 3.0 * b);
    cplx c1 = (a + disc) / 3.0, c2 = (a - disc) / 3.0;
    cplx d = std::abs(c1 - mean) <= std::abs(c2 - mean) ? c1 : c2;
    if (d == 0.0) return false;
    r[i] = d;
    r[j] = d;
    r[k] = 1.0 / (d * d);
    return true;
}

}  // namespace

void canonical_order(std::array<cplx, 3>& r) {
    std::sort(r.begin(), r.end(), [](cplx u, cplx v) { return std::abs(u) > std::abs(v); });
    auto same = [](cplx u, cplx v) {
        return std::abs(std::abs(u) - std::abs(v)) <= 1e-9 * std::max(1.0, std::abs(u));
    };
    for (int pass = 0; pass < 3; ++pass) {
        for (int i = 0; i + 1 < 3; ++i) {
            if (same(r[i], r[i + 1]) && std::arg(r[i]) > std::arg(r[i + 1])) std::swap(r[i], r[i + 1]);
        }
    }
}

SatakeSolution solve_satake(cplx a, cplx b, std::uint64_t p) {
    Eigen::Matrix3cd comp;
    comp << a, -b, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
    std::array<cplx, 3> raw{es.eigenvalues()[0], es.eigenvalues()[1], es.eigenvalues()[2]};
    for (auto& x : raw) {
        for (int it = 0; it < 3; ++it) {
            cplx d = eval_dpoly(x, a, b);
            if (std::abs(d) < 1e-8) break;
            cplx y = x - eval_poly(x, a, b) / d;
            if (std::abs(eval_poly(y, a, b)) >= std::abs(eval_poly(x, a, b))) break;
            x = y;
        }
    }
    std::array<cplx, 3> roots = raw;
    double res = sym_residual(raw, a, b);
    std::array<cplx, 3> merged = raw;
    if (merge_clusters(merged, a, b)) {
        double mres = sym_residual(merged, a, b);
        if (mres <= 1e-12 || mres <= res) {
            roots = merged;
            res = mres;
        }
    }
    for (auto& z : roots) clean(z);
    canonical_order(roots);

    SatakeSolution s;
    s.triple.alpha = roots;
    s.triple.prime = p;
    s.residual = sym_residual(roots, a, b);
    double bound = std::pow(static_cast<double>(p), kKimSarnak);
    for (const auto& z : roots) {
        if (std::abs(z) > bound * (1.0 + 1e-6)) s.kim_sarnak = false;
    }
    if (!s.kim_sarnak) {
        std::ostringstream os;
        os << "p=" << p << ": Satake root modulus exceeds p^(5/14)";
        s.warnings.push_back(os.str());
    }
    return s;
}

std::vector<cplx> power_sums(cplx a, cplx b, int k_max) {
    if (k_max < 1) throw ValidationError("power_sums: k_max must be >= 1");
    std::vector<cplx> c(static_cast<std::size_t>(k_max));
    c[0] = a;
    if (k_max >= 2) c[1] = a * a - 2.0 * b;
    if (k_max >= 3) c[2] = a * a * a - 3.0 * a * b + 3.0;
    for (int k = 4; k <= k_max; ++k) {
        c[k - 1] = a * c[k - 2] - b * c[k - 3] + c[k - 4];
    }
    return c;
}

cplx root_power_sum(const SatakeTriple& t, int k) {
    cplx s = 0.0;
    for (const auto& z : t.alpha) s += std::pow(z, k);
    return s;
}

bool check_kim_sarnak(const SatakeTriple& t) {
    double bound = std::pow(static_cast<double>(t.prime), kKimSarnak) * (1.0 + 1e-9);
    return std::all_of(t.alpha.begin(), t.alpha.end(), [&](cplx z) { return std::abs(z) <= bound; });
}

}  // namespace argstat
