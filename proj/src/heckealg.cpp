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

#include "argstat/heckealg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace argstat {

void HeckeCombination::add(HeckeIndex kl, const BigInt& c) {
    if (kl.first < 0 || kl.second < 0) throw ValidationError("HeckeCombination: negative index");
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(kl, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

HeckeCombination pieri_multiply(const HeckeCombination& c) {
    HeckeCombination out;
    for (const auto& [kl, coef] : c.terms) {
        auto [k, l] = kl;
        out.add({k, l + 1}, coef);
        if (k >= 1) out.add({k - 1, l}, coef);
        if (l >= 1) out.add({k + 1, l - 1}, coef);
    }
    return out;
}

HeckeCombination expand_power(int n) {
    if (n < 0 || n > kMaxExpandPower) {
        throw ValidationError("expand_power: n must lie in [0, " + std::to_string(kMaxExpandPower) + "]");
    }
    HeckeCombination c;
    c.add({0, 0}, 1);
    for (int i = 0; i < n; ++i) c = pieri_multiply(c);
    return c;
}

SupportSet support_set(int n) {
    if (n < 0) throw ValidationError("support_set: n must be nonnegative");
    SupportSet s{n, {}};
    for (int n1 = 0; 3 * n1 <= n; ++n1) {
        for (int n2 = n1; n1 + 2 * n2 <= n; ++n2) {
            int n3 = n - n1 - n2;
            if (n3 >= n2) s.pairs.insert({n2 - n1, n3 - n2});
        }
    }
    return s;
}

BigInt basis_dimension(int k, int l) {
    BigInt d = BigInt(k + 1) * (l + 1) * (k + l + 2);
    return d / 2;
}

bool dimension_check(int n) {
    if (n < 0 || n > kMaxExpandPower) return false;
    auto c = expand_power(n);
    BigInt total = 0;
    for (const auto& [kl, coef] : c.terms) total += coef * basis_dimension(kl.first, kl.second);
    BigInt pow3 = 1;
    for (int i = 0; i < n; ++i) pow3 *= 3;
    return total == pow3;
}

namespace {

cplx det3(const cplx m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double min_separation(const SatakeTriple& s) {
    const auto& a = s.alpha;
    return std::min({std::abs(a[0] - a[1]), std::abs(a[0] - a[2]), std::abs(a[1] - a[2])});
}

cplx bialternant(int l1, int l2, const SatakeTriple& s) {
    const int ex[3] = {l1 + 2, l2 + 1, 0};
    cplx num[3][3], den[3][3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            num[i][j] = std::pow(s.alpha[i], ex[j]);
            den[i][j] = std::pow(s.alpha[i], 2 - j);
        }
    }
    return det3(num) / det3(den);
}

// Jacobi-Trudi: s_(l1,l2,0) = h_l1 h_l2 - h_(l1+1) h_(l2-1), exact at
// repeated roots.
cplx jacobi_trudi(int l1, int l2, const SatakeTriple& s) {
    const auto& a = s.alpha;
    cplx e1 = a[0] + a[1] + a[2];
    cplx e2 = a[0] * a[1] + a[0] * a[2] + a[1] * a[2];
    cplx e3 = a[0] * a[1] * a[2];
    std::vector<cplx> h(static_cast<std::size_t>(l1 + 2), 0.0);
    h[0] = 1.0;
    for (int k = 1; k <= l1 + 1; ++k) {
        cplx v = e1 * h[k - 1];
        if (k >= 2) v -= e2 * h[k - 2];
        if (k >= 3) v += e3 * h[k - 3];
        h[k] = v;
    }
    cplx lower = l2 >= 1 ? h[l2 - 1] : cplx(0.0);
    return h[l1] * h[l2] - h[l1 + 1] * lower;
}

std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

}  // namespace

cplx basis_value(int k, int l, const SatakeTriple& s) {
    if (k < 0 || l < 0) throw ValidationError("basis_value: negative index");
    if (k == 0 && l == 0) return 1.0;
    const int l1 = k + l, l2 = k;
    if (min_separation(s) >= 1e-3) return bialternant(l1, l2, s);
    return jacobi_trudi(l1, l2, s);
}

cplx evaluate_combination(const HeckeCombination& c, const SatakeTriple& s) {
    cplx total = 0.0;
    for (const auto& [kl, coef] : c.terms) {
        total += coef.convert_to<double>() * basis_value(kl.first, kl.second, s);
    }
    return total;
}

cplx composite_coefficient(const FormRecord& f, std::uint64_t m, std::uint64_t n) {
    if (m == 0 || n == 0) throw ValidationError("composite_coefficient: m and n must be positive");
    auto fm = factor(m), fn = factor(n);
    std::map<std::uint64_t, std::pair<int, int>> exps;
    for (auto [p, e] : fm) exps[p].first = e;
    for (auto [p, e] : fn) exps[p].second = e;
    std::vector<std::uint64_t> missing;
    for (const auto& [p, kl] : exps) {
        if (!f.coefficient(p)) missing.push_back(p);
    }
    if (!missing.empty()) {
        std::string list;
        for (auto p : missing) list += (list.empty() ? "" : ",") + std::to_string(p);
        throw MissingDataError(f.label + ": coefficients missing at primes " + list);
    }
    cplx value = 1.0;
    for (const auto& [p, kl] : exps) {
        const HeckePair* c = f.coefficient(p);
        auto sol = solve_satake(c->a1p, c->ap1, p);
        value *= basis_value(kl.first, kl.second, sol.triple);
    }
    return value;
}

}  // namespace argstat
