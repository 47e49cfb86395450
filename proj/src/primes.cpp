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

#include "argstat/primes.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "argstat/error.hpp"
#include "argstat/parallel.hpp"

namespace argstat {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ARGSTAT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

constexpr std::uint64_t kSegment = 1u << 20;

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& base,
                   std::vector<std::uint64_t>& out) {
    if (hi < lo) return;
    std::vector<char> mark(hi - lo + 1, 1);
    for (std::uint32_t p : base) {
        std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
        if (pp > hi) break;
        std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
        for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = 0;
    }
    for (std::uint64_t v = lo; v <= hi; ++v) {
        if (v >= 2 && mark[v - lo]) out.push_back(v);
    }
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    if (hi > kPrimeCap) {
        throw ValidationError("prime enumeration above " + std::to_string(kPrimeCap) +
                              " is not supported (requested " + std::to_string(hi) + ")");
    }
    std::vector<std::uint64_t> out;
    if (hi < 2 || hi < lo) return out;
    auto base = small_primes(isqrt(hi));
    for (std::uint64_t s = lo; s <= hi; s += kSegment) {
        sieve_segment(s, std::min(hi, s + kSegment - 1), base, out);
    }
    return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n, unsigned threads) {
    if (n > kPrimeCap) {
        throw ValidationError("prime enumeration above " + std::to_string(kPrimeCap) +
                              " is not supported (requested " + std::to_string(n) + ")");
    }
    if (n < 2) return {};
    auto base = small_primes(isqrt(n));
    std::size_t segments = static_cast<std::size_t>(n / kSegment + 1);
    std::vector<std::vector<std::uint64_t>> parts(segments);
    parallel_chunks(segments, segments, threads, [&](std::size_t c, std::size_t, std::size_t) {
        std::uint64_t lo = c * kSegment;
        std::uint64_t hi = std::min<std::uint64_t>(n, lo + kSegment - 1);
        sieve_segment(lo, hi, base, parts[c]);
    });
    std::vector<std::uint64_t> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t largest_prime_le(std::uint64_t n) {
    for (std::uint64_t v = n; v >= 2; --v) {
        if (is_prime(v)) return v;
    }
    return 0;
}

}  // namespace argstat
