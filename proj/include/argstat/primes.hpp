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

#pragma once

#include <cstdint>
#include <vector>

namespace argstat {

inline constexpr std::uint64_t kPrimeCap = 100'000'000ULL;

// Primes in [lo, hi]. hi must not exceed kPrimeCap.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// Primes <= n, sieved in fixed-size segments. The output does not depend on
// `threads`.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n, unsigned threads = 1);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

// Largest prime <= n, or 0 if n < 2.
std::uint64_t largest_prime_le(std::uint64_t n);

}  // namespace argstat
