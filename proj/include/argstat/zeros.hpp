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

#include <optional>
#include <vector>

namespace argstat {

// rho = 1/2 + beta + i*gamma
struct Zero {
    double beta = 0.0;
    double gamma = 0.0;
    bool operator==(const Zero&) const = default;
};

// Every zero with |beta| <= B and |gamma| <= H is listed, and the provider
// asserts there are none with |beta| > B.
struct CompletenessBox {
    double B = 0.0;
    double H = 0.0;
    bool operator==(const CompletenessBox&) const = default;
};

struct ZeroSet {
    std::vector<Zero> zeros;
    std::optional<CompletenessBox> complete_in_box;
    bool operator==(const ZeroSet&) const = default;
};

// Sorts by (gamma, beta) and checks |beta| < 1/2.
ZeroSet make_zero_set(std::vector<Zero> zeros, std::optional<CompletenessBox> box);

}  // namespace argstat
