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

// Build-time generator for the zeta ordinate table. Locates sign changes of
// Hardy's Z on (0, t_max], then confirms completeness by matching the count
// below each midpoint against theta(t)/pi + 1 + S(t).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>

#include "argstat/zeta.hpp"

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: gen_zeta_zeros <t_max> <out.cpp> <out.csv>\n");
        return 1;
    }
    const double t_max = std::strtod(argv[1], nullptr);
    auto zeros = argstat::locate_zeta_ordinates(t_max, 0.02);

    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (zeros[i].residual > 1e-9) {
            std::fprintf(stderr, "residual %.3g at ordinate %zu\n", zeros[i].residual, i);
            return 1;
        }
        double next = i + 1 < zeros.size() ? zeros[i + 1].gamma : t_max;
        double mid = 0.5 * (zeros[i].gamma + next);
        if (i + 1 == zeros.size() && t_max - zeros[i].gamma < 0.01) continue;
        double formula = argstat::riemann_siegel_theta(mid) / std::numbers::pi + 1.0 +
                         argstat::zeta_argument(mid, 0.05).arg / std::numbers::pi;
        if (std::abs(formula - double(i + 1)) > 1e-6) {
            std::fprintf(stderr, "count mismatch at t=%.6f: formula %.9f, found %zu\n", mid, formula, i + 1);
            return 1;
        }
    }

    FILE* cpp = std::fopen(argv[2], "w");
    FILE* csv = std::fopen(argv[3], "w");
    if (!cpp || !csv) return 1;
    std::fprintf(cpp, "// Generated by gen_zeta_zeros. Do not edit.\n");
    std::fprintf(cpp, "#include \"argstat/zeta.hpp\"\n\nnamespace argstat {\n\n");
    std::fprintf(cpp, "const std::vector<ZetaOrdinate>& zeta_ordinates() {\n");
    std::fprintf(cpp, "    static const std::vector<ZetaOrdinate> table = {\n");
    std::fprintf(csv, "index,gamma,residual\n");
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        std::fprintf(cpp, "        {%.17g, %.3g},\n", zeros[i].gamma, zeros[i].residual);
        std::fprintf(csv, "%zu,%.17g,%.3g\n", i + 1, zeros[i].gamma, zeros[i].residual);
    }
    std::fprintf(cpp, "    };\n    return table;\n}\n\n");
    std::fprintf(cpp, "double zeta_table_height() { return %.17g; }\n\n}  // namespace argstat\n", t_max);
    std::fclose(cpp);
    std::fclose(csv);
    return 0;
}
