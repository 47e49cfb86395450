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

#include <string>
#include <vector>

#include "json.hpp"

#include "argstat/familysim.hpp"
#include "argstat/forms.hpp"
#include "argstat/specweight.hpp"
#include "argstat/zeros.hpp"

namespace argstat {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Sorted keys, shortest round-trip doubles, two-space indent, trailing LF.
std::string canonical_json(const Json& j);

Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j, const std::string& path);

Json form_to_json(const FormRecord& f);
// Errors name the record label and the field path.
FormRecord form_from_json(const Json& j);

std::string serialize_form_file(const std::vector<FormRecord>& forms);

struct FormFileParse {
    std::vector<FormRecord> forms;
    std::vector<std::string> errors;  // per-record, lenient mode only
};

// Throws on the first invalid record unless lenient; a schema mismatch is
// always fatal.
FormFileParse parse_form_file_text(const std::string& text, bool lenient = false);
FormFileParse parse_form_file(const std::string& path, bool lenient = false);

// Header "beta,gamma"; "# complete_in_box B H" precedes it when certified.
std::string zero_set_csv(const ZeroSet& zs);
ZeroSet parse_zero_set_csv(const std::string& text);

Json test_function_json(const TestFunctionConfig& cfg);
Json sim_config_json(const SimConfig& cfg);
Json moment_report_json(const MomentReport& rep);
std::string moment_report_csv(const MomentReport& rep);
std::string histogram_csv(const MomentReport& rep, int bins = 40);

std::string moment_bars_svg(const MomentReport& rep);
// empirical CDF of M / sqrt(sum 1/p) against gaussian_cdf
std::string cdf_svg(const MomentReport& rep);

std::string sha256_hex(const std::string& data);

std::string read_file(const std::string& path);
// Throws Error(failure) when the path cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace argstat
