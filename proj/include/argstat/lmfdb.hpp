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
#include <string>
#include <vector>

#include "argstat/io.hpp"

namespace argstat {

struct LmfdbOptions {
    std::string base_url;  // empty: ARGSTAT_LMFDB_URL
    std::string fixture;   // recorded response file; no network when set
    int degree = 3;
    int limit = 10;
    int attempts = 3;
    int backoff_ms = 200;  // doubled after each failed attempt
    int max_in_flight = 4;
    int timeout_s = 20;
};

struct IngestResult {
    std::vector<FormRecord> forms;  // sorted by label
    Warnings warnings;
    std::vector<std::string> errors;  // per-record mapping failures
    Json rejects = Json::array();     // Kim-Sarnak quarantine
};

inline constexpr double kRejectMargin = 1e-6;

// Maps one record of the source schema into a FormRecord. Primes lacking
// either coefficient are dropped with a warning.
FormRecord map_lmfdb_record(const Json& rec, Warnings& warnings);

IngestResult ingest_records(const Json& records);
IngestResult ingest_lmfdb(const LmfdbOptions& opts);

}  // namespace argstat
