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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace argstat {

using cplx = std::complex<double>;

// Numeric values double as CLI exit codes and C API status codes.
enum class Status : int {
    ok = 0,
    failure = 1,
    validation = 2,
    missing_data = 3,
    numerical = 4,
};

class Error : public std::runtime_error {
public:
    Error(Status status, const std::string& what)
        : std::runtime_error(what), status_(status) {}
    Status status() const noexcept { return status_; }

private:
    Status status_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what)
        : Error(Status::validation, what) {}
};

class MissingDataError : public Error {
public:
    explicit MissingDataError(const std::string& what)
        : Error(Status::missing_data, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what)
        : Error(Status::numerical, what) {}
};

using Warnings = std::vector<std::string>;

}  // namespace argstat
