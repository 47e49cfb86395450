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

#include "argstat/lmfdb.hpp"

#include "httplib.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace argstat {

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path below the origin, no trailing slash
};

Endpoint split_url(const std::string& url) {
    auto scheme = url.find("://");
    if (scheme == std::string::npos) throw ValidationError("lmfdb: base URL needs a scheme: " + url);
    auto path = url.find('/', scheme + 3);
    Endpoint e;
    e.origin = path == std::string::npos ? url : url.substr(0, path);
    e.prefix = path == std::string::npos ? "" : url.substr(path);
    while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    return e;
}

// GET with retries on transport errors and 5xx. A 4xx is final.
Json fetch_json(const Endpoint& ep, const std::string& path, const LmfdbOptions& o) {
    httplib::Client cli(ep.origin);
    cli.set_connection_timeout(o.timeout_s, 0);
    cli.set_read_timeout(o.timeout_s, 0);
    cli.set_follow_location(true);
    std::string last = "no attempt made";
    int wait = o.backoff_ms;
    for (int attempt = 1; attempt <= o.attempts; ++attempt) {
        auto res = cli.Get(ep.prefix + path);
        if (res && res->status == 200) {
            try {
                return Json::parse(res->body);
            } catch (const Json::parse_error& e) {
                last = std::string("unparsable body: ") + e.what();
            }
        } else if (res && res->status >= 400 && res->status < 500) {
            throw MissingDataError("lmfdb: GET " + path + " returned " + std::to_string(res->status));
        } else {
            last = res ? "HTTP " + std::to_string(res->status) : "transport error: " + httplib::to_string(res.error());
        }
        if (attempt < o.attempts) {
            std::this_thread::sleep_for(std::chrono::milliseconds(wait));
            wait *= 2;
        }
    }
    throw MissingDataError("lmfdb: GET " + path + " failed after " + std::to_string(o.attempts) + " attempts: " + last);
}

const Json& data_array(const Json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("data") || !j["data"].is_array()) {
        throw ValidationError("lmfdb: " + what + ": response lacks a data array");
    }
    return j["data"];
}

}  // namespace

FormRecord map_lmfdb_record(const Json& rec, Warnings& warnings) {
    if (!rec.is_object() || !rec.contains("label") || !rec["label"].is_string()) {
        throw ValidationError("lmfdb record: label missing");
    }
    const std::string label = rec["label"].get<std::string>();
    if (!rec.contains("spectral_parameters") || !rec["spectral_parameters"].is_array() ||
        rec["spectral_parameters"].size() != 3) {
        throw ValidationError(label + ": spectral_parameters: expected three [re, im] pairs");
    }
    SpectralParameter nu;
    for (int k = 0; k < 3; ++k) {
        nu.nu[k] = complex_from_json(rec["spectral_parameters"][k], label + ": spectral_parameters[" + std::to_string(k) + "]");
    }
    LanglandsParameter mu = nu_to_mu(nu);

    std::vector<PrimeCoefficient> coeffs;
    if (rec.contains("hecke_eigenvalues")) {
        const Json& h = rec["hecke_eigenvalues"];
        if (!h.is_object()) throw ValidationError(label + ": hecke_eigenvalues: expected an object keyed by prime");
        for (auto it = h.begin(); it != h.end(); ++it) {
            const std::string path = label + ": hecke_eigenvalues[" + it.key() + "]";
            std::uint64_t p = 0;
            try {
                std::size_t used = 0;
                p = std::stoull(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ValidationError(path + ": key is not a decimal integer");
            }
            const Json& v = it.value();
            bool has1 = v.is_object() && v.contains("A1p") && !v["A1p"].is_null();
            bool has2 = v.is_object() && v.contains("Ap1") && !v["Ap1"].is_null();
            if (!has1 || !has2) {
                warnings.push_back(label + ": prime " + it.key() + " dropped (missing " + (has1 ? "A(p,1)" : "A(1,p)") + ")");
                continue;
            }
            coeffs.push_back({p, {complex_from_json(v["A1p"], path + ".A1p"), complex_from_json(v["Ap1"], path + ".Ap1")}});
        }
    }
    double normalization = 1.0;
    if (rec.contains("normalization") && rec["normalization"].is_number()) normalization = rec["normalization"].get<double>();
    return make_form(label, mu, std::move(coeffs), std::nullopt, normalization);
}

IngestResult ingest_records(const Json& records) {
    if (!records.is_array()) throw ValidationError("lmfdb: records must be an array");
    IngestResult out;
    for (const auto& rec : records) {
        std::string label = rec.is_object() && rec.contains("label") && rec["label"].is_string()
                                ? rec["label"].get<std::string>()
                                : std::string("<unlabeled>");
        // Kim-Sarnak screen before any other validation
        try {
            if (rec.is_object() && rec.contains("spectral_parameters") && rec["spectral_parameters"].is_array() &&
                rec["spectral_parameters"].size() == 3) {
                SpectralParameter nu;
                for (int k = 0; k < 3; ++k) nu.nu[k] = complex_from_json(rec["spectral_parameters"][k], label);
                auto mu = nu_to_mu(nu);
                double worst = 0.0;
                for (const auto& m : mu.mu) worst = std::max(worst, std::abs(m.real()));
                if (worst > kKimSarnak + kRejectMargin) {
                    out.rejects.push_back({{"label", label},
                                           {"reason", "max |Re mu_j| = " + std::to_string(worst) + " exceeds 5/14"},
                                           {"record", rec}});
                    continue;
                }
            }
        } catch (const ValidationError&) {
            // reported by the mapping below
        }
        try {
            out.forms.push_back(map_lmfdb_record(rec, out.warnings));
        } catch (const ValidationError& e) {
            out.errors.push_back(e.what());
        }
    }
    std::stable_sort(out.forms.begin(), out.forms.end(),
                     [](const FormRecord& a, const FormRecord& b) { return a.label < b.label; });
    return out;
}

IngestResult ingest_lmfdb(const LmfdbOptions& o) {
    if (o.degree != 3) throw ValidationError("lmfdb: only degree 3 is supported");
    if (o.limit < 1) throw ValidationError("lmfdb: limit must be positive");
    if (!o.fixture.empty()) {
        Json j;
        try {
            j = Json::parse(read_file(o.fixture));
        } catch (const Json::parse_error& e) {
            throw ValidationError(std::string("lmfdb fixture: malformed JSON: ") + e.what());
        }
        Json recs = data_array(j, "fixture");
        if (recs.size() > static_cast<std::size_t>(o.limit)) recs.erase(recs.begin() + o.limit, recs.end());
        return ingest_records(recs);
    }
    std::string base = o.base_url;
    if (base.empty()) {
        const char* env = std::getenv("ARGSTAT_LMFDB_URL");
        if (!env || !*env) throw MissingDataError("lmfdb: ARGSTAT_LMFDB_URL is not set and no fixture given");
        base = env;
    }
    const Endpoint ep = split_url(base);
    Json listing = fetch_json(ep,
                              "/api/gl3_maass/?degree=" + std::to_string(o.degree) + "&_limit=" +
                                  std::to_string(o.limit) + "&_fields=label&_format=json",
                              o);
    std::vector<std::string> labels;
    for (const auto& r : data_array(listing, "listing")) {
        if (r.is_object() && r.contains("label") && r["label"].is_string()) labels.push_back(r["label"].get<std::string>());
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() > static_cast<std::size_t>(o.limit)) labels.resize(static_cast<std::size_t>(o.limit));

    std::vector<Json> records(labels.size());
    std::vector<std::string> failures(labels.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < labels.size(); i = next++) {
            try {
                Json r = fetch_json(ep, "/api/gl3_maass/?label=" + httplib::detail::encode_query_param(labels[i]) +
                                            "&_format=json",
                                    o);
                const Json& d = data_array(r, labels[i]);
                if (d.empty()) throw MissingDataError("lmfdb: no record for " + labels[i]);
                records[i] = d[0];
            } catch (const Error& e) {
                failures[i] = labels[i] + ": " + e.what();
            }
        }
    };
    const int lanes = std::max(1, std::min({o.max_in_flight, 4, static_cast<int>(labels.size())}));
    std::vector<std::thread> pool;
    for (int w = 0; w < lanes; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    Json recs = Json::array();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (failures[i].empty()) recs.push_back(records[i]);
    }
    IngestResult out = ingest_records(recs);
    for (const auto& f : failures) {
        if (!f.empty()) out.errors.push_back(f);
    }
    return out;
}

}  // namespace argstat
