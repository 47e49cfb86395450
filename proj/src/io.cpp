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

#include "argstat/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace argstat {

namespace {

std::string num(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string record_context(const Json& j, std::size_t index) {
    std::string s = "record[" + std::to_string(index) + "]";
    if (j.is_object() && j.contains("label") && j["label"].is_string()) s += " (" + j["label"].get<std::string>() + ")";
    return s;
}

double number_at(const Json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path + ": expected a number");
    return j.get<double>();
}

std::string caption(const MomentReport& rep) {
    const auto& c = rep.config;
    std::ostringstream os;
    os << "prime_bound=" << num(c.prime_bound) << " t=" << num(c.t) << " N=" << c.sample_count
       << " seed=" << c.seed << (c.weighting == Weighting::spectral ? " weighting=spectral" : " weighting=uniform");
    return os.str();
}

}  // namespace

std::string canonical_json(const Json& j) { return j.dump(2) + "\n"; }

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw ValidationError(path + ": expected [re, im]");
    return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

Json form_to_json(const FormRecord& f) {
    Json j;
    j["label"] = f.label;
    j["mu"] = Json::array({complex_to_json(f.mu.mu[0]), complex_to_json(f.mu.mu[1]), complex_to_json(f.mu.mu[2])});
    j["normalization"] = f.normalization;
    Json c = Json::object();
    for (const auto& pc : f.coefficients) {
        c[std::to_string(pc.p)] = {{"a1p", complex_to_json(pc.a.a1p)}, {"ap1", complex_to_json(pc.a.ap1)}};
    }
    j["coefficients"] = c;
    if (f.zeros) {
        Json z;
        Json list = Json::array();
        for (const auto& q : f.zeros->zeros) list.push_back(Json::array({q.beta, q.gamma}));
        z["list"] = list;
        if (f.zeros->complete_in_box) {
            z["complete_in_box"] = {{"B", f.zeros->complete_in_box->B}, {"H", f.zeros->complete_in_box->H}};
        }
        j["zeros"] = z;
    }
    return j;
}

FormRecord form_from_json(const Json& j) {
    if (!j.is_object()) throw ValidationError("record: expected an object");
    if (!j.contains("label") || !j["label"].is_string()) throw ValidationError("<unlabeled>: label: missing or not a string");
    const std::string label = j["label"].get<std::string>();
    if (!j.contains("mu")) throw ValidationError(label + ": mu: missing");
    const Json& jm = j["mu"];
    if (!jm.is_array() || jm.size() != 3) throw ValidationError(label + ": mu: expected three [re, im] pairs");
    LanglandsParameter mu;
    for (int k = 0; k < 3; ++k) mu.mu[k] = complex_from_json(jm[k], label + ": mu[" + std::to_string(k) + "]");

    std::vector<PrimeCoefficient> coeffs;
    if (j.contains("coefficients")) {
        const Json& jc = j["coefficients"];
        if (!jc.is_object()) throw ValidationError(label + ": coefficients: expected an object keyed by prime");
        for (auto it = jc.begin(); it != jc.end(); ++it) {
            const std::string path = label + ": coefficients[" + it.key() + "]";
            std::uint64_t p = 0;
            auto r = std::from_chars(it.key().data(), it.key().data() + it.key().size(), p);
            if (r.ec != std::errc() || r.ptr != it.key().data() + it.key().size()) {
                throw ValidationError(path + ": key is not a decimal integer");
            }
            const Json& v = it.value();
            if (!v.is_object() || !v.contains("a1p") || !v.contains("ap1")) {
                throw ValidationError(path + ": expected {\"a1p\", \"ap1\"}");
            }
            coeffs.push_back({p, {complex_from_json(v["a1p"], path + ".a1p"), complex_from_json(v["ap1"], path + ".ap1")}});
        }
    }
    double normalization = 1.0;
    if (j.contains("normalization")) normalization = number_at(j["normalization"], label + ": normalization");

    std::optional<ZeroSet> zeros;
    if (j.contains("zeros") && !j["zeros"].is_null()) {
        const Json& jz = j["zeros"];
        if (!jz.is_object() || !jz.contains("list") || !jz["list"].is_array()) {
            throw ValidationError(label + ": zeros: expected {\"list\": [[beta, gamma], ...]}");
        }
        ZeroSet zs;
        std::size_t i = 0;
        for (const auto& q : jz["list"]) {
            const std::string path = label + ": zeros.list[" + std::to_string(i++) + "]";
            if (!q.is_array() || q.size() != 2) throw ValidationError(path + ": expected [beta, gamma]");
            zs.zeros.push_back({number_at(q[0], path), number_at(q[1], path)});
        }
        if (jz.contains("complete_in_box")) {
            const Json& b = jz["complete_in_box"];
            if (!b.is_object() || !b.contains("B") || !b.contains("H")) {
                throw ValidationError(label + ": zeros.complete_in_box: expected {\"B\", \"H\"}");
            }
            zs.complete_in_box = CompletenessBox{number_at(b["B"], label + ": zeros.complete_in_box.B"),
                                                 number_at(b["H"], label + ": zeros.complete_in_box.H")};
        }
        try {
            zs = make_zero_set(std::move(zs.zeros), zs.complete_in_box);
        } catch (const ValidationError& e) {
            throw ValidationError(label + ": zeros: " + e.what());
        }
        zeros = std::move(zs);
    }
    return make_form(label, mu, std::move(coeffs), std::move(zeros), normalization);
}

std::string serialize_form_file(const std::vector<FormRecord>& forms) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    Json arr = Json::array();
    for (const auto& f : forms) arr.push_back(form_to_json(f));
    j["forms"] = arr;
    return canonical_json(j);
}

FormFileParse parse_form_file_text(const std::string& text, bool lenient) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("form file: malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema_version")) throw ValidationError("form file: schema_version missing");
    if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion) {
        throw ValidationError("form file: schema_version mismatch (expected " + std::to_string(kSchemaVersion) + ")");
    }
    if (!j.contains("forms") || !j["forms"].is_array()) throw ValidationError("form file: forms must be an array");
    FormFileParse out;
    std::size_t i = 0;
    for (const auto& rec : j["forms"]) {
        try {
            out.forms.push_back(form_from_json(rec));
        } catch (const ValidationError& e) {
            std::string msg = record_context(rec, i) + ": " + e.what();
            if (!lenient) throw ValidationError(msg);
            out.errors.push_back(msg);
        }
        ++i;
    }
    return out;
}

FormFileParse parse_form_file(const std::string& path, bool lenient) {
    return parse_form_file_text(read_file(path), lenient);
}

std::string zero_set_csv(const ZeroSet& zs) {
    std::string s;
    if (zs.complete_in_box) {
        s += "# complete_in_box " + num(zs.complete_in_box->B) + " " + num(zs.complete_in_box->H) + "\n";
    }
    s += "beta,gamma\n";
    for (const auto& z : zs.zeros) s += num(z.beta) + "," + num(z.gamma) + "\n";
    return s;
}

ZeroSet parse_zero_set_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<CompletenessBox> box;
    std::vector<Zero> zeros;
    bool header = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "zero csv line " + std::to_string(lineno);
        if (line[0] == '#') {
            std::istringstream c(line.substr(1));
            std::string tag;
            double B = 0, H = 0;
            if (c >> tag && tag == "complete_in_box") {
                if (!(c >> B >> H)) throw ValidationError(where + ": complete_in_box needs B and H");
                box = CompletenessBox{B, H};
            }
            continue;
        }
        if (!header) {
            if (line != "beta,gamma") throw ValidationError(where + ": expected header beta,gamma");
            header = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ValidationError(where + ": expected beta,gamma");
        Zero z;
        auto parse = [&](std::string_view sv, double& v) {
            auto r = std::from_chars(sv.data(), sv.data() + sv.size(), v);
            if (r.ec != std::errc() || r.ptr != sv.data() + sv.size()) throw ValidationError(where + ": bad number");
        };
        std::string_view sv(line);
        parse(sv.substr(0, comma), z.beta);
        parse(sv.substr(comma + 1), z.gamma);
        zeros.push_back(z);
    }
    if (!header) throw ValidationError("zero csv: missing header beta,gamma");
    return make_zero_set(std::move(zeros), box);
}

Json test_function_json(const TestFunctionConfig& cfg) {
    return {{"mu0", Json::array({complex_to_json(cfg.mu0.mu[0]), complex_to_json(cfg.mu0.mu[1]),
                                 complex_to_json(cfg.mu0.mu[2])})},
            {"T", cfg.T},
            {"eta", cfg.eta},
            {"A", cfg.A},
            {"M", cfg.M()}};
}

Json sim_config_json(const SimConfig& c) {
    Json j{{"prime_bound", c.prime_bound},
           {"t", c.t},
           {"sample_count", c.sample_count},
           {"seed", c.seed},
           {"n_max", c.n_max},
           {"weighting", c.weighting == Weighting::spectral ? "spectral" : "uniform"}};
    if (c.weighting == Weighting::spectral && c.spectral) j["spectral"] = test_function_json(*c.spectral);
    return j;
}

Json moment_report_json(const MomentReport& rep) {
    Json j;
    j["kind"] = "moment_report";
    j["schema_version"] = kSchemaVersion;
    j["config"] = sim_config_json(rep.config);
    j["prime_count"] = rep.prime_count;
    j["sum_inv_p"] = rep.sum_inv_p;
    j["variance_target"] = rep.variance_target;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"order", r.order},
                        {"empirical", r.empirical},
                        {"target", r.target},
                        {"stderr", r.stderr_},
                        {"normalized", r.normalized}});
    }
    j["moments"] = rows;
    j["kurtosis"] = rep.kurtosis;
    j["cdf_distance"] = rep.cdf_distance;
    j["pre_asymptotic"] = rep.pre_asymptotic;
    j["effective_samples"] = rep.effective_samples;
    j["notes"] = rep.notes;
    return j;
}

std::string moment_report_csv(const MomentReport& rep) {
    std::string s = "order,empirical,target,stderr\n";
    for (const auto& r : rep.rows) {
        s += std::to_string(r.order) + "," + num(r.empirical) + "," + num(r.target) + "," + num(r.stderr_) + "\n";
    }
    return s;
}

std::string histogram_csv(const MomentReport& rep, int bins) {
    if (bins < 1) throw ValidationError("histogram: bins must be positive");
    const double sd = 1.0 / (std::numbers::pi * std::sqrt(2.0));
    const double lo = -4.0 * sd, hi = 4.0 * sd, w = (hi - lo) / bins;
    const double norm = std::sqrt(rep.sum_inv_p);
    std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
    std::vector<std::uint64_t> count(static_cast<std::size_t>(bins), 0);
    double total = 0.0;
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        double wt = rep.weights.empty() ? 1.0 : rep.weights[i];
        total += wt;
        double z = rep.samples[i] / norm;
        if (z < lo || z >= hi) continue;
        auto b = std::min<std::size_t>(static_cast<std::size_t>((z - lo) / w), mass.size() - 1);
        mass[b] += wt;
        ++count[b];
    }
    std::string s = "bin_lo,bin_hi,count,fraction,gaussian_fraction\n";
    for (int b = 0; b < bins; ++b) {
        double a = lo + b * w, c = lo + (b + 1) * w;
        double frac = total > 0 ? mass[b] / total : 0.0;
        s += num(a) + "," + num(c) + "," + std::to_string(count[b]) + "," + num(frac) + "," +
             num(gaussian_cdf(c) - gaussian_cdf(a)) + "\n";
    }
    return s;
}

std::string moment_bars_svg(const MomentReport& rep) {
    const double W = 640, Hh = 400, left = 60, bottom = 340, top = 40;
    double vmax = 0.0;
    for (const auto& r : rep.rows) vmax = std::max({vmax, std::abs(r.empirical), std::abs(r.target)});
    if (vmax == 0.0) vmax = 1.0;
    const double zero_y = (top + bottom) / 2.0, scale = (bottom - top) / 2.0 / vmax;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hh << "\" viewBox=\"0 0 " << W
       << " " << Hh << "\">\n"
       << "<title>moments vs targets</title>\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << Hh << "\" fill=\"white\"/>\n"
       << "<line x1=\"" << left << "\" y1=\"" << num(zero_y) << "\" x2=\"" << W - 20 << "\" y2=\"" << num(zero_y)
       << "\" stroke=\"black\"/>\n";
    const double slot = (W - 20 - left) / std::max<std::size_t>(1, rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        double x = left + i * slot;
        auto bar = [&](double v, double off, const char* fill, const char* cls) {
            double h = std::abs(v) * scale;
            double y = v >= 0 ? zero_y - h : zero_y;
            os << "<rect class=\"" << cls << "\" x=\"" << num(x + off) << "\" y=\"" << num(y) << "\" width=\""
               << num(slot * 0.35) << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\"/>\n";
        };
        bar(r.empirical, slot * 0.1, "#4472c4", "empirical");
        bar(r.target, slot * 0.5, "#ed7d31", "target");
        os << "<text x=\"" << num(x + slot * 0.4) << "\" y=\"" << bottom + 20 << "\" font-size=\"12\">m" << r.order
           << "</text>\n";
    }
    os << "<text x=\"" << left << "\" y=\"20\" font-size=\"12\">" << xml_escape(caption(rep)) << "</text>\n"
       << "</svg>\n";
    return os.str();
}

std::string cdf_svg(const MomentReport& rep) {
    const double W = 640, Hh = 400, left = 50, right = 620, top = 40, bottom = 360;
    const double sd = 1.0 / (std::numbers::pi * std::sqrt(2.0));
    const double lo = -4.0 * sd, hi = 4.0 * sd;
    auto X = [&](double z) { return left + (z - lo) / (hi - lo) * (right - left); };
    auto Y = [&](double F) { return bottom - F * (bottom - top); };

    const double norm = std::sqrt(rep.sum_inv_p);
    std::vector<double> z(rep.samples.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = rep.samples[i] / norm;
    std::vector<std::size_t> idx(z.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return z[a] < z[b] || (z[a] == z[b] && a < b); });
    double total = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) total += rep.weights.empty() ? 1.0 : rep.weights[i];

    // empirical CDF sampled on a fixed grid so the file size does not grow with N
    const int G = 400;
    std::ostringstream emp, gau;
    std::size_t k = 0;
    double cum = 0.0;
    for (int g = 0; g <= G; ++g) {
        double x = lo + (hi - lo) * g / G;
        while (k < idx.size() && z[idx[k]] <= x) {
            cum += rep.weights.empty() ? 1.0 : rep.weights[idx[k]];
            ++k;
        }
        double F = total > 0 ? cum / total : 0.0;
        emp << (g ? " " : "") << num(X(x)) << "," << num(Y(F));
        gau << (g ? " " : "") << num(X(x)) << "," << num(Y(gaussian_cdf(x)));
    }
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hh << "\" viewBox=\"0 0 " << W
       << " " << Hh << "\">\n"
       << "<title>empirical CDF vs Gaussian</title>\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << Hh << "\" fill=\"white\"/>\n"
       << "<polyline class=\"empirical\" fill=\"none\" stroke=\"#4472c4\" points=\"" << emp.str() << "\"/>\n"
       << "<polyline class=\"gaussian\" fill=\"none\" stroke=\"#ed7d31\" stroke-dasharray=\"4 3\" points=\""
       << gau.str() << "\"/>\n"
       << "<text x=\"" << left << "\" y=\"20\" font-size=\"12\">" << xml_escape(caption(rep))
       << " D=" << num(rep.cdf_distance) << "</text>\n"
       << "</svg>\n";
    return os.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(Status::failure, "sha256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingDataError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Status::failure, "unwritable path " + path);
    out << content;
    out.flush();
    if (!out) throw Error(Status::failure, "write failed for " + path);
}

}  // namespace argstat
