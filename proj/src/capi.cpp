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

#include "argstat/argstat.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>

#include "argstat/familysim.hpp"
#include "argstat/heckealg.hpp"
#include "argstat/io.hpp"
#include "argstat/lmfdb.hpp"
#include "argstat/primes.hpp"
#include "argstat/satake.hpp"
#include "argstat/sfapprox.hpp"
#include "argstat/smoothing.hpp"
#include "argstat/specweight.hpp"

#ifndef ARGSTAT_VERSION_STRING
#define ARGSTAT_VERSION_STRING "0.0.0"
#endif

using namespace argstat;

struct argstat_result {
    Json payload;
    Warnings warnings;
    std::map<std::string, std::string> artifacts;  // everything except "json"
};

struct argstat_forms {
    std::vector<FormRecord> forms;
    std::vector<std::string> errors;
};

namespace {

thread_local std::string g_last_error;

template <class F>
argstat_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return ARGSTAT_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<argstat_status>(e.status());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ARGSTAT_FAILURE;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.data(), s.size() + 1);
    return p;
}

void need(const void* p, const char* what) {
    if (!p) throw ValidationError(std::string(what) + " must not be NULL");
}

argstat_result* make_result(Json payload, Warnings warnings = {}) {
    auto* r = new argstat_result;
    r->payload = std::move(payload);
    if (r->payload.is_object() && !r->payload.contains("schema_version")) r->payload["schema_version"] = kSchemaVersion;
    r->warnings = std::move(warnings);
    return r;
}

cplx to_cplx(argstat_complex z) { return {z.re, z.im}; }

std::string csv_num(double v) {
    Json j = v;
    return j.dump();
}

EisensteinSpec spec3(const double t3[3]) {
    need(t3, "t3");
    return make_eisenstein(t3[0], t3[1], t3[2]);
}

Json t3_json(const EisensteinSpec& s) { return Json::array({s.t[0], s.t[1], s.t[2]}); }

TestFunctionConfig test_function(const argstat_spec_config& c) {
    LanglandsParameter mu{{cplx(0, c.mu0_im[0]), cplx(0, c.mu0_im[1]), cplx(0, c.mu0_im[2])}};
    return make_test_function(mu, c.eta, c.A);
}

Json quadrature_json(const argstat_spec_config& c) { return {{"spacing", c.spacing}, {"cutoff", c.cutoff}}; }

SimConfig sim_config(const argstat_sim_config& c) {
    SimConfig s;
    s.prime_bound = c.prime_bound;
    s.t = c.t;
    s.sample_count = c.sample_count;
    s.seed = c.seed;
    s.n_max = c.n_max;
    s.threads = c.threads;
    if (c.spectral) {
        s.weighting = Weighting::spectral;
        s.spectral = test_function(c.spec);
    }
    return s;
}

Json hecke_term_json(const HeckeTerm& t) {
    Json j = Json::object();
    for (const auto& [p, mn] : t) j[std::to_string(p)] = Json::array({mn.first, mn.second});
    return j;
}

std::optional<double> frozen_zero_density_constant(const ZeroEnsembleConfig& z) {
#ifdef ARGSTAT_DATA_DIR
    const std::string path = std::string(ARGSTAT_DATA_DIR) + "/zero_density_constant.json";
    if (!std::filesystem::exists(path)) return std::nullopt;
    Json j = Json::parse(read_file(path));
    const Json& c = j["config"];
    if (c["theta"] == z.theta && c["logT"] == z.logT && c["H"] == z.H && c["n"] == z.n && c["k"] == z.k &&
        c["delta"] == z.delta && c["t"] == z.t && c["forms"] == z.forms && !z.zero_free) {
        return j["c"].get<double>();
    }
#else
    (void)z;
#endif
    return std::nullopt;
}

argstat_result* moment_result(const MomentReport& rep, bool clt) {
    Json j = moment_report_json(rep);
    if (clt) j["kind"] = "clt_report";
    auto* r = make_result(std::move(j), rep.notes);
    if (clt) {
        r->artifacts["csv"] = histogram_csv(rep);
        r->artifacts["svg"] = cdf_svg(rep);
        r->artifacts["moments_csv"] = moment_report_csv(rep);
    } else {
        r->artifacts["csv"] = moment_report_csv(rep);
        r->artifacts["svg"] = moment_bars_svg(rep);
        r->artifacts["cdf_svg"] = cdf_svg(rep);
    }
    return r;
}

}  // namespace

extern "C" {

const char* argstat_version(void) { return ARGSTAT_VERSION_STRING; }

const char* argstat_last_error(void) { return g_last_error.c_str(); }

void argstat_string_free(char* s) { std::free(s); }

argstat_status argstat_sha256_hex(const char* data, size_t len, char** out) {
    return guarded([&] {
        need(out, "out");
        if (len) need(data, "data");
        *out = dup(sha256_hex(std::string(data ? data : "", len)));
    });
}

argstat_status argstat_result_render(const argstat_result* r, const char* format, char** out) {
    return guarded([&] {
        need(r, "result");
        need(format, "format");
        need(out, "out");
        std::string f = format;
        if (f == "json") {
            *out = dup(canonical_json(r->payload));
            return;
        }
        auto it = r->artifacts.find(f);
        if (it == r->artifacts.end()) {
            std::string kind = r->payload.value("kind", std::string("result"));
            throw ValidationError("format '" + f + "' is not available for " + kind);
        }
        *out = dup(it->second);
    });
}

argstat_status argstat_result_artifacts(const argstat_result* r, char** out) {
    return guarded([&] {
        need(r, "result");
        need(out, "out");
        Json a = Json::array({"json"});
        for (const auto& [k, v] : r->artifacts) a.push_back(k);
        *out = dup(a.dump());
    });
}

argstat_status argstat_result_config(const argstat_result* r, char** out) {
    return guarded([&] {
        need(r, "result");
        need(out, "out");
        *out = dup(canonical_json(r->payload.contains("config") ? r->payload["config"] : Json::object()));
    });
}

argstat_status argstat_result_warnings(const argstat_result* r, char** out) {
    return guarded([&] {
        need(r, "result");
        need(out, "out");
        *out = dup(Json(r->warnings).dump());
    });
}

void argstat_result_free(argstat_result* r) { delete r; }

argstat_status argstat_forms_load(const char* path, int lenient, argstat_forms** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        auto parsed = parse_form_file(path, lenient != 0);
        *out = new argstat_forms{std::move(parsed.forms), std::move(parsed.errors)};
    });
}

size_t argstat_forms_count(const argstat_forms* f) { return f ? f->forms.size() : 0; }

argstat_status argstat_forms_find(const argstat_forms* f, const char* label, size_t* index) {
    return guarded([&] {
        need(f, "forms");
        need(label, "label");
        need(index, "index");
        for (std::size_t i = 0; i < f->forms.size(); ++i) {
            if (f->forms[i].label == label) {
                *index = i;
                return;
            }
        }
        throw MissingDataError(std::string("no form labelled ") + label);
    });
}

argstat_status argstat_forms_errors(const argstat_forms* f, char** out) {
    return guarded([&] {
        need(f, "forms");
        need(out, "out");
        *out = dup(Json(f->errors).dump());
    });
}

argstat_status argstat_forms_serialize(const argstat_forms* f, char** out) {
    return guarded([&] {
        need(f, "forms");
        need(out, "out");
        *out = dup(serialize_form_file(f->forms));
    });
}

void argstat_forms_free(argstat_forms* f) { delete f; }

argstat_status argstat_hecke_expand(int n, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto c = expand_power(n);
        auto support = support_set(n);
        Json terms = Json::array();
        std::string csv = "k,l,coefficient\n";
        std::set<HeckeIndex> keys;
        for (const auto& [kl, coeff] : c.terms) {
            terms.push_back({{"k", kl.first}, {"l", kl.second}, {"coefficient", coeff.str()}});
            csv += std::to_string(kl.first) + "," + std::to_string(kl.second) + "," + coeff.str() + "\n";
            keys.insert(kl);
        }
        Json j{{"kind", "hecke_expand"},
               {"config", {{"n", n}}},
               {"terms", terms},
               {"support_matches", keys == support.pairs},
               {"dimension_check", dimension_check(n)}};
        auto* r = make_result(std::move(j));
        r->artifacts["csv"] = csv;
        *out = r;
    });
}

argstat_status argstat_hecke_check(int n_max, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        if (n_max < 0 || n_max > kMaxExpandPower) throw ValidationError("hecke check: n_max must lie in [0, 40]");
        Json rows = Json::array();
        std::string csv = "n,support_size,support_matches,dimension_check\n";
        bool all = true;
        for (int n = 0; n <= n_max; ++n) {
            auto c = expand_power(n);
            std::set<HeckeIndex> keys;
            for (const auto& [kl, v] : c.terms) keys.insert(kl);
            bool sup = keys == support_set(n).pairs;
            bool dim = dimension_check(n);
            all = all && sup && dim;
            rows.push_back({{"n", n}, {"support_size", keys.size()}, {"support_matches", sup}, {"dimension_check", dim}});
            csv += std::to_string(n) + "," + std::to_string(keys.size()) + "," + (sup ? "true" : "false") + "," +
                   (dim ? "true" : "false") + "\n";
        }
        auto* r = make_result({{"kind", "hecke_check"}, {"config", {{"n_max", n_max}}}, {"rows", rows}, {"all_ok", all}});
        r->artifacts["csv"] = csv;
        *out = r;
    });
}

argstat_status argstat_satake_solve(argstat_complex a1p, argstat_complex ap1, uint64_t p, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto s = solve_satake(to_cplx(a1p), to_cplx(ap1), p);
        Json roots = Json::array();
        std::string csv = "j,re,im,modulus\n";
        for (int j = 0; j < 3; ++j) {
            cplx a = s.triple.alpha[j];
            roots.push_back(complex_to_json(a));
            csv += std::to_string(j + 1) + "," + csv_num(a.real()) + "," + csv_num(a.imag()) + "," +
                   csv_num(std::abs(a)) + "\n";
        }
        Json j{{"kind", "satake_solve"},
               {"config", {{"a1p", complex_to_json(to_cplx(a1p))}, {"ap1", complex_to_json(to_cplx(ap1))}, {"p", p}}},
               {"roots", roots},
               {"kim_sarnak", s.kim_sarnak},
               {"residual", s.residual}};
        auto* r = make_result(std::move(j), s.warnings);
        r->artifacts["csv"] = csv;
        *out = r;
    });
}

argstat_status argstat_satake_powersums(argstat_complex a1p, argstat_complex ap1, int k_max, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto c = power_sums(to_cplx(a1p), to_cplx(ap1), k_max);
        Json arr = Json::array();
        std::string csv = "k,re,im\n";
        for (std::size_t k = 0; k < c.size(); ++k) {
            arr.push_back(complex_to_json(c[k]));
            csv += std::to_string(k + 1) + "," + csv_num(c[k].real()) + "," + csv_num(c[k].imag()) + "\n";
        }
        Json j{{"kind", "satake_powersums"},
               {"config", {{"a1p", complex_to_json(to_cplx(a1p))}, {"ap1", complex_to_json(to_cplx(ap1))}, {"k_max", k_max}}},
               {"power_sums", arr}};
        auto* r = make_result(std::move(j));
        r->artifacts["csv"] = csv;
        *out = r;
    });
}

argstat_status argstat_weights_lambda(double x, uint64_t n_lo, uint64_t n_hi, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto cfg = make_smoothing(x);
        if (n_lo < 1 || n_hi < n_lo || n_hi - n_lo > 1000000) {
            throw ValidationError("weights lambda: need 1 <= n_lo <= n_hi and at most 1e6 rows");
        }
        Json rows = Json::array();
        std::string csv = "n,lambda,lambda_x\n";
        for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
            double L = von_mangoldt(n), Lx = lambda_x(n, cfg);
            if (L == 0.0) continue;
            rows.push_back({{"n", n}, {"lambda", L}, {"lambda_x", Lx}});
            csv += std::to_string(n) + "," + csv_num(L) + "," + csv_num(Lx) + "\n";
        }
        auto* r = make_result({{"kind", "weights_lambda"}, {"config", {{"x", x}, {"n_lo", n_lo}, {"n_hi", n_hi}}}, {"rows", rows}});
        r->artifacts["csv"] = csv;
        *out = r;
    });
}

argstat_status argstat_weights_primes(double bound, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        if (!(bound >= 2.0) || bound > static_cast<double>(kPrimeCap)) throw ValidationError("weights primes: bound must lie in [2, 1e8]");
        auto primes = primes_up_to(static_cast<std::uint64_t>(bound));
        double s = prime_reciprocal_sum(bound);
        Json j{{"kind", "weights_primes"},
               {"config", {{"bound", bound}}},
               {"prime_count", primes.size()},
               {"sum_inv_p", s},
               {"variance_target", s / (2.0 * 9.869604401089358)}};
        *out = make_result(std::move(j));
    });
}

argstat_status argstat_sfunc_oracle(const double t3[3], double t, double resolution, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto spec = spec3(t3);
        auto o = s_oracle(spec, t, resolution);
        Json j{{"kind", "sfunc_oracle"},
               {"config", {{"t3", t3_json(spec)}, {"t", t}, {"resolution", resolution}}},
               {"value", o.value},
               {"components", o.components},
               {"tail", o.tail}};
        *out = make_result(std::move(j));
    });
}

argstat_status argstat_sfunc_approx(const argstat_forms* forms, size_t index, const double t3[3], double t, double x,
                                    double error_constant, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto cfg = make_smoothing(x);
        Json config{{"t", t}, {"x", x}, {"error_constant", error_constant}};
        FormRecord f;
        std::optional<EisensteinSpec> spec;
        if (forms) {
            if (index >= forms->forms.size()) throw ValidationError("sfunc approx: form index out of range");
            f = forms->forms[index];
            config["label"] = f.label;
        } else {
            spec = spec3(t3);
            double x3 = x * x * x;
            auto limit = static_cast<std::uint64_t>(std::min(x3, 1e7));
            f = eisenstein_form(*spec, limit);
            config["t3"] = t3_json(*spec);
        }
        auto a = approx_s(f, t, cfg, error_constant);
        Json j{{"kind", "sfunc_approx"},
               {"config", config},
               {"main_term", a.main_term},
               {"error_budget", a.error_budget},
               {"sigma_x", a.sigma_x_used},
               {"plain_abs", a.plain_abs},
               {"tail_bound", a.tail_bound}};
        if (spec) {
            double o = s_oracle(*spec, t).value;
            j["oracle"] = o;
            j["contained"] = std::abs(o - a.main_term) <= a.error_budget;
        }
        *out = make_result(std::move(j));
    });
}

argstat_status argstat_sfunc_lemma31(const double t3[3], argstat_complex s, double x, double window,
                                     argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto spec = spec3(t3);
        auto l = lemma31_check(spec, to_cplx(s), make_smoothing(x), window);
        Json j{{"kind", "sfunc_lemma31"},
               {"config", {{"t3", t3_json(spec)}, {"s", complex_to_json(to_cplx(s))}, {"x", x}, {"window", window}}},
               {"lhs", complex_to_json(l.lhs)},
               {"rhs", complex_to_json(l.rhs)},
               {"gap", l.gap},
               {"tail_estimate", l.tail_estimate},
               {"zeros_used", l.zeros_used}};
        *out = make_result(std::move(j), l.warnings);
    });
}

argstat_status argstat_sfunc_rvcheck(double t, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto c = rv_mangoldt_check(t);
        Json j{{"kind", "sfunc_rvcheck"},
               {"config", {{"t", t}}},
               {"n_formula", c.n_formula},
               {"n_counted", c.n_counted},
               {"difference", std::abs(c.n_formula - static_cast<double>(c.n_counted))}};
        *out = make_result(std::move(j));
    });
}

void argstat_spec_config_default(argstat_spec_config* c) {
    if (!c) return;
    // generic direction i(5, -1, -4)/sqrt(42), T = 100
    const double s = 100.0 / std::sqrt(42.0);
    c->mu0_im[0] = 5 * s;
    c->mu0_im[1] = -s;
    c->mu0_im[2] = -4 * s;
    c->eta = 0.2;
    c->A = 1;
    c->spacing = 1.0 / 20.0;
    c->cutoff = 6.0;
    c->threads = 0;
}

argstat_status argstat_spec_hsum(const argstat_spec_config* c, argstat_result** out) {
    return guarded([&] {
        need(c, "config");
        need(out, "out");
        auto tf = test_function(*c);
        auto H = compute_H(tf, Quadrature{c->spacing, c->cutoff}, c->threads);
        const double M = tf.M();
        Json j{{"kind", "spec_hsum"},
               {"config", {{"test_function", test_function_json(tf)}, {"quadrature", quadrature_json(*c)}}},
               {"H", H.value},
               {"coarse", H.coarse},
               {"relative_error", H.relative_error},
               {"points", H.points},
               {"ratio_T3M2", H.value / (tf.T * tf.T * tf.T * M * M)}};
        auto* r = make_result(std::move(j));
        r->artifacts["csv"] = "T,M,H,coarse,relative_error,points\n" + csv_num(tf.T) + "," + csv_num(M) + "," +
                              csv_num(H.value) + "," + csv_num(H.coarse) + "," + csv_num(H.relative_error) + "," +
                              std::to_string(H.points) + "\n";
        *out = r;
    });
}

argstat_status argstat_spec_predict(const argstat_spec_config* c, uint64_t m1, uint64_t m2, uint64_t n1, uint64_t n2,
                                    double epsilon, argstat_result** out) {
    return guarded([&] {
        need(c, "config");
        need(out, "out");
        if (!(epsilon > 0.0)) throw ValidationError("spec predict: epsilon must be positive");
        auto tf = test_function(*c);
        double H = compute_H(tf, Quadrature{c->spacing, c->cutoff}, c->threads).value;
        auto d = diagonal_predictor(m1, m2, n1, n2, tf, H, epsilon);
        auto cross = negligible_crossover(tf, H, epsilon);
        Json j{{"kind", "spec_predict"},
               {"config",
                {{"test_function", test_function_json(tf)},
                 {"quadrature", quadrature_json(*c)},
                 {"m", Json::array({m1, m2})},
                 {"n", Json::array({n1, n2})},
                 {"epsilon", epsilon}}},
               {"H", H},
               {"main", d.main},
               {"envelope", d.envelope},
               {"negligible", d.negligible},
               {"crossover_P", cross ? Json(*cross) : Json(nullptr)}};
        *out = make_result(std::move(j));
    });
}

void argstat_sim_config_default(argstat_sim_config* c) {
    if (!c) return;
    c->prime_bound = 1e5;
    c->t = 1.0;
    c->sample_count = 20000;
    c->seed = 1;
    c->n_max = 4;
    c->spectral = 0;
    argstat_spec_config_default(&c->spec);
    c->threads = 0;
}

argstat_status argstat_sim_moments(const argstat_sim_config* c, argstat_result** out) {
    return guarded([&] {
        need(c, "config");
        need(out, "out");
        *out = moment_result(run_moments(sim_config(*c)), false);
    });
}

argstat_status argstat_sim_clt(const argstat_sim_config* c, argstat_result** out) {
    return guarded([&] {
        need(c, "config");
        need(out, "out");
        *out = moment_result(run_moments(sim_config(*c)), true);
    });
}

argstat_status argstat_sim_audit(int n, int r, double t, argstat_result** out) {
    return guarded([&] {
        need(out, "out");
        auto a = symbolic_moment_audit(n, r, t);
        Json rows = Json::array();
        std::string csv = "term,case,sequences,expectation\n";
        for (const auto& row : a.rows) {
            Json term = hecke_term_json(row.term);
            rows.push_back({{"term", term},
                            {"case", static_cast<int>(row.kase)},
                            {"sequences", row.sequences},
                            {"expectation", row.expectation}});
            std::string key;
            for (const auto& [p, mn] : row.term) {
                key += (key.empty() ? "" : " ") + std::to_string(p) + ":" + std::to_string(mn.first) + "/" +
                       std::to_string(mn.second);
            }
            csv += key + "," + std::to_string(static_cast<int>(row.kase)) + "," + std::to_string(row.sequences) + "," +
                   csv_num(row.expectation) + "\n";
        }
        Json j{{"kind", "moment_audit"},
               {"config", {{"n", n}, {"r", r}, {"t", t}}},
               {"primes", a.primes},
               {"rows", rows},
               {"case1_max", a.case1_max},
               {"case1_ok", a.case1_ok},
               {"case3_max_deviation", a.case3_max_deviation},
               {"case3_sequences_per_set", a.case3_sequences_per_set},
               {"case3_sequences_per_tuple", a.case3_sequences_per_tuple},
               {"case3_expected_per_tuple", a.case3_expected_per_tuple},
               {"case3_coefficient", a.case3_coefficient},
               {"case3_ok", a.case3_ok},
               {"total_expectation", a.total_expectation}};
        auto* res = make_result(std::move(j));
        res->artifacts["csv"] = csv;
        *out = res;
    });
}

void argstat_zero_config_default(argstat_zero_config* c) {
    if (!c) return;
    ZeroEnsembleConfig z;
    c->theta = z.theta;
    c->logT = z.logT;
    c->H = z.H;
    c->n = z.n;
    c->k = z.k;
    c->delta = z.delta;
    c->t = z.t;
    c->forms = z.forms;
    c->zero_free = 0;
    c->seed = 1;
    c->draws = 100;
}

argstat_status argstat_sim_zerodensity(const argstat_zero_config* c, argstat_result** out) {
    return guarded([&] {
        need(c, "config");
        need(out, "out");
        ZeroEnsembleConfig z;
        z.theta = c->theta;
        z.logT = c->logT;
        z.H = c->H;
        z.n = c->n;
        z.k = c->k;
        z.delta = c->delta;
        z.t = c->t;
        z.forms = c->forms;
        z.zero_free = c->zero_free != 0;
        if (c->draws < 1 || c->draws > 100000) throw ValidationError("zerodensity: draws must lie in [1, 1e5]");
        double computed = zero_density_constant(z);
        auto frozen = frozen_zero_density_constant(z);
        double used = frozen ? *frozen : computed;
        Json draws = Json::array();
        std::string csv = "draw,lhs,rhs_bound,holds,zeros\n";
        bool all = true;
        for (std::uint64_t d = 0; d < c->draws; ++d) {
            auto h = zero_density_harness(z, c->seed, d, used);
            all = all && h.holds;
            draws.push_back({{"draw", d}, {"lhs", h.lhs}, {"rhs_bound", h.rhs_bound}, {"holds", h.holds}, {"zeros", h.zeros}});
            csv += std::to_string(d) + "," + csv_num(h.lhs) + "," + csv_num(h.rhs_bound) + "," + (h.holds ? "true" : "false") +
                   "," + std::to_string(h.zeros) + "\n";
        }
        Json j{{"kind", "zero_density"},
               {"config",
                {{"theta", z.theta},
                 {"logT", z.logT},
                 {"H", z.H},
                 {"n", z.n},
                 {"k", z.k},
                 {"delta", z.delta},
                 {"t", z.t},
                 {"forms", z.forms},
                 {"zero_free", z.zero_free},
                 {"seed", c->seed},
                 {"draws", c->draws}}},
               {"c_computed", computed},
               {"c_frozen", frozen ? Json(*frozen) : Json(nullptr)},
               {"floor", zero_free_floor(z)},
               {"draws", draws},
               {"all_hold", all}};
        auto* r = make_result(std::move(j));
        r->artifacts["csv"] = csv;
        *out = r;
    });
}

argstat_status argstat_ingest_lmfdb(const argstat_ingest_options* o, argstat_result** out) {
    return guarded([&] {
        need(o, "options");
        need(out, "out");
        LmfdbOptions opts;
        if (o->base_url) opts.base_url = o->base_url;
        if (o->fixture) opts.fixture = o->fixture;
        if (o->limit > 0) opts.limit = o->limit;
        if (o->backoff_ms > 0) opts.backoff_ms = o->backoff_ms;
        auto res = ingest_lmfdb(opts);
        Json file = Json::parse(serialize_form_file(res.forms));
        Warnings w = res.warnings;
        for (const auto& e : res.errors) w.push_back("error: " + e);
        auto* r = make_result(std::move(file), w);
        r->artifacts["rejects"] = canonical_json(res.rejects);
        *out = r;
    });
}

argstat_status argstat_report_render(const char* json_text, const char* format, char** out) {
    return guarded([&] {
        need(json_text, "json_text");
        need(format, "format");
        need(out, "out");
        Json j;
        try {
            j = Json::parse(json_text);
        } catch (const Json::parse_error& e) {
            throw ValidationError(std::string("report: malformed JSON: ") + e.what());
        }
        std::string f = format;
        std::string kind = j.value("kind", std::string());
        if (f == "json") {
            *out = dup(canonical_json(j));
            return;
        }
        if (kind != "moment_report" && kind != "clt_report") {
            throw ValidationError("report render: only moment reports can be re-rendered as " + f);
        }
        MomentReport rep;
        const Json& c = j.at("config");
        rep.config.prime_bound = c.at("prime_bound").get<double>();
        rep.config.t = c.at("t").get<double>();
        rep.config.sample_count = c.at("sample_count").get<std::uint64_t>();
        rep.config.seed = c.at("seed").get<std::uint64_t>();
        rep.config.n_max = c.at("n_max").get<int>();
        rep.config.weighting = c.at("weighting") == "spectral" ? Weighting::spectral : Weighting::uniform;
        for (const auto& row : j.at("moments")) {
            MomentRow m;
            m.order = row.at("order").get<int>();
            m.empirical = row.at("empirical").get<double>();
            m.target = row.at("target").get<double>();
            m.stderr_ = row.at("stderr").get<double>();
            m.normalized = row.at("normalized").get<double>();
            rep.rows.push_back(m);
        }
        if (f == "csv") *out = dup(moment_report_csv(rep));
        else if (f == "svg") *out = dup(moment_bars_svg(rep));
        else throw ValidationError("report render: unknown format " + f);
    });
}

}  // extern "C"
