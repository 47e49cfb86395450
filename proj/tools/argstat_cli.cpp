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

// Command line front end. Talks to the library only through argstat.h.

#include <argstat/argstat.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

constexpr int kManifestSchema = 1;

struct CallError {
    argstat_status status;
    std::string message;
};

void check(argstat_status st) {
    if (st != ARGSTAT_OK) throw CallError{st, argstat_last_error()};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    argstat_string_free(s);
    return out;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CallError{ARGSTAT_MISSING_DATA, "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CallError{ARGSTAT_FAILURE, "unwritable path " + path.string()};
    out << text;
    if (!out.flush()) throw CallError{ARGSTAT_FAILURE, "unwritable path " + path.string()};
}

std::string sha256(const std::string& text) {
    char* out = nullptr;
    check(argstat_sha256_hex(text.data(), text.size(), &out));
    return take(out);
}

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string extension(const std::string& format) {
    if (format == "rejects") return "rejects.json";
    return format;
}

struct Globals {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    bool lenient = false;
    std::string fixture;
    unsigned threads = 0;
};

argstat_complex pair_to_complex(const std::vector<double>& v) { return {v.at(0), v.size() > 1 ? v[1] : 0.0}; }

struct SpecOpts {
    double T = 100.0;
    std::vector<double> direction{5.0, -1.0, -4.0};
    std::vector<double> mu0_im;
    double eta = 0.2;
    int A = 1;
    double spacing = 1.0 / 20.0;
    double cutoff = 6.0;

    void add(CLI::App* app) {
        app->add_option("--T", T, "spectral height |mu0|");
        app->add_option("--direction", direction, "direction of mu0/i, rescaled to length T")->delimiter(',')->expected(3);
        app->add_option("--mu0-im", mu0_im, "mu0/i given exactly (overrides --T/--direction)")->delimiter(',')->expected(3);
        app->add_option("--eta", eta);
        app->add_option("--A", A);
        app->add_option("--spacing", spacing, "quadrature spacing in units of M");
        app->add_option("--cutoff", cutoff, "quadrature radius in units of M");
    }

    argstat_spec_config config(unsigned threads) const {
        argstat_spec_config c;
        argstat_spec_config_default(&c);
        if (!mu0_im.empty()) {
            for (int j = 0; j < 3; ++j) c.mu0_im[j] = mu0_im[j];
        } else {
            double n = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] + direction[2] * direction[2]);
            if (!(n > 0.0)) throw CallError{ARGSTAT_VALIDATION, "--direction must be nonzero"};
            for (int j = 0; j < 3; ++j) c.mu0_im[j] = T * direction[j] / n;
        }
        c.eta = eta;
        c.A = A;
        c.spacing = spacing;
        c.cutoff = cutoff;
        c.threads = threads;
        return c;
    }
};

// One invocation. Returns the exit code; replay recurses into this with the stored argv.
int run(std::vector<std::string> args);

int emit(const Globals& g, const std::string& stem, const std::vector<std::string>& argv, argstat_result* r,
         const std::string& started) {
    struct Guard {
        argstat_result* r;
        ~Guard() { argstat_result_free(r); }
    } guard{r};

    char* out = nullptr;
    check(argstat_result_render(r, g.format.c_str(), &out));
    std::string body = take(out);

    check(argstat_result_warnings(r, &out));
    Json warnings = Json::parse(take(out));
    for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << "\n";

    if (g.out.empty()) {
        std::cout << body;
        return 0;
    }

    fs::create_directories(g.out);
    Json outputs = Json::array();
    auto put = [&](const std::string& fmt, const std::string& text) {
        fs::path p = fs::path(g.out) / (stem + "." + extension(fmt));
        write_text(p, text);
        outputs.push_back({{"path", p.filename().string()}, {"format", fmt}, {"sha256", sha256(text)}});
    };
    put(g.format, body);

    // ingestion always leaves its quarantine next to the form file
    check(argstat_result_artifacts(r, &out));
    for (const auto& a : Json::parse(take(out))) {
        if (a == "rejects" && g.format != "rejects") {
            check(argstat_result_render(r, "rejects", &out));
            put("rejects", take(out));
        }
    }

    check(argstat_result_config(r, &out));
    std::string config_text = take(out);
    Json manifest{{"argv", argv},
                  {"config", Json::parse(config_text)},
                  {"config_hash", sha256(config_text)},
                  {"seed", g.seed},
                  {"started", started},
                  {"finished", utc_now()},
                  {"outputs", outputs},
                  {"warnings", warnings},
                  {"tool_version", argstat_version()},
                  {"schema_version", kManifestSchema}};
    write_text(fs::path(g.out) / (stem + ".manifest.json"), manifest.dump(2) + "\n");
    return 0;
}

int replay(const std::string& manifest_path, const std::string& out_override) {
    Json m = Json::parse(read_text(manifest_path));
    if (m.value("schema_version", 0) != kManifestSchema) {
        throw CallError{ARGSTAT_VALIDATION, "manifest schema_version mismatch"};
    }
    std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
    fs::path dir = out_override.empty() ? fs::path(manifest_path).parent_path() / "replay" : fs::path(out_override);
    argv.push_back("--out");
    argv.push_back(dir.string());
    int rc = run(argv);
    if (rc != 0) return rc;
    bool same = true;
    for (const auto& o : m.at("outputs")) {
        std::string name = o.at("path");
        std::string got = sha256(read_text((dir / name).string()));
        bool ok = got == o.at("sha256").get<std::string>();
        same = same && ok;
        std::cerr << (ok ? "identical " : "DIFFERS   ") << name << "\n";
    }
    if (!same) throw CallError{ARGSTAT_NUMERICAL, "replay produced different artifacts"};
    return 0;
}

int run(std::vector<std::string> args) {
    const std::string started = utc_now();
    const std::vector<std::string> argv = args;  // echoed into the manifest, minus --out

    CLI::App app{"argstat: argument-function statistics for GL(3) L-functions"};
    app.set_version_flag("--version", std::string(argstat_version()));
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--out", g.out, "directory for artifacts and run manifest (stdout if omitted)");
    app.add_option("--format", g.format, "json, csv, svg, or a named artifact")->capture_default_str();
    app.add_flag("--lenient", g.lenient, "keep the valid subset of a form file");
    app.add_option("--fixture", g.fixture, "read LMFDB records from a local fixture");
    app.add_option("--threads", g.threads, "worker threads (0: hardware)");

    std::function<argstat_status(argstat_result**)> action;
    std::string stem;
    std::function<int()> direct;

    auto group = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->require_subcommand(1);
        s->fallthrough();
        return s;
    };
    auto leaf = [&](CLI::App* parent, const char* name, const char* help) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    // hecke
    auto* hecke = group("hecke", "Hecke operator algebra");
    int n_power = 4, n_max = 20;
    leaf(hecke, "expand", "expand T_p^n in the T(p^k, p^l) basis")->add_option("--n", n_power)->required();
    leaf(hecke, "check", "support and dimension checks for n <= n_max")->add_option("--n-max", n_max);
    hecke->get_subcommand("expand")->final_callback([&] { action = [&](auto** o) { return argstat_hecke_expand(n_power, o); }; });
    hecke->get_subcommand("check")->final_callback([&] { action = [&](auto** o) { return argstat_hecke_check(n_max, o); }; });

    // satake
    auto* satake = group("satake", "Satake parameters from Hecke eigenvalues");
    std::vector<double> a1p{0.0, 0.0}, ap1{0.0, 0.0};
    std::uint64_t prime = 2;
    int k_max = 12;
    auto* solve = leaf(satake, "solve", "roots of the Hecke polynomial at p");
    solve->add_option("--a1p", a1p, "A(1,p) as re,im")->delimiter(',')->expected(1, 2)->required();
    solve->add_option("--ap1", ap1, "A(p,1) as re,im (default: conjugate of A(1,p))")->delimiter(',')->expected(1, 2);
    solve->add_option("--p", prime)->required();
    auto* psums = leaf(satake, "powersums", "Newton power sums of the Satake roots");
    psums->add_option("--a1p", a1p)->delimiter(',')->expected(1, 2)->required();
    psums->add_option("--ap1", ap1)->delimiter(',')->expected(1, 2);
    psums->add_option("--k-max", k_max);
    auto ap1_of = [&](CLI::App* s) {
        argstat_complex a = pair_to_complex(a1p);
        if (s->count("--ap1") == 0) return argstat_complex{a.re, -a.im};
        return pair_to_complex(ap1);
    };
    solve->final_callback([&] { action = [&](auto** o) { return argstat_satake_solve(pair_to_complex(a1p), ap1_of(solve), prime, o); }; });
    psums->final_callback([&] { action = [&](auto** o) { return argstat_satake_powersums(pair_to_complex(a1p), ap1_of(psums), k_max, o); }; });

    // weights
    auto* weights = group("weights", "smoothed von Mangoldt weights");
    double x = 50.0, bound = 1e5;
    std::uint64_t n_lo = 1, n_hi = 1000;
    auto* wl = leaf(weights, "lambda", "Lambda and Lambda_x on a range of n");
    wl->add_option("--x", x);
    wl->add_option("--from", n_lo);
    wl->add_option("--to", n_hi);
    leaf(weights, "primes", "prime count and sum of 1/p")->add_option("--bound", bound);
    wl->final_callback([&] { action = [&](auto** o) { return argstat_weights_lambda(x, n_lo, n_hi, o); }; });
    weights->get_subcommand("primes")->final_callback([&] { action = [&](auto** o) { return argstat_weights_primes(bound, o); }; });

    // sfunc
    auto* sfunc = group("sfunc", "the argument function S(t)");
    std::vector<double> t3{0.0, 0.0, 0.0}, s_pt{2.0, 0.0};
    double t = 10.0, resolution = 0.05, error_constant = 10.0, window = 100.0;
    std::string forms_path, label;
    auto* oracle = leaf(sfunc, "oracle", "S(t) by argument continuation (zeta-product family)");
    oracle->add_option("--t3", t3, "shifts t1,t2,t3")->delimiter(',')->expected(3);
    oracle->add_option("--t", t)->required();
    oracle->add_option("--resolution", resolution);
    auto* approx = leaf(sfunc, "approx", "Dirichlet-polynomial approximation with error budget");
    approx->add_option("--t3", t3)->delimiter(',')->expected(3);
    approx->add_option("--forms", forms_path, "form file; omit for the zeta-product form");
    approx->add_option("--label", label, "form label inside --forms (default: first)");
    approx->add_option("--t", t)->required();
    approx->add_option("--x", x);
    approx->add_option("--error-constant", error_constant);
    auto* lemma = leaf(sfunc, "lemma31", "explicit-formula identity against the zero sum");
    lemma->add_option("--t3", t3)->delimiter(',')->expected(3);
    lemma->add_option("--s", s_pt, "s as re,im")->delimiter(',')->expected(1, 2);
    lemma->add_option("--x", x);
    lemma->add_option("--window", window);
    auto* rv = leaf(sfunc, "rvcheck", "zero count against the Riemann-von Mangoldt main term");
    rv->add_option("--t", t)->required();
    oracle->final_callback([&] { action = [&](auto** o) { return argstat_sfunc_oracle(t3.data(), t, resolution, o); }; });
    approx->final_callback([&] {
        action = [&](argstat_result** o) {
            if (forms_path.empty()) return argstat_sfunc_approx(nullptr, 0, t3.data(), t, x, error_constant, o);
            argstat_forms* f = nullptr;
            argstat_status st = argstat_forms_load(forms_path.c_str(), g.lenient ? 1 : 0, &f);
            if (st != ARGSTAT_OK) return st;
            std::size_t idx = 0;
            if (!label.empty()) st = argstat_forms_find(f, label.c_str(), &idx);
            if (st == ARGSTAT_OK) st = argstat_sfunc_approx(f, idx, t3.data(), t, x, error_constant, o);
            std::string msg = argstat_last_error();
            argstat_forms_free(f);
            if (st != ARGSTAT_OK) throw CallError{st, msg};
            return st;
        };
    });
    lemma->final_callback([&] { action = [&](auto** o) { return argstat_sfunc_lemma31(t3.data(), pair_to_complex(s_pt), x, window, o); }; });
    rv->final_callback([&] { action = [&](auto** o) { return argstat_sfunc_rvcheck(t, o); }; });

    // spec
    auto* spec = group("spec", "spectral test-function weights");
    SpecOpts so;
    std::vector<std::uint64_t> mm{1, 1}, nn{1, 1};
    double epsilon = 0.01;
    auto* hsum = leaf(spec, "hsum", "the normalising integral of h against the spectral density");
    so.add(hsum);
    auto* predict = leaf(spec, "predict", "diagonal prediction and error envelope");
    so.add(predict);
    predict->add_option("--m", mm, "m1,m2")->delimiter(',')->expected(2);
    predict->add_option("--n", nn, "n1,n2")->delimiter(',')->expected(2);
    predict->add_option("--epsilon", epsilon);
    argstat_spec_config spec_cfg;
    hsum->final_callback([&] {
        action = [&](auto** o) {
            spec_cfg = so.config(g.threads);
            return argstat_spec_hsum(&spec_cfg, o);
        };
    });
    predict->final_callback([&] {
        action = [&](auto** o) {
            spec_cfg = so.config(g.threads);
            return argstat_spec_predict(&spec_cfg, mm[0], mm[1], nn[0], nn[1], epsilon, o);
        };
    });

    // sim
    auto* sim = group("sim", "Monte Carlo over Sato-Tate and zero ensembles");
    argstat_sim_config sc;
    argstat_sim_config_default(&sc);
    bool spectral = false;
    SpecOpts sim_spec;
    auto sim_opts = [&](CLI::App* s) {
        s->add_option("--prime-bound", sc.prime_bound);
        s->add_option("--t", sc.t);
        s->add_option("--samples", sc.sample_count);
        s->add_option("--n-max", sc.n_max);
        s->add_flag("--spectral", spectral, "weight draws by h around mu0");
        sim_spec.add(s);
    };
    auto* moments = leaf(sim, "moments", "empirical moments against the Gaussian targets");
    sim_opts(moments);
    auto* clt = leaf(sim, "clt", "histogram and CDF overlay");
    sim_opts(clt);
    auto sim_cfg = [&] {
        sc.seed = g.seed;
        sc.threads = g.threads;
        sc.spectral = spectral ? 1 : 0;
        sc.spec = sim_spec.config(g.threads);
        return &sc;
    };
    moments->final_callback([&] { action = [&](auto** o) { return argstat_sim_moments(sim_cfg(), o); }; });
    clt->final_callback([&] { action = [&](auto** o) { return argstat_sim_clt(sim_cfg(), o); }; });
    int audit_n = 2, audit_r = 3;
    double audit_t = 1.0;
    auto* audit = leaf(sim, "audit", "symbolic expansion of the moments by case");
    audit->add_option("--n", audit_n);
    audit->add_option("--r", audit_r, "number of formal primes");
    audit->add_option("--t", audit_t);
    audit->final_callback([&] { action = [&](auto** o) { return argstat_sim_audit(audit_n, audit_r, audit_t, o); }; });
    argstat_zero_config zc;
    argstat_zero_config_default(&zc);
    bool zero_free = false;
    auto* zd = leaf(sim, "zerodensity", "weighted zero-density bound on a synthetic ensemble");
    zd->add_option("--theta", zc.theta);
    zd->add_option("--logT", zc.logT);
    zd->add_option("--H", zc.H);
    zd->add_option("--n", zc.n);
    zd->add_option("--k", zc.k);
    zd->add_option("--delta", zc.delta);
    zd->add_option("--t", zc.t);
    zd->add_option("--forms", zc.forms);
    zd->add_option("--draws", zc.draws);
    zd->add_flag("--zero-free", zero_free);
    zd->final_callback([&] {
        action = [&](auto** o) {
            zc.seed = g.seed;
            zc.zero_free = zero_free ? 1 : 0;
            return argstat_sim_zerodensity(&zc, o);
        };
    });

    // ingest
    auto* ingest = group("ingest", "external data");
    std::string base_url;
    int limit = 10, backoff_ms = 200;
    auto* lm = leaf(ingest, "lmfdb", "fetch GL(3) Maass forms into a form file");
    lm->add_option("--base-url", base_url, "overrides ARGSTAT_LMFDB_URL");
    lm->add_option("--limit", limit);
    lm->add_option("--backoff-ms", backoff_ms);
    lm->final_callback([&] {
        action = [&](auto** o) {
            argstat_ingest_options io{base_url.empty() ? nullptr : base_url.c_str(),
                                      g.fixture.empty() ? nullptr : g.fixture.c_str(), limit, backoff_ms};
            return argstat_ingest_lmfdb(&io, o);
        };
    });

    // report
    auto* report = group("report", "persisted reports and manifests");
    std::string input;
    auto* render = leaf(report, "render", "re-render a report JSON as json, csv or svg");
    render->add_option("input", input)->required();
    render->final_callback([&] {
        direct = [&] {
            char* out = nullptr;
            check(argstat_report_render(read_text(input).c_str(), g.format.c_str(), &out));
            std::string body = take(out);
            if (g.out.empty()) {
                std::cout << body;
            } else {
                fs::create_directories(g.out);
                write_text(fs::path(g.out) / (fs::path(input).stem().string() + "." + g.format), body);
            }
            return 0;
        };
    });
    auto* rp = leaf(report, "replay", "rerun a manifest and compare artifact digests");
    rp->add_option("manifest", input)->required();
    rp->final_callback([&] { direct = [&] { return replay(input, g.out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ARGSTAT_VALIDATION;
    }

    for (auto* grp : app.get_subcommands()) {
        for (auto* sub : grp->get_subcommands()) stem = grp->get_name() + "_" + sub->get_name();
    }
    if (direct) return direct();
    if (!action) {
        std::cerr << "nothing to do\n";
        return ARGSTAT_VALIDATION;
    }

    std::vector<std::string> echo;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        if (argv[i] == "--out" && i + 1 < argv.size()) {
            ++i;
            continue;
        }
        if (argv[i].rfind("--out=", 0) == 0) continue;
        echo.push_back(argv[i]);
    }

    argstat_result* r = nullptr;
    check(action(&r));
    return emit(g, stem, echo, r, started);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run(args);
    } catch (const CallError& e) {
        std::cerr << "argstat: " << e.message << "\n";
        return e.status;
    } catch (const std::exception& e) {
        std::cerr << "argstat: " << e.what() << "\n";
        return ARGSTAT_FAILURE;
    }
}
