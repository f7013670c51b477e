// Copyright 2026 The orbitprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch experiment runner on top of the orbitprec C API: single validated
// orbit runs, mu sweeps with CSV output, and Lyapunov-exponent sweeps.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "orbitprec.h"

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct SystemDeleter {
    void operator()(opx_system* s) const { opx_system_destroy(s); }
};
struct ResultDeleter {
    void operator()(opx_result* r) const { opx_result_destroy(r); }
};
using SystemPtr = std::unique_ptr<opx_system, SystemDeleter>;
using ResultPtr = std::unique_ptr<opx_result, ResultDeleter>;

[[noreturn]] void die(const std::string& message) {
    std::cerr << "orbitprec: " << message << "\n";
    std::exit(1);
}

void check(int rc, const std::string& context) {
    if (rc != OPX_OK) {
        die(context + ": " + opx_strerror(rc) + " (" + opx_last_error() + ")");
    }
}

std::string format_decimal(const std::string& rational, int digits = 10) {
    std::string buf(64, '\0');
    long n = opx_format_decimal(rational.c_str(), digits, buf.data(), buf.size());
    if (n < 0) die("bad numeric literal '" + rational + "': " + opx_last_error());
    if (static_cast<size_t>(n) >= buf.size()) {
        buf.resize(static_cast<size_t>(n) + 1);
        n = opx_format_decimal(rational.c_str(), digits, buf.data(), buf.size());
    }
    buf.resize(static_cast<size_t>(n));
    return buf;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// flat key=value file mirroring the flag names; command-line flags win
void apply_config_file(CLI::App* cmd, const std::string& path) {
    std::ifstream in(path);
    if (!in) die("cannot open config file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
            while (!s.empty() && is_space(s.front())) s.erase(s.begin());
            while (!s.empty() && is_space(s.back())) s.pop_back();
            return s;
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) values[key] = value;
    }
    for (auto* option : cmd->get_options()) {
        std::string name = option->get_name();  // e.g. "--mu-step"
        if (name.rfind("--", 0) != 0) continue;
        name = name.substr(2);
        const auto it = values.find(name);
        if (it == values.end() || option->count() > 0) continue;
        if (option->get_expected_min() == 0) {
            // boolean switch: accept 1/true/on
            if (it->second == "1" || it->second == "true" || it->second == "on") {
                option->add_result("true");
            }
        } else {
            option->add_result(it->second);
        }
        option->run_callback();
    }
}

long default_jobs() {
    if (const char* env = std::getenv("ORBITPREC_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<long>(hc);
}

void parallel_rows(long rows, long jobs, const std::function<void(long)>& work) {
    jobs = std::max(1L, std::min(jobs, rows));
    if (jobs == 1) {
        for (long i = 0; i < rows; ++i) work(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (long j = 0; j < jobs; ++j) {
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < rows; i = next.fetch_add(1)) work(i);
        });
    }
    for (auto& t : pool) t.join();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) die("cannot open output file '" + path + "'");
    out << content;
}

const char* kSweepHeader = "mu,form,x0,N,p,m_min,sigma_est,bound_lower,bound_upper,lambda_hat,status\n";

struct RowResult {
    std::string csv;
    bool ok = false;
    long min_precision = 0;
    std::string mu;
};

struct CommonArgs {
    std::string x0 = "22/100";
    long steps = 500;
    int p = 6;
    std::string form = "running-error";
    std::string mode = "relative";
    std::string search = "bracket";
    long m_cap = 1L << 20;
    std::string config;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--x0", args.x0, "initial value, decimal or a/b");
    cmd->add_option("--N", args.steps, "orbit length");
    cmd->add_option("--p", args.p, "accuracy: relative (or absolute) error at most 10^-p");
    cmd->add_option("--form", args.form,
                    "form1 | form2 | form3 | mean-value | running-error");
    cmd->add_option("--mode", args.mode, "relative | absolute");
    cmd->add_option("--search", args.search, "increment | bracket");
    cmd->add_option("--m-cap", args.m_cap, "precision search cap in bits");
    cmd->add_option("--config", args.config, "key=value config file (flags win)");
}

int tolerance_of(const CommonArgs& args) {
    if (args.mode == "relative") return OPX_TOL_RELATIVE;
    if (args.mode == "absolute") return OPX_TOL_ABSOLUTE;
    die("unknown --mode '" + args.mode + "'");
}

int search_of(const CommonArgs& args) {
    if (args.search == "increment") return OPX_SEARCH_INCREMENT;
    if (args.search == "bracket") return OPX_SEARCH_BRACKET;
    die("unknown --search '" + args.search + "'");
}

bool needs_lambda(const std::string& form) {
    return form == "mean-value" || form == "running-error";
}

std::string point_value(const opx_result* r, long i, int digits) {
    std::string buf(static_cast<size_t>(digits) + 16, '\0');
    long n = opx_result_point_value(r, i, digits, buf.data(), buf.size());
    if (n < 0) return "?";
    if (static_cast<size_t>(n) >= buf.size()) {
        buf.resize(static_cast<size_t>(n) + 1);
        n = opx_result_point_value(r, i, digits, buf.data(), buf.size());
    }
    buf.resize(static_cast<size_t>(n));
    return buf;
}

std::string point_error(const opx_result* r, long i, int digits) {
    std::string buf(static_cast<size_t>(digits) + 16, '\0');
    long n = opx_result_point_error(r, i, digits, buf.data(), buf.size());
    if (n < 0) return "?";
    if (static_cast<size_t>(n) >= buf.size()) {
        buf.resize(static_cast<size_t>(n) + 1);
        n = opx_result_point_error(r, i, digits, buf.data(), buf.size());
    }
    buf.resize(static_cast<size_t>(n));
    return buf;
}

// one sweep row: search m_min, attach band (and lambda when required)
RowResult sweep_row(const std::string& mu, const CommonArgs& args) {
    RowResult out;
    out.mu = mu;
    std::ostringstream row;
    row << format_decimal(mu) << ',' << args.form << ',' << format_decimal(args.x0) << ','
        << args.steps << ',' << args.p << ',';

    opx_system* raw = nullptr;
    int rc = opx_system_create(mu.c_str(), args.form.c_str(), &raw);
    if (rc != OPX_OK) {
        row << ",,,,,error\n";
        out.csv = row.str();
        return out;
    }
    SystemPtr sys(raw);

    std::string lambda_field;
    double lambda = 0.0;
    bool have_lambda = false;
    if (needs_lambda(args.form)) {
        double half = 0.0;
        int flagged = 0;
        rc = opx_lyapunov(sys.get(), args.x0.c_str(), 10000, 200, &lambda, &half, &flagged);
        if (rc == OPX_OK && std::isfinite(lambda)) {
            have_lambda = true;
            lambda_field = format_double(lambda);
        }
    }

    double lower = 0.0;
    double upper = 0.0;
    const double* lambda_ptr = have_lambda ? &lambda : nullptr;
    const bool have_band =
        opx_sigma_band(mu.c_str(), args.form.c_str(), lambda_ptr, &lower, &upper) == OPX_OK;

    opx_result* res_raw = nullptr;
    rc = opx_find_min_precision(sys.get(), args.x0.c_str(), args.steps, args.p, search_of(args),
                                args.m_cap, tolerance_of(args), &res_raw);
    if (rc != OPX_OK) {
        row << ",," << (have_band ? format_double(lower) : "") << ','
            << (have_band ? format_double(upper) : "") << ',' << lambda_field << ",error\n";
        out.csv = row.str();
        return out;
    }
    ResultPtr res(res_raw);

    if (opx_result_status(res.get()) == OPX_RUN_SUCCESS) {
        out.ok = true;
        out.min_precision = opx_result_min_precision(res.get());
        row << out.min_precision << ',' << format_double(opx_result_sigma_est(res.get())) << ','
            << (have_band ? format_double(lower) : "") << ','
            << (have_band ? format_double(upper) : "") << ',' << lambda_field << ",ok\n";
    } else {
        row << ",," << (have_band ? format_double(lower) : "") << ','
            << (have_band ? format_double(upper) : "") << ',' << lambda_field << ",no_halt\n";
    }
    out.csv = row.str();
    return out;
}

// re-verifies emitted rows against the minimality contract via plain runs:
// success at m_min, failure at m_min - 1
void spot_verify_rows(const std::vector<RowResult>& rows, const CommonArgs& args) {
    std::vector<size_t> ok_rows;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].ok) ok_rows.push_back(i);
    }
    if (ok_rows.empty()) return;
    const size_t checks = std::min<size_t>(5, ok_rows.size());
    for (size_t c = 0; c < checks; ++c) {
        const size_t pick = checks == 1 ? 0 : c * (ok_rows.size() - 1) / (checks - 1);
        const RowResult& r = rows[ok_rows[pick]];
        opx_system* raw = nullptr;
        if (opx_system_create(r.mu.c_str(), args.form.c_str(), &raw) != OPX_OK) continue;
        SystemPtr sys(raw);
        opx_result* at = nullptr;
        check(opx_run_fixed(sys.get(), args.x0.c_str(), args.steps, args.p, r.min_precision,
                            tolerance_of(args), &at),
              "spot verification");
        ResultPtr at_min(at);
        if (opx_result_status(at_min.get()) != OPX_RUN_SUCCESS) {
            die("spot verification failed: row mu=" + r.mu + " does not succeed at m_min");
        }
        if (r.min_precision > 1) {
            opx_result* below = nullptr;
            check(opx_run_fixed(sys.get(), args.x0.c_str(), args.steps, args.p,
                                r.min_precision - 1, tolerance_of(args), &below),
                  "spot verification");
            ResultPtr below_min(below);
            if (opx_result_status(below_min.get()) == OPX_RUN_SUCCESS) {
                die("spot verification failed: row mu=" + r.mu + " succeeds below m_min");
            }
        }
    }
}

int cmd_run(const std::string& mu, const CommonArgs& args) {
    opx_system* raw = nullptr;
    check(opx_system_create(mu.c_str(), args.form.c_str(), &raw), "system");
    SystemPtr sys(raw);

    opx_result* res_raw = nullptr;
    check(opx_find_min_precision(sys.get(), args.x0.c_str(), args.steps, args.p, search_of(args),
                                 args.m_cap, tolerance_of(args), &res_raw),
          "run");
    ResultPtr res(res_raw);

    if (opx_result_status(res.get()) != OPX_RUN_SUCCESS) {
        std::cerr << "orbitprec: no accurate orbit within the precision cap " << args.m_cap
                  << " (last failure at step " << opx_result_fail_step(res.get()) << ")\n";
        return 1;
    }

    const int digits = args.p + 2;
    const long count = opx_result_point_count(res.get());
    std::ostringstream out;
    out << "# n value error_bound\n";
    for (long i = 0; i < count; ++i) {
        out << i << ' ' << point_value(res.get(), i, digits) << ' '
            << point_error(res.get(), i, 3) << '\n';
    }

    std::string lambda_field;
    double lambda = 0.0;
    bool have_lambda = false;
    if (needs_lambda(args.form)) {
        double half = 0.0;
        int flagged = 0;
        if (opx_lyapunov(sys.get(), args.x0.c_str(), 10000, 200, &lambda, &half, &flagged) ==
                OPX_OK &&
            std::isfinite(lambda)) {
            have_lambda = true;
            lambda_field = format_double(lambda);
        }
    }
    double lower = 0.0;
    double upper = 0.0;
    const double* lambda_ptr = have_lambda ? &lambda : nullptr;
    const bool have_band =
        opx_sigma_band(mu.c_str(), args.form.c_str(), lambda_ptr, &lower, &upper) == OPX_OK;

    out << "# m_min=" << opx_result_min_precision(res.get());
    if (args.steps >= 1) out << " sigma_est=" << format_double(opx_result_sigma_est(res.get()));
    if (have_band) {
        out << " bound_lower=" << format_double(lower) << " bound_upper=" << format_double(upper);
    }
    if (have_lambda) out << " lambda_hat=" << lambda_field;
    out << " wall_seconds=" << format_double(opx_result_wall_seconds(res.get())) << "\n";

    // machine-readable record: same schema as the sweep CSV
    out << kSweepHeader;
    out << format_decimal(mu) << ',' << args.form << ',' << format_decimal(args.x0) << ','
        << args.steps << ',' << args.p << ',' << opx_result_min_precision(res.get()) << ','
        << (args.steps >= 1 ? format_double(opx_result_sigma_est(res.get())) : "") << ','
        << (have_band ? format_double(lower) : "") << ','
        << (have_band ? format_double(upper) : "") << ',' << lambda_field << ",ok\n";
    std::cout << out.str();
    return 0;
}

std::vector<std::string> make_grid(const std::string& start, const std::string& end,
                                   const std::string& step) {
    long count = 0;
    check(opx_grid_count(start.c_str(), end.c_str(), step.c_str(), &count), "grid");
    std::vector<std::string> grid;
    grid.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
        char buf[128];
        const long n =
            opx_grid_value(start.c_str(), end.c_str(), step.c_str(), i, buf, sizeof buf);
        if (n < 0 || static_cast<size_t>(n) >= sizeof buf) die("grid value error");
        grid.emplace_back(buf);
    }
    // every grid point must be a valid control parameter; the grid is
    // monotone, so probing the extremes is enough
    if (!grid.empty()) {
        for (const std::string* mu : {&grid.front(), &grid.back()}) {
            opx_system* probe = nullptr;
            if (opx_system_create(mu->c_str(), "form1", &probe) != OPX_OK) {
                die("mu grid point " + format_decimal(*mu) + " outside (0, 4]");
            }
            opx_system_destroy(probe);
        }
    }
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"validated logistic-map orbits with minimal-precision measurement"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "single orbit run with precision search");
    std::string run_mu = "3.75";
    CommonArgs run_args;
    run_args.steps = 100;
    run->add_option("--mu", run_mu, "control parameter in (0,4]");
    add_common(run, run_args);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "mu sweep; one CSV row per grid point");
    std::string sweep_start = "0.1";
    std::string sweep_end = "4";
    std::string sweep_step = "0.1";
    std::string sweep_out = "-";
    long sweep_jobs = default_jobs();
    bool paper_scale = false;
    CommonArgs sweep_args;
    sweep_args.form = "form1";
    sweep->add_option("--mu-start", sweep_start, "grid lower bound");
    sweep->add_option("--mu-end", sweep_end, "grid upper bound");
    sweep->add_option("--mu-step", sweep_step, "grid step (grid = multiples of the step)");
    sweep->add_option("--out", sweep_out, "output CSV path ('-' for stdout)");
    sweep->add_option("--jobs", sweep_jobs, "worker threads (env ORBITPREC_JOBS)");
    sweep->add_flag("--paper-scale", paper_scale, "N=2000, mu step 0.005 over (0,4]");
    add_common(sweep, sweep_args);

    // lyapunov
    auto* lyap = app.add_subcommand("lyapunov", "Lyapunov exponent per mu grid point");
    std::string lyap_mu;
    std::string lyap_start = "0.1";
    std::string lyap_end = "4";
    std::string lyap_step = "0.1";
    std::string lyap_out = "-";
    std::string lyap_x0 = "22/100";
    std::string lyap_config;
    long lyap_samples = 10000;
    long lyap_jobs = default_jobs();
    lyap->add_option("--mu", lyap_mu, "single mu (otherwise the grid flags apply)");
    lyap->add_option("--mu-start", lyap_start, "grid lower bound");
    lyap->add_option("--mu-end", lyap_end, "grid upper bound");
    lyap->add_option("--mu-step", lyap_step, "grid step");
    lyap->add_option("--x0", lyap_x0, "initial value");
    lyap->add_option("--N", lyap_samples, "Birkhoff samples after the transient");
    lyap->add_option("--out", lyap_out, "output CSV path ('-' for stdout)");
    lyap->add_option("--jobs", lyap_jobs, "worker threads (env ORBITPREC_JOBS)");
    lyap->add_option("--config", lyap_config, "key=value config file (flags win)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (!run_args.config.empty()) apply_config_file(run, run_args.config);
        return cmd_run(run_mu, run_args);
    }

    if (sweep->parsed()) {
        if (!sweep_args.config.empty()) apply_config_file(sweep, sweep_args.config);
        if (paper_scale) {
            if (sweep->count("--mu-start") == 0) sweep_start = "0.005";
            if (sweep->count("--mu-step") == 0) sweep_step = "0.005";
            if (sweep->count("--N") == 0) sweep_args.steps = 2000;
        }
        const std::vector<std::string> grid = make_grid(sweep_start, sweep_end, sweep_step);
        std::vector<RowResult> rows(grid.size());
        parallel_rows(static_cast<long>(grid.size()), sweep_jobs,
                      [&](long i) { rows[static_cast<size_t>(i)] = sweep_row(grid[i], sweep_args); });
        spot_verify_rows(rows, sweep_args);
        std::string csv = kSweepHeader;
        for (const auto& r : rows) csv += r.csv;
        write_output(sweep_out, csv);
        return 0;
    }

    if (lyap->parsed()) {
        if (!lyap_config.empty()) apply_config_file(lyap, lyap_config);
        std::vector<std::string> grid;
        if (lyap->count("--mu") > 0) {
            grid.push_back(lyap_mu);
        } else {
            grid = make_grid(lyap_start, lyap_end, lyap_step);
        }
        std::vector<std::string> rows(grid.size());
        parallel_rows(static_cast<long>(grid.size()), lyap_jobs, [&](long i) {
            const std::string& mu = grid[static_cast<size_t>(i)];
            std::ostringstream row;
            row << format_decimal(mu) << ',';
            opx_system* raw = nullptr;
            if (opx_system_create(mu.c_str(), "running-error", &raw) != OPX_OK) {
                row << ",,error\n";
                rows[static_cast<size_t>(i)] = row.str();
                return;
            }
            SystemPtr sys(raw);
            double lambda = 0.0;
            double half = 0.0;
            int flagged = 0;
            const int rc = opx_lyapunov(sys.get(), lyap_x0.c_str(), lyap_samples, 200, &lambda,
                                        &half, &flagged);
            if (rc != OPX_OK || !std::isfinite(lambda)) {
                row << ",,flagged\n";
            } else {
                const double rate = std::max(0.0, lambda) / kLn2;
                row << format_double(lambda) << ',' << format_double(rate) << ','
                    << (flagged ? "flagged" : "ok") << '\n';
            }
            rows[static_cast<size_t>(i)] = row.str();
        });
        std::string csv = "mu,lambda_hat,rate,status\n";
        for (const auto& r : rows) csv += r;
        write_output(lyap_out, csv);
        return 0;
    }

    return 0;
}
