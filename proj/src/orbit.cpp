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

#include "orbitprec/orbit.hpp"

#include <algorithm>
#include <chrono>

namespace orbitprec {

namespace {

bool tolerance_ok(const Approx& a, int p, ToleranceMode mode) {
    return mode == ToleranceMode::Relative ? prec_holds(a, p) : abs_err_holds(a, p);
}

OrbitRun run_running_error(const LogisticSystem& sys, const mpq_class& x0, long steps, int p,
                           long precision, const OrbitOptions& options) {
    OrbitRun out;
    out.precision = precision;
    out.points.reserve(static_cast<size_t>(steps) + 1);

    const ApproxMap map = make_approx_map(sys);
    WilkinsonModel model;
    if (options.wilkinson_error) model = make_wilkinson_model(sys);

    Approx a = orbit_seed(x0, precision, map.domain);
    if (options.wilkinson_error) {
        // the analysis-mode recursion seeds the error at 2^-m
        a.err = Float::from_long(1, kErrPrecision).scaled_pow2(-precision);
    }
    for (long n = 0;; ++n) {
        out.points.push_back(a);
        if (!tolerance_ok(a, p, options.mode)) {
            out.status = RunStatus::PrecisionFail;
            out.fail_step = n;
            return out;
        }
        if (n == steps) break;
        try {
            a = options.wilkinson_error ? step(map, a, model) : step(map, a);
        } catch (const domain_error&) {
            out.status = RunStatus::DomainFail;
            out.fail_step = n + 1;
            return out;
        }
    }
    return out;
}

OrbitRun run_interval_form(const LogisticSystem& sys, const mpq_class& x0, long steps, int p,
                           long precision, const OrbitOptions& options) {
    OrbitRun out;
    out.precision = precision;
    out.points.reserve(static_cast<size_t>(steps) + 1);

    Interval x = Interval::from_rational_outward(x0, precision);
    for (long n = 0;; ++n) {
        const Approx a = approx_from_interval(x, precision);
        out.points.push_back(a);
        if (!tolerance_ok(a, p, options.mode)) {
            out.status = RunStatus::PrecisionFail;
            out.fail_step = n;
            return out;
        }
        if (n == steps) break;
        x = interval_image(sys, x, precision);
    }
    return out;
}

}  // namespace

OrbitRun run_fixed_precision(const LogisticSystem& sys, const mpq_class& x0, long steps, int p,
                             long precision, const OrbitOptions& options) {
    if (steps < 0) throw precondition_error("negative step count");
    if (precision < 1) throw precondition_error("precision must be >= 1");
    const auto [lo, hi] = domain_bounds(sys);
    if (x0 < lo || x0 > hi) throw domain_error("initial value outside the domain");

    if (sys.form == MapForm::RunningError) {
        return run_running_error(sys, x0, steps, p, precision, options);
    }
    return run_interval_form(sys, x0, steps, p, precision, options);
}

SearchResult find_min_precision(const LogisticSystem& sys, const mpq_class& x0, long steps, int p,
                                SearchMode search, long precision_cap,
                                const OrbitOptions& options) {
    if (precision_cap < 1) throw precondition_error("precision cap must be >= 1");
    const auto started = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    SearchResult result;
    if (search == SearchMode::Increment) {
        for (long m = 1; m <= precision_cap; ++m) {
            OrbitRun run = run_fixed_precision(sys, x0, steps, p, m, options);
            if (run.status == RunStatus::Success) {
                result.status = SearchStatus::Found;
                result.min_precision = m;
                result.run = std::move(run);
                result.wall_seconds = elapsed();
                return result;
            }
            result.run = std::move(run);
        }
        result.status = SearchStatus::CapExceeded;
        result.wall_seconds = elapsed();
        return result;
    }

    // BracketBisect: double until the first success, remembering the largest
    // failing precision.
    long known_fail = 0;
    long success = 0;
    OrbitRun success_run;
    for (long m = 1;;) {
        OrbitRun run = run_fixed_precision(sys, x0, steps, p, m, options);
        if (run.status == RunStatus::Success) {
            success = m;
            success_run = std::move(run);
            break;
        }
        known_fail = m;
        result.run = std::move(run);
        if (m >= precision_cap) break;
        m = std::min(m * 2, precision_cap);
    }
    if (success == 0) {
        result.status = SearchStatus::CapExceeded;
        result.wall_seconds = elapsed();
        return result;
    }
    // Bisect (known_fail, success]; every probe is an explicit run, so on
    // exit `success` passed and `success - 1` failed by observation.
    while (success - known_fail > 1) {
        const long mid = known_fail + (success - known_fail) / 2;
        OrbitRun run = run_fixed_precision(sys, x0, steps, p, mid, options);
        if (run.status == RunStatus::Success) {
            success = mid;
            success_run = std::move(run);
        } else {
            known_fail = mid;
        }
    }
    result.status = SearchStatus::Found;
    result.min_precision = success;
    result.run = std::move(success_run);
    result.wall_seconds = elapsed();
    return result;
}

RateReport sigma_estimate(const LogisticSystem& sys, const mpq_class& x0, long steps, int p,
                          const SearchResult& search, std::optional<double> lambda_hat) {
    if (steps < 1) throw precondition_error("rate estimate needs at least one step");
    RateReport report;
    report.mu = sys.mu;
    report.form = sys.form;
    report.x0 = x0;
    report.steps = steps;
    report.p = p;
    report.wall_seconds = search.wall_seconds;
    report.lambda_hat = lambda_hat;
    const bool needs_lambda =
        sys.form == MapForm::MeanValue || sys.form == MapForm::RunningError;
    if (!needs_lambda || lambda_hat) {
        const auto band = analytic_sigma_band(sys.form, sys.mu, lambda_hat);
        report.bound_lower = band.first;
        report.bound_upper = band.second;
    }
    if (search.status == SearchStatus::Found) {
        report.min_precision = search.min_precision;
        report.sigma_est =
            static_cast<double>(search.min_precision) / static_cast<double>(steps);
    } else {
        report.status = RowStatus::NoHalt;
    }
    return report;
}

std::vector<Approx> reference_orbit(const LogisticSystem& sys, const mpq_class& x0, long steps,
                                    long precision) {
    if (steps < 0) throw precondition_error("negative step count");
    if (precision < 1) throw precondition_error("precision must be >= 1");
    const ApproxMap map = make_approx_map(sys);
    std::vector<Approx> points;
    points.reserve(static_cast<size_t>(steps) + 1);
    Approx a = orbit_seed(x0, precision, map.domain);
    points.push_back(a);
    for (long n = 0; n < steps; ++n) {
        a = step(map, a);
        points.push_back(a);
    }
    return points;
}

}  // namespace orbitprec
