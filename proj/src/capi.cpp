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

#include "orbitprec.h"

#include <algorithm>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "orbitprec/decimal.hpp"
#include "orbitprec/dynsys.hpp"
#include "orbitprec/orbit.hpp"

using namespace orbitprec;

struct opx_system {
    LogisticSystem sys;
};

struct opx_result {
    OrbitRun run;
    long min_precision = -1;
    double sigma_est = std::numeric_limits<double>::quiet_NaN();
    double wall_seconds = 0.0;
    int status = OPX_RUN_SUCCESS;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, const char* what) {
    t_last_error = what != nullptr ? what : "";
    return code;
}

template <typename F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const parse_error& e) {
        return fail(OPX_ERR_PARSE, e.what());
    } catch (const domain_error& e) {
        return fail(OPX_ERR_DOMAIN, e.what());
    } catch (const precondition_error& e) {
        return fail(OPX_ERR_PRECONDITION, e.what());
    } catch (const std::bad_alloc& e) {
        return fail(OPX_ERR_NOMEM, e.what());
    } catch (const std::exception& e) {
        return fail(OPX_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OPX_ERR_INTERNAL, "unknown error");
    }
}

long write_buffer(const std::string& s, char* buf, size_t cap) {
    if (buf != nullptr && cap > 0) {
        const size_t n = std::min(cap - 1, s.size());
        std::memcpy(buf, s.data(), n);
        buf[n] = '\0';
    }
    return static_cast<long>(s.size());
}

int run_status_code(const OrbitRun& run) {
    switch (run.status) {
        case RunStatus::Success: return OPX_RUN_SUCCESS;
        case RunStatus::PrecisionFail: return OPX_RUN_PRECISION_FAIL;
        case RunStatus::DomainFail: return OPX_RUN_DOMAIN_FAIL;
    }
    return OPX_RUN_PRECISION_FAIL;
}

// integer multiples of `step` inside [start, end]: k in [kmin, kmax]
struct Grid {
    mpq_class step;
    mpz_class kmin;
    mpz_class kmax;
};

Grid make_grid(const char* start, const char* end, const char* step) {
    const mpq_class lo = parse_rational(start);
    const mpq_class hi = parse_rational(end);
    const mpq_class st = parse_rational(step);
    if (sgn(st) <= 0) throw precondition_error("grid step must be positive");
    if (lo > hi) throw precondition_error("grid start exceeds grid end");
    const mpq_class qmin = lo / st;
    const mpq_class qmax = hi / st;
    Grid g;
    g.step = st;
    mpz_cdiv_q(g.kmin.get_mpz_t(), qmin.get_num().get_mpz_t(), qmin.get_den().get_mpz_t());
    mpz_fdiv_q(g.kmax.get_mpz_t(), qmax.get_num().get_mpz_t(), qmax.get_den().get_mpz_t());
    return g;
}

}  // namespace

extern "C" {

const char* opx_version(void) { return "0.1.0"; }

const char* opx_strerror(int code) {
    switch (code) {
        case OPX_OK: return "ok";
        case OPX_ERR_INVALID_ARGUMENT: return "invalid argument";
        case OPX_ERR_PARSE: return "parse error";
        case OPX_ERR_DOMAIN: return "domain error";
        case OPX_ERR_PRECONDITION: return "precondition violated";
        case OPX_ERR_RANGE: return "index out of range";
        case OPX_ERR_NOMEM: return "out of memory";
        case OPX_ERR_INTERNAL: return "internal error";
        default: return "unknown error code";
    }
}

const char* opx_last_error(void) { return t_last_error.c_str(); }

int opx_system_create(const char* mu, const char* form, opx_system** out) {
    if (mu == nullptr || form == nullptr || out == nullptr) {
        return fail(OPX_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() -> int {
        const auto parsed_form = form_from_name(form);
        if (!parsed_form) return fail(OPX_ERR_INVALID_ARGUMENT, "unknown form name");
        *out = new opx_system{make_logistic(parse_rational(mu), *parsed_form)};
        return OPX_OK;
    });
}

int opx_system_shift(const opx_system* sys, const char* offset, opx_system** out) {
    if (sys == nullptr || offset == nullptr || out == nullptr) {
        return fail(OPX_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() -> int {
        *out = new opx_system{shift_system(sys->sys, parse_rational(offset))};
        return OPX_OK;
    });
}

void opx_system_destroy(opx_system* sys) { delete sys; }

int opx_run_fixed(const opx_system* sys, const char* x0, long steps, int p, long precision,
                  int tolerance_mode, opx_result** out) {
    if (sys == nullptr || x0 == nullptr || out == nullptr) {
        return fail(OPX_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() -> int {
        OrbitOptions options;
        options.mode =
            tolerance_mode == OPX_TOL_ABSOLUTE ? ToleranceMode::Absolute : ToleranceMode::Relative;
        auto r = std::make_unique<opx_result>();
        r->run = run_fixed_precision(sys->sys, parse_rational(x0), steps, p, precision, options);
        r->status = run_status_code(r->run);
        *out = r.release();
        return OPX_OK;
    });
}

int opx_find_min_precision(const opx_system* sys, const char* x0, long steps, int p,
                           int search_mode, long precision_cap, int tolerance_mode,
                           opx_result** out) {
    if (sys == nullptr || x0 == nullptr || out == nullptr) {
        return fail(OPX_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() -> int {
        OrbitOptions options;
        options.mode =
            tolerance_mode == OPX_TOL_ABSOLUTE ? ToleranceMode::Absolute : ToleranceMode::Relative;
        const SearchMode mode =
            search_mode == OPX_SEARCH_INCREMENT ? SearchMode::Increment : SearchMode::BracketBisect;
        SearchResult search =
            find_min_precision(sys->sys, parse_rational(x0), steps, p, mode, precision_cap, options);
        auto r = std::make_unique<opx_result>();
        r->wall_seconds = search.wall_seconds;
        if (search.status == SearchStatus::Found) {
            r->min_precision = search.min_precision;
            r->status = OPX_RUN_SUCCESS;
            if (steps >= 1) {
                r->sigma_est = static_cast<double>(search.min_precision) /
                               static_cast<double>(steps);
            }
        } else {
            r->status = OPX_RUN_CAP_EXCEEDED;
        }
        r->run = std::move(search.run);
        *out = r.release();
        return OPX_OK;
    });
}

void opx_result_destroy(opx_result* r) { delete r; }

int opx_result_status(const opx_result* r) {
    return r == nullptr ? OPX_ERR_INVALID_ARGUMENT : r->status;
}

long opx_result_fail_step(const opx_result* r) { return r == nullptr ? -1 : r->run.fail_step; }

long opx_result_precision(const opx_result* r) { return r == nullptr ? 0 : r->run.precision; }

long opx_result_min_precision(const opx_result* r) {
    return r == nullptr ? -1 : r->min_precision;
}

double opx_result_sigma_est(const opx_result* r) {
    return r == nullptr ? std::numeric_limits<double>::quiet_NaN() : r->sigma_est;
}

double opx_result_wall_seconds(const opx_result* r) {
    return r == nullptr ? 0.0 : r->wall_seconds;
}

long opx_result_point_count(const opx_result* r) {
    return r == nullptr ? 0 : static_cast<long>(r->run.points.size());
}

long opx_result_point_value(const opx_result* r, long index, int digits, char* buf, size_t cap) {
    if (r == nullptr || index < 0 || index >= opx_result_point_count(r)) {
        return -OPX_ERR_RANGE;
    }
    long written = -OPX_ERR_INTERNAL;
    const int rc = guarded([&]() -> int {
        written = write_buffer(r->run.points[static_cast<size_t>(index)].fl.to_decimal(digits),
                               buf, cap);
        return OPX_OK;
    });
    return rc == OPX_OK ? written : -rc;
}

long opx_result_point_error(const opx_result* r, long index, int digits, char* buf, size_t cap) {
    if (r == nullptr || index < 0 || index >= opx_result_point_count(r)) {
        return -OPX_ERR_RANGE;
    }
    long written = -OPX_ERR_INTERNAL;
    const int rc = guarded([&]() -> int {
        written = write_buffer(r->run.points[static_cast<size_t>(index)].err.to_decimal(digits),
                               buf, cap);
        return OPX_OK;
    });
    return rc == OPX_OK ? written : -rc;
}

int opx_lyapunov(const opx_system* sys, const char* x0, long samples, long transient,
                 double* lambda, double* half_width, int* flagged) {
    if (sys == nullptr || x0 == nullptr || lambda == nullptr) {
        return fail(OPX_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() -> int {
        LyapunovOptions options;
        options.samples = samples;
        options.transient = transient;
        const LyapunovEstimate est = lyapunov_estimate(sys->sys, parse_rational(x0), options);
        *lambda = est.lambda;
        if (half_width != nullptr) *half_width = est.half_width;
        if (flagged != nullptr) *flagged = est.status == LyapunovStatus::Ok ? 0 : 1;
        return OPX_OK;
    });
}

int opx_sigma_band(const char* mu, const char* form, const double* lambda_hat, double* lower,
                   double* upper) {
    if (mu == nullptr || form == nullptr || lower == nullptr || upper == nullptr) {
        return fail(OPX_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() -> int {
        const auto parsed_form = form_from_name(form);
        if (!parsed_form) return fail(OPX_ERR_INVALID_ARGUMENT, "unknown form name");
        std::optional<double> lambda;
        if (lambda_hat != nullptr) lambda = *lambda_hat;
        const auto band = analytic_sigma_band(*parsed_form, parse_rational(mu), lambda);
        *lower = band.first;
        *upper = band.second;
        return OPX_OK;
    });
}

int opx_grid_count(const char* start, const char* end, const char* step, long* out_count) {
    if (start == nullptr || end == nullptr || step == nullptr || out_count == nullptr) {
        return fail(OPX_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() -> int {
        const Grid g = make_grid(start, end, step);
        const mpz_class count = g.kmax - g.kmin + 1;
        *out_count = count < 0 ? 0 : count.get_si();
        return OPX_OK;
    });
}

long opx_grid_value(const char* start, const char* end, const char* step, long index, char* buf,
                    size_t cap) {
    if (start == nullptr || end == nullptr || step == nullptr || index < 0) {
        return -OPX_ERR_INVALID_ARGUMENT;
    }
    long written = -OPX_ERR_INTERNAL;
    const int rc = guarded([&]() -> int {
        const Grid g = make_grid(start, end, step);
        const mpz_class count = g.kmax - g.kmin + 1;
        if (count <= 0 || index >= count.get_si()) return fail(OPX_ERR_RANGE, "grid index");
        mpq_class value = mpq_class(g.kmin + index) * g.step;
        value.canonicalize();
        written = write_buffer(value.get_num().get_str() + "/" + value.get_den().get_str(), buf,
                               cap);
        return OPX_OK;
    });
    return rc == OPX_OK ? written : -rc;
}

long opx_format_decimal(const char* rational, int significant_digits, char* buf, size_t cap) {
    if (rational == nullptr) return -OPX_ERR_INVALID_ARGUMENT;
    long written = -OPX_ERR_INTERNAL;
    const int rc = guarded([&]() -> int {
        written = write_buffer(decimal_string(parse_rational(rational), significant_digits), buf,
                               cap);
        return OPX_OK;
    });
    return rc == OPX_OK ? written : -rc;
}

}  // extern "C"
