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

#ifndef ORBITPREC_ORBIT_HPP
#define ORBITPREC_ORBIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "orbitprec/dynsys.hpp"
#include "orbitprec/runerr.hpp"

namespace orbitprec {

enum class ToleranceMode { Relative, Absolute };
enum class SearchMode { Increment, BracketBisect };
enum class RunStatus { Success, PrecisionFail, DomainFail };

struct OrbitRun {
    std::vector<Approx> points;  // includes the failing point, length <= steps + 1
    RunStatus status = RunStatus::Success;
    long fail_step = -1;  // first step whose tolerance (or domain) check failed
    long precision = 0;
};

struct OrbitOptions {
    ToleranceMode mode = ToleranceMode::Relative;
    bool wilkinson_error = false;  // analysis-mode error recursion (RunningError form only)
};

/// Runs the orbit at fixed precision, checking the accuracy predicate at
/// every point and stopping at the first failure. Interval forms iterate an
/// enclosure and test its midpoint/half-width pair; the RunningError form
/// iterates a value with the Lipschitz error recursion.
OrbitRun run_fixed_precision(const LogisticSystem& sys, const mpq_class& x0, long steps, int p,
                             long precision, const OrbitOptions& options = {});

inline constexpr long kDefaultPrecisionCap = 1L << 20;

enum class SearchStatus { Found, CapExceeded };

struct SearchResult {
    SearchStatus status = SearchStatus::Found;
    long min_precision = 0;  // meaningful when Found
    OrbitRun run;            // the successful run at min_precision, or the last failure
    double wall_seconds = 0.0;
};

/// Minimal working precision for a full-length accurate orbit. Increment
/// mode scans m = 1, 2, 3, ...; BracketBisect doubles until success and then
/// bisects. Both return with an explicit successful run at m_min and an
/// explicit failing run at m_min - 1, so no termination monotonicity is
/// assumed.
SearchResult find_min_precision(const LogisticSystem& sys, const mpq_class& x0, long steps, int p,
                                SearchMode search, long precision_cap = kDefaultPrecisionCap,
                                const OrbitOptions& options = {});

enum class RowStatus { Ok, NoHalt };

struct RateReport {
    mpq_class mu;
    MapForm form = MapForm::RunningError;
    mpq_class x0;
    long steps = 0;
    int p = 0;
    std::optional<long> min_precision;
    std::optional<double> sigma_est;  // min_precision / steps
    // analytic band; absent when the form needs a Lyapunov estimate and none
    // was supplied
    std::optional<double> bound_lower;
    std::optional<double> bound_upper;
    std::optional<double> lambda_hat;
    double wall_seconds = 0.0;
    RowStatus status = RowStatus::Ok;
};

/// Assembles the measurement record for one search, attaching the analytic
/// rate band (and the Lyapunov estimate when the form requires one).
RateReport sigma_estimate(const LogisticSystem& sys, const mpq_class& x0, long steps, int p,
                          const SearchResult& search, std::optional<double> lambda_hat = {});

/// High-precision validated reference orbit (no accuracy predicate); used as
/// ground truth by enclosure tests. Callers pick `precision` well above the
/// precision under test.
std::vector<Approx> reference_orbit(const LogisticSystem& sys, const mpq_class& x0, long steps,
                                    long precision);

}  // namespace orbitprec

#endif  // ORBITPREC_ORBIT_HPP
