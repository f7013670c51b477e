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

#ifndef ORBITPREC_DYNSYS_HPP
#define ORBITPREC_DYNSYS_HPP

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "orbitprec/interval.hpp"
#include "orbitprec/mpfloat.hpp"
#include "orbitprec/runerr.hpp"

namespace orbitprec {

/// Evaluation strategy for one orbit step. The first four iterate interval
/// enclosures; RunningError iterates a value plus running error bound.
enum class MapForm {
    Factored,      // mu*x*(1-x)
    Expanded,      // mu*(x-x^2)
    Centered,      // mu/4 - mu*(x-1/2)^2
    MeanValue,     // f(mid) + f'(X)(X - mid)
    RunningError,  // correctly rounded f with Lipschitz error recursion
};

const char* form_name(MapForm form);  // "form1", "form2", "form3", "mean-value", "running-error"
std::optional<MapForm> form_from_name(std::string_view name);

/// The logistic family f(x) = mu*x*(1-x) on [0,1], optionally conjugated by
/// a domain shift: x -> f(x - shift) + shift on [shift, 1 + shift].
struct LogisticSystem {
    mpq_class mu;
    MapForm form = MapForm::RunningError;
    mpq_class shift = 0;
};

LogisticSystem make_logistic(const mpq_class& mu, MapForm form);  // requires mu in (0, 4]
/// Conjugated copy with shift increased by `offset`; the new domain minimum
/// must be positive (this is how orbits are kept away from zero).
LogisticSystem shift_system(const LogisticSystem& sys, const mpq_class& offset);

mpq_class apply_exact(const LogisticSystem& sys, const mpq_class& x);
mpq_class derivative_exact(const LogisticSystem& sys, const mpq_class& x);
Float apply_rounded(const LogisticSystem& sys, const Float& x, long prec);  // correctly rounded
std::pair<mpq_class, mpq_class> domain_bounds(const LogisticSystem& sys);
Interval domain_interval(const LogisticSystem& sys, long prec);
Interval derivative_range(const LogisticSystem& sys, const Interval& x, long prec);
/// One interval-form step (Factored/Expanded/Centered/MeanValue).
Interval interval_image(const LogisticSystem& sys, const Interval& x, long prec);
/// Running-error map interface for runerr::step.
ApproxMap make_approx_map(const LogisticSystem& sys);
/// Analysis-mode rounding-error magnitudes: K = 4 and E(x) = x for mu <= 1,
/// mu/4 otherwise.
WilkinsonModel make_wilkinson_model(const LogisticSystem& sys);

enum class Stability { Stable, Unstable, Hyperbolic };

struct FixedPoint {
    mpq_class point;
    mpq_class derivative;
    Stability stability;
};

/// Fixed points of the (unshifted) logistic map: x = 0 always, and
/// x = 1 - 1/mu when mu > 1, with exact derivatives and stability class.
std::vector<FixedPoint> fixed_points(const mpq_class& mu);

/// log truncated below at log(alpha); requires x > 0 (domain_error) and
/// alpha > 0 (precondition_error).
double eta_alpha(double x, double alpha);

enum class LyapunovStatus {
    Ok,
    SingularDerivative,     // some samples hit the derivative underflow guard
    InsufficientPrecision,  // the validated orbit never reached 10^-3 relative accuracy
};

struct LyapunovEstimate {
    double lambda = 0.0;
    double half_width = 0.0;  // from the per-sample derivative enclosures
    LyapunovStatus status = LyapunovStatus::Ok;
    long samples_used = 0;
    long precision = 0;  // working precision of the validated orbit
};

struct LyapunovOptions {
    long samples = 10000;
    long transient = 200;
    std::optional<double> alpha;  // truncate log|f'| below at log(alpha)
    long precision = 0;           // 0: grow precision until the orbit validates
};

/// Birkhoff average of log|f'| along a validated orbit. Each sample is
/// bracketed by the derivative enclosure over [fl - err, fl + err]; samples
/// whose |f'| cannot be bounded away from 2^(-2m) are excluded and flagged
/// (unless alpha truncation is active).
LyapunovEstimate lyapunov_estimate(const LogisticSystem& sys, const mpq_class& x0,
                                   const LyapunovOptions& options = {});

/// Truncated-log variant (eta_alpha applied to |f'|); requires alpha > 0.
LyapunovEstimate lambda_bar_alpha_estimate(const LogisticSystem& sys, const mpq_class& x0,
                                           long samples, double alpha, long precision = 0);

/// Per-form analytic band (lower, upper) for the loss-of-significance rate,
/// in bits per iteration. MeanValue/RunningError require a Lyapunov estimate
/// and return the point band max(0, lambda)/ln 2.
std::pair<double, double> analytic_sigma_band(MapForm form, const mpq_class& mu,
                                              std::optional<double> lambda_hat = {});

}  // namespace orbitprec

#endif  // ORBITPREC_DYNSYS_HPP
