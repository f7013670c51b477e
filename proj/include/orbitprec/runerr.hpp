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

#ifndef ORBITPREC_RUNERR_HPP
#define ORBITPREC_RUNERR_HPP

#include <functional>

#include "orbitprec/interval.hpp"
#include "orbitprec/mpfloat.hpp"

namespace orbitprec {

/// Error bounds are kept at a small fixed precision and always rounded
/// upward; only the value itself carries the working precision.
inline constexpr long kErrPrecision = 24;

/// A value together with a guaranteed absolute error bound: the claim is
/// |fl - x_true| <= err, i.e. x_true lies in [fl - err, fl + err].
struct Approx {
    Float fl;
    Float err;  // >= 0, precision kErrPrecision, rounded up in every update
};

/// Map interface for the running-error iteration: a correctly rounded value
/// map, an interval enclosure of the derivative, and the invariant domain.
struct ApproxMap {
    std::function<Float(const Float&, long prec)> value;
    std::function<Interval(const Interval&, long prec)> deriv;
    Interval domain;
};

/// Rounds x to `prec` bits and attaches the upward-rounded exact rounding
/// error. Throws domain_error when x lies outside `domain`.
Approx init_approx(const mpq_class& x, long prec, const Interval& domain);

/// Like init_approx but with the orbit-recursion seed err = 2^-prec * |fl|,
/// which dominates the nearest-rounding error.
Approx orbit_seed(const mpq_class& x, long prec, const Interval& domain);

/// Converts an interval enclosure to an Approx: fl is the rounded midpoint,
/// err covers half the width plus the midpoint rounding error.
Approx approx_from_interval(const Interval& x, long prec);

/// Decidable relative-accuracy test: true iff err <= 10^-p/(1+10^-p) * |fl|,
/// compared in exact rational arithmetic (true for fl = 0 only when err = 0).
/// When it holds and the pair encloses x_true, |fl - x_true| <= 10^-p |x_true|.
bool prec_holds(const Approx& x, int p);

/// Absolute variant: err <= 10^-p, exact comparison.
bool abs_err_holds(const Approx& x, int p);

/// Upper bound on sup |f'([fl - err, fl + err] cap D)|, from the derivative
/// enclosure evaluated at the error precision. Throws domain_error when the
/// enclosure misses D entirely.
Float lipschitz_bound(const ApproxMap& f, const Approx& x);

/// One validated step: fl' = f(fl) correctly rounded at fl's precision and
/// err' = up(L * err + 2^-m |fl'|). If fl has drifted outside D while the
/// enclosure still meets D, fl is clamped to the nearest endpoint and the
/// clamp distance is added to err before the step.
Approx step(const ApproxMap& f, const Approx& x);

/// Rounding-error magnitude model for the analysis-mode step: the additive
/// term becomes 1.06 * K * 2^-m * magnitude(fl) instead of 2^-m * |fl'|.
struct WilkinsonModel {
    long op_count = 4;
    std::function<Float(const Float&)> magnitude;
};

Approx step(const ApproxMap& f, const Approx& x, const WilkinsonModel& model);

/// 1.06 * K * 2^-prec * |magnitude|, rounded up. Requires K <= 0.1 * 2^prec
/// (the constant 1.06 is only valid below that op count).
Float wilkinson_bound(long op_count, long prec, const Float& magnitude);

}  // namespace orbitprec

#endif  // ORBITPREC_RUNERR_HPP
