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

#include "orbitprec/dynsys.hpp"

#include <cmath>
#include <limits>

namespace orbitprec {

namespace {

constexpr double kLn2 = 0.6931471805599453;

mpq_class unshifted(const LogisticSystem& sys, const mpq_class& x) {
    return sgn(sys.shift) == 0 ? x : mpq_class(x - sys.shift);
}

}  // namespace

const char* form_name(MapForm form) {
    switch (form) {
        case MapForm::Factored: return "form1";
        case MapForm::Expanded: return "form2";
        case MapForm::Centered: return "form3";
        case MapForm::MeanValue: return "mean-value";
        case MapForm::RunningError: return "running-error";
    }
    return "?";
}

std::optional<MapForm> form_from_name(std::string_view name) {
    if (name == "form1") return MapForm::Factored;
    if (name == "form2") return MapForm::Expanded;
    if (name == "form3") return MapForm::Centered;
    if (name == "mean-value") return MapForm::MeanValue;
    if (name == "running-error") return MapForm::RunningError;
    return std::nullopt;
}

LogisticSystem make_logistic(const mpq_class& mu, MapForm form) {
    if (sgn(mu) <= 0 || mu > 4) throw precondition_error("mu must lie in (0, 4]");
    return LogisticSystem{mu, form, mpq_class(0)};
}

LogisticSystem shift_system(const LogisticSystem& sys, const mpq_class& offset) {
    mpq_class total = sys.shift + offset;
    if (sgn(total) <= 0) {
        throw precondition_error("shift must move the domain minimum above zero");
    }
    return LogisticSystem{sys.mu, sys.form, std::move(total)};
}

mpq_class apply_exact(const LogisticSystem& sys, const mpq_class& x) {
    const mpq_class v = unshifted(sys, x);
    return sys.mu * v * (1 - v) + sys.shift;
}

mpq_class derivative_exact(const LogisticSystem& sys, const mpq_class& x) {
    const mpq_class v = unshifted(sys, x);
    return sys.mu * (1 - 2 * v);
}

Float apply_rounded(const LogisticSystem& sys, const Float& x, long prec) {
    return round_nearest(apply_exact(sys, x.to_rational()), prec);
}

std::pair<mpq_class, mpq_class> domain_bounds(const LogisticSystem& sys) {
    return {sys.shift, mpq_class(sys.shift + 1)};
}

Interval domain_interval(const LogisticSystem& sys, long prec) {
    const auto [lo, hi] = domain_bounds(sys);
    return Interval::from_rationals_outward(lo, hi, prec);
}

Interval derivative_range(const LogisticSystem& sys, const Interval& x, long prec) {
    if (sgn(sys.shift) == 0) return logistic_derivative_range(sys.mu, x, prec);
    return logistic_derivative_range(sys.mu, add_rational(mpq_class(-sys.shift), x, prec), prec);
}

Interval interval_image(const LogisticSystem& sys, const Interval& x, long prec) {
    const bool shifted = sgn(sys.shift) != 0;
    const Interval base = shifted ? add_rational(mpq_class(-sys.shift), x, prec) : x;
    Interval image = [&] {
        switch (sys.form) {
            case MapForm::Factored: return logistic_factored_range(sys.mu, base, prec);
            case MapForm::Expanded: return logistic_expanded_range(sys.mu, base, prec);
            case MapForm::Centered: return logistic_centered_range(sys.mu, base, prec);
            case MapForm::MeanValue: return logistic_mean_value_range(sys.mu, base, prec);
            case MapForm::RunningError:
                throw precondition_error("interval_image requires an interval form");
        }
        throw precondition_error("unknown form");
    }();
    return shifted ? add_rational(sys.shift, image, prec) : image;
}

ApproxMap make_approx_map(const LogisticSystem& sys) {
    ApproxMap map{
        [sys](const Float& x, long prec) { return apply_rounded(sys, x, prec); },
        [sys](const Interval& x, long prec) { return derivative_range(sys, x, prec); },
        domain_interval(sys, 64),
    };
    return map;
}

WilkinsonModel make_wilkinson_model(const LogisticSystem& sys) {
    WilkinsonModel model;
    model.op_count = 4;  // three arithmetic operations plus the rounding of mu
    if (sys.mu <= 1) {
        model.magnitude = [](const Float& x) { return x.abs(); };
    } else {
        const Float quarter =
            Float::from_rational(mpq_class(sys.mu / 4), kErrPrecision, Rounding::Up);
        model.magnitude = [quarter](const Float&) { return quarter; };
    }
    return model;
}

std::vector<FixedPoint> fixed_points(const mpq_class& mu) {
    if (sgn(mu) <= 0 || mu > 4) throw precondition_error("mu must lie in (0, 4]");
    const auto classify = [](const mpq_class& d) {
        const mpq_class a = ::abs(d);
        if (a < 1) return Stability::Stable;
        if (a == 1) return Stability::Hyperbolic;
        return Stability::Unstable;
    };
    std::vector<FixedPoint> out;
    out.push_back({mpq_class(0), mu, classify(mu)});
    if (mu > 1) {
        const mpq_class p = 1 - mpq_class(1) / mu;
        const mpq_class d = 2 - mu;
        out.push_back({p, d, classify(d)});
    }
    return out;
}

double eta_alpha(double x, double alpha) {
    if (!(alpha > 0)) throw precondition_error("alpha must be positive");
    if (!(x > 0)) throw domain_error("eta_alpha requires a positive argument");
    return std::log(std::max(x, alpha));
}

namespace {

struct ValidatedPoints {
    std::vector<Approx> points;
    bool validated = false;
    long precision = 0;
};

// Runs the running-error engine for `total` steps at precision m, requiring
// 10^-3 relative accuracy at every point.
ValidatedPoints validated_orbit(const LogisticSystem& sys, const mpq_class& x0, long total,
                                long precision) {
    const ApproxMap map = make_approx_map(sys);
    const auto attempt = [&](long m) {
        ValidatedPoints out;
        out.precision = m;
        out.points.reserve(static_cast<size_t>(total) + 1);
        Approx a = orbit_seed(x0, m, map.domain);
        for (long n = 0;; ++n) {
            out.points.push_back(a);
            if (!prec_holds(a, 3)) return out;
            if (n == total) break;
            try {
                a = step(map, a);
            } catch (const domain_error&) {
                return out;
            }
        }
        out.validated = true;
        return out;
    };

    if (precision > 0) return attempt(precision);
    ValidatedPoints last;
    for (long m = 64; m <= (1L << 17); m *= 2) {
        last = attempt(m);
        if (last.validated) break;
    }
    return last;
}

}  // namespace

LyapunovEstimate lyapunov_estimate(const LogisticSystem& sys, const mpq_class& x0,
                                   const LyapunovOptions& options) {
    if (options.samples < 1) throw precondition_error("need at least one sample");
    if (options.transient < 0) throw precondition_error("negative transient");
    if (options.alpha && !(*options.alpha > 0)) throw precondition_error("alpha must be positive");

    const long total = options.transient + options.samples;
    const ValidatedPoints orbit = validated_orbit(sys, x0, total, options.precision);

    LyapunovEstimate est;
    est.precision = orbit.precision;
    const Interval domain = domain_interval(sys, 64);
    const Float guard = Float::from_long(1, 1).scaled_pow2(-2 * orbit.precision);

    double sum = 0.0;
    double width_sum = 0.0;
    bool singular = false;
    const long first = options.transient;
    const long last_excl =
        std::min<long>(total, static_cast<long>(orbit.points.size())) ;
    for (long k = first; k < last_excl; ++k) {
        const Approx& pt = orbit.points[static_cast<size_t>(k)];
        Interval enclosure(Float::sub(pt.fl, pt.err, kErrPrecision, Rounding::Down),
                           Float::add(pt.fl, pt.err, kErrPrecision, Rounding::Up));
        Interval clipped = [&] {
            try {
                return Interval::intersect(enclosure, domain);
            } catch (const domain_error&) {
                return enclosure;
            }
        }();
        const Interval slope = derivative_range(sys, clipped, kErrPrecision);

        // |f'| range over the enclosure
        Float lo_abs = Float::zero(kErrPrecision);
        Float hi_abs = Float::zero(kErrPrecision);
        if (slope.lo().sign() >= 0) {
            lo_abs = slope.lo();
            hi_abs = slope.hi();
        } else if (slope.hi().sign() <= 0) {
            lo_abs = slope.hi().abs();
            hi_abs = slope.lo().abs();
        } else {
            hi_abs = Float::compare_abs(slope.lo(), slope.hi()) >= 0 ? slope.lo().abs()
                                                                     : slope.hi().abs();
        }

        double log_lo;
        double log_hi;
        if (options.alpha) {
            const double ln_alpha = std::log(*options.alpha);
            log_lo = lo_abs.is_zero() ? ln_alpha : std::max(ln_alpha, lo_abs.log2_abs() * kLn2);
            log_hi = hi_abs.is_zero() ? ln_alpha : std::max(ln_alpha, hi_abs.log2_abs() * kLn2);
        } else {
            if (lo_abs.is_zero() || Float::compare(lo_abs, guard) < 0) {
                singular = true;  // excluded: log singularity below the underflow guard
                continue;
            }
            log_lo = lo_abs.log2_abs() * kLn2;
            log_hi = hi_abs.log2_abs() * kLn2;
        }
        sum += 0.5 * (log_lo + log_hi);
        width_sum += 0.5 * (log_hi - log_lo);
        ++est.samples_used;
    }

    if (est.samples_used > 0) {
        est.lambda = sum / static_cast<double>(est.samples_used);
        est.half_width = width_sum / static_cast<double>(est.samples_used);
    } else {
        est.lambda = std::numeric_limits<double>::quiet_NaN();
        est.half_width = std::numeric_limits<double>::quiet_NaN();
    }
    if (!orbit.validated) {
        est.status = LyapunovStatus::InsufficientPrecision;
    } else if (singular) {
        est.status = LyapunovStatus::SingularDerivative;
    }
    return est;
}

LyapunovEstimate lambda_bar_alpha_estimate(const LogisticSystem& sys, const mpq_class& x0,
                                           long samples, double alpha, long precision) {
    LyapunovOptions options;
    options.samples = samples;
    options.alpha = alpha;
    options.precision = precision;
    return lyapunov_estimate(sys, x0, options);
}

std::pair<double, double> analytic_sigma_band(MapForm form, const mpq_class& mu,
                                              std::optional<double> lambda_hat) {
    const double mu_d = mpq_class(mu).get_d();
    const double ld_mu = std::log2(mu_d);
    switch (form) {
        case MapForm::Factored:
            return {0.0, std::max(0.0, ld_mu)};
        case MapForm::Expanded:
            return {std::max(0.0, ld_mu), std::max(0.0, std::log2(3.0 * mu_d))};
        case MapForm::Centered:
            if (mu < 1) return {0.0, -ld_mu};
            return {0.0, std::max(0.0, ld_mu)};
        case MapForm::MeanValue:
        case MapForm::RunningError: {
            if (!lambda_hat) {
                throw precondition_error("a Lyapunov estimate is required for this form's band");
            }
            const double rate = std::max(0.0, *lambda_hat) / kLn2;
            return {rate, rate};
        }
    }
    throw precondition_error("unknown form");
}

}  // namespace orbitprec
