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

#include "orbitprec/runerr.hpp"

namespace orbitprec {

namespace {

mpq_class pow10q(long p) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(p >= 0 ? p : -p));
    return p >= 0 ? mpq_class(1, 1) / mpq_class(t) : mpq_class(t);
}

Float up_err(const Float& x) { return x.rounded(kErrPrecision, Rounding::Up); }

Interval outward_enclosure(const Approx& x) {
    return Interval(Float::sub(x.fl, x.err, kErrPrecision, Rounding::Down),
                    Float::add(x.fl, x.err, kErrPrecision, Rounding::Up));
}

// Clamps fl into the domain, folding the clamp distance into err. Assumes
// the enclosure of x meets the domain.
Approx clamp_into(const Approx& x, const Interval& domain) {
    const Float* target = nullptr;
    if (Float::compare(x.fl, domain.lo()) < 0) {
        target = &domain.lo();
    } else if (Float::compare(x.fl, domain.hi()) > 0) {
        target = &domain.hi();
    }
    if (target == nullptr) return x;
    const Float dist = Float::sub(x.fl, *target, kErrPrecision, Rounding::Up).abs();
    return {*target, Float::add(x.err, dist, kErrPrecision, Rounding::Up)};
}

Approx step_impl(const ApproxMap& f, const Approx& x,
                 const std::function<Float(const Float&, long)>& round_error_term) {
    // reject states whose enclosure has left the domain entirely
    Interval::intersect(outward_enclosure(x), f.domain);
    const Approx cur = clamp_into(x, f.domain);

    const long m = cur.fl.precision();
    const Float lips = lipschitz_bound(f, cur);
    const Float next = f.value(cur.fl, m);
    const Float propagated = Float::mul(lips, cur.err, kErrPrecision, Rounding::Up);
    const Float fresh = round_error_term(next, m);
    return {next, Float::add(propagated, fresh, kErrPrecision, Rounding::Up)};
}

}  // namespace

Approx init_approx(const mpq_class& x, long prec, const Interval& domain) {
    if (!domain.contains(x)) throw domain_error("initial value outside the domain");
    const Float fl = round_nearest(x, prec);
    const mpq_class diff = ::abs(fl.to_rational() - x);
    return {fl, Float::from_rational(diff, kErrPrecision, Rounding::Up)};
}

Approx orbit_seed(const mpq_class& x, long prec, const Interval& domain) {
    Approx a = init_approx(x, prec, domain);
    a.err = up_err(a.fl.abs().scaled_pow2(-prec));
    return a;
}

Approx approx_from_interval(const Interval& x, long prec) {
    const Float mid = x.midpoint(prec);
    const mpq_class exact_mid = (x.lo().to_rational() + x.hi().to_rational()) / 2;
    const mpq_class mid_err = ::abs(mid.to_rational() - exact_mid);
    const Float half_width = x.width_upper(kErrPrecision).scaled_pow2(-1);
    const Float rounding = Float::from_rational(mid_err, kErrPrecision, Rounding::Up);
    return {mid, Float::add(half_width, rounding, kErrPrecision, Rounding::Up)};
}

bool prec_holds(const Approx& x, int p) {
    // err <= 10^-p/(1+10^-p) * |fl|  <=>  err * (1 + 10^-p) <= 10^-p * |fl|
    const mpq_class r = pow10q(p);
    const mpq_class err = x.err.to_rational();
    const mpq_class fl_abs = ::abs(x.fl.to_rational());
    return err * (1 + r) <= r * fl_abs;
}

bool abs_err_holds(const Approx& x, int p) {
    return x.err.to_rational() <= pow10q(p);
}

Float lipschitz_bound(const ApproxMap& f, const Approx& x) {
    const Interval clipped = Interval::intersect(outward_enclosure(x), f.domain);
    const Interval slope = f.deriv(clipped, kErrPrecision);
    const Float lo_abs = slope.lo().abs();
    const Float hi_abs = slope.hi().abs();
    return Float::compare(lo_abs, hi_abs) >= 0 ? lo_abs : hi_abs;
}

Approx step(const ApproxMap& f, const Approx& x) {
    return step_impl(f, x, [](const Float& next, long m) {
        return up_err(next.abs().scaled_pow2(-m));
    });
}

Approx step(const ApproxMap& f, const Approx& x, const WilkinsonModel& model) {
    const Float magnitude = model.magnitude(clamp_into(x, f.domain).fl);
    return step_impl(f, x, [&](const Float&, long m) {
        return wilkinson_bound(model.op_count, m, magnitude);
    });
}

Float wilkinson_bound(long op_count, long prec, const Float& magnitude) {
    if (op_count < 0) throw precondition_error("negative op count");
    if (op_count == 0) return Float::zero(kErrPrecision);
    // the 1.06 factor requires K <= 0.1 * 2^prec, i.e. 10K <= 2^prec
    mpz_class limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), 2, static_cast<unsigned long>(prec));
    if (cmp(mpz_class(10 * mpz_class(op_count)), limit) > 0) {
        throw precondition_error("op count too large for this precision (need 10K <= 2^m)");
    }
    if (magnitude.is_zero()) return Float::zero(kErrPrecision);
    // 1.06 * K * 2^-prec * |magnitude|, with 1.06 = 53/50 exactly
    const mpz_class num = 53 * mpz_class(op_count) * ::abs(magnitude.significand());
    const long e = (magnitude.scale() - magnitude.precision()) - prec;
    return Float::from_scaled_fraction(num, mpz_class(50), e, kErrPrecision, Rounding::Up);
}

}  // namespace orbitprec
