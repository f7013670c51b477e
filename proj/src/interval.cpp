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

#include "orbitprec/interval.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace orbitprec {

namespace {

// Exact dyadic value m * 2^e, used for intermediate products and sums.
struct Dyad {
    mpz_class m;
    long e;
};

Dyad dyad_of(const Float& x) {
    return {x.significand(), x.scale() - x.precision()};
}

Dyad dyad_mul(const Float& a, const Float& b) {
    return {mpz_class(a.significand() * b.significand()),
            (a.scale() - a.precision()) + (b.scale() - b.precision())};
}

long dyad_bitlen(const Dyad& d) {
    return static_cast<long>(mpz_sizeinbase(d.m.get_mpz_t(), 2));
}

int dyad_cmp(const Dyad& a, const Dyad& b) {
    const int sa = sgn(a.m);
    const int sb = sgn(b.m);
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // compare binades before aligning significands
    const long ba = dyad_bitlen(a) + a.e;
    const long bb = dyad_bitlen(b) + b.e;
    if (ba != bb) {
        const int mag = ba < bb ? -1 : 1;
        return sa > 0 ? mag : -mag;
    }
    const long g = std::min(a.e, b.e);
    mpz_class am, bm;
    mpz_mul_2exp(am.get_mpz_t(), a.m.get_mpz_t(), static_cast<mp_bitcnt_t>(a.e - g));
    mpz_mul_2exp(bm.get_mpz_t(), b.m.get_mpz_t(), static_cast<mp_bitcnt_t>(b.e - g));
    const int c = cmp(am, bm);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

Float dyad_round(const Dyad& d, long prec, Rounding mode) {
    return Float::from_scaled_fraction(d.m, mpz_class(1), d.e, prec, mode);
}

// c + x as an exact scaled fraction (num/den * 2^exp2) for rational c.
struct ScaledFraction {
    mpz_class num;
    mpz_class den;
    long e;
};

ScaledFraction rational_plus_float(const mpq_class& c, const Float& x) {
    const long g = x.scale() - x.precision();
    const mpz_class& nc = c.get_num();
    const mpz_class& dc = c.get_den();
    mpz_class num;
    long e;
    if (g >= 0) {
        mpz_class shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), x.significand().get_mpz_t(),
                     static_cast<mp_bitcnt_t>(g));
        num = shifted * dc + nc;
        e = 0;
    } else {
        mpz_class shifted_nc;
        mpz_mul_2exp(shifted_nc.get_mpz_t(), nc.get_mpz_t(), static_cast<mp_bitcnt_t>(-g));
        num = x.significand() * dc + shifted_nc;
        e = g;
    }
    return {std::move(num), dc, e};
}

Float one_at(long prec) { return Float::from_long(1, prec); }

}  // namespace

Interval::Interval(Float lo, Float hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (Float::compare(lo_, hi_) > 0) throw precondition_error("interval endpoints out of order");
}

Interval Interval::point(const Float& x) { return Interval(x, x); }

Interval Interval::from_rational_outward(const mpq_class& q, long prec) {
    return Interval(Float::from_rational(q, prec, Rounding::Down),
                    Float::from_rational(q, prec, Rounding::Up));
}

Interval Interval::from_rationals_outward(const mpq_class& lo, const mpq_class& hi, long prec) {
    return Interval(Float::from_rational(lo, prec, Rounding::Down),
                    Float::from_rational(hi, prec, Rounding::Up));
}

Float Interval::width_upper(long prec) const {
    return Float::sub(hi_, lo_, prec, Rounding::Up);
}

Float Interval::midpoint(long prec) const {
    // exact (lo + hi) / 2, then one rounding; the result cannot escape the
    // interval since both endpoints are representable
    const Dyad a = dyad_of(lo_);
    const Dyad b = dyad_of(hi_);
    const long g = std::min(a.e, b.e);
    mpz_class am, bm;
    mpz_mul_2exp(am.get_mpz_t(), a.m.get_mpz_t(), static_cast<mp_bitcnt_t>(a.e - g));
    mpz_mul_2exp(bm.get_mpz_t(), b.m.get_mpz_t(), static_cast<mp_bitcnt_t>(b.e - g));
    return Float::from_scaled_fraction(am + bm, mpz_class(1), g - 1, prec, Rounding::Nearest);
}

bool Interval::contains(const mpq_class& x) const {
    return lo_.to_rational() <= x && x <= hi_.to_rational();
}

bool Interval::encloses(const Interval& other) const {
    return Float::compare(lo_, other.lo_) <= 0 && Float::compare(other.hi_, hi_) <= 0;
}

Interval Interval::add(const Interval& a, const Interval& b, long prec) {
    return Interval(Float::add(a.lo_, b.lo_, prec, Rounding::Down),
                    Float::add(a.hi_, b.hi_, prec, Rounding::Up));
}

Interval Interval::sub(const Interval& a, const Interval& b, long prec) {
    return Interval(Float::sub(a.lo_, b.hi_, prec, Rounding::Down),
                    Float::sub(a.hi_, b.lo_, prec, Rounding::Up));
}

Interval Interval::mul(const Interval& a, const Interval& b, long prec) {
    const std::array<Dyad, 4> cand = {dyad_mul(a.lo_, b.lo_), dyad_mul(a.lo_, b.hi_),
                                      dyad_mul(a.hi_, b.lo_), dyad_mul(a.hi_, b.hi_)};
    int lo_idx = 0;
    int hi_idx = 0;
    for (int i = 1; i < 4; ++i) {
        if (dyad_cmp(cand[i], cand[lo_idx]) < 0) lo_idx = i;
        if (dyad_cmp(cand[i], cand[hi_idx]) > 0) hi_idx = i;
    }
    return Interval(dyad_round(cand[lo_idx], prec, Rounding::Down),
                    dyad_round(cand[hi_idx], prec, Rounding::Up));
}

Interval Interval::intersect(const Interval& a, const Interval& b) {
    const Float& lo = Float::compare(a.lo_, b.lo_) >= 0 ? a.lo_ : b.lo_;
    const Float& hi = Float::compare(a.hi_, b.hi_) <= 0 ? a.hi_ : b.hi_;
    if (Float::compare(lo, hi) > 0) throw domain_error("empty interval intersection");
    return Interval(lo, hi);
}

Interval scale_by_rational(const mpq_class& c, const Interval& x, long prec) {
    if (sgn(c) == 0) return Interval::point(Float::zero(prec));
    const auto scaled = [&](const Float& v, Rounding mode) {
        if (v.is_zero()) return Float::zero(prec);
        return Float::from_scaled_fraction(mpz_class(c.get_num() * v.significand()), c.get_den(),
                                           v.scale() - v.precision(), prec, mode);
    };
    if (sgn(c) > 0) {
        return Interval(scaled(x.lo(), Rounding::Down), scaled(x.hi(), Rounding::Up));
    }
    return Interval(scaled(x.hi(), Rounding::Down), scaled(x.lo(), Rounding::Up));
}

Interval add_rational(const mpq_class& c, const Interval& x, long prec) {
    const ScaledFraction lo = rational_plus_float(c, x.lo());
    const ScaledFraction hi = rational_plus_float(c, x.hi());
    return Interval(Float::from_scaled_fraction(lo.num, lo.den, lo.e, prec, Rounding::Down),
                    Float::from_scaled_fraction(hi.num, hi.den, hi.e, prec, Rounding::Up));
}

Interval logistic_factored_range(const mpq_class& mu, const Interval& x, long prec) {
    const Interval mux = scale_by_rational(mu, x, prec);
    const Interval one_minus = Interval::sub(Interval::point(one_at(prec)), x, prec);
    return Interval::mul(mux, one_minus, prec);
}

Interval logistic_expanded_range(const mpq_class& mu, const Interval& x, long prec) {
    const Interval sq = Interval::mul(x, x, prec);
    const Interval diff = Interval::sub(x, sq, prec);
    return scale_by_rational(mu, diff, prec);
}

Interval logistic_centered_range(const mpq_class& mu, const Interval& x, long prec) {
    const Interval centered = add_rational(mpq_class(-1, 2), x, prec);
    const Interval sq = Interval::mul(centered, centered, prec);
    const Interval scaled = scale_by_rational(mu, sq, prec);
    const Interval quarter = Interval::from_rational_outward(mpq_class(mu / 4), prec);
    return Interval::sub(quarter, scaled, prec);
}

Interval logistic_derivative_range(const mpq_class& mu, const Interval& x, long prec) {
    // 1 - 2x is exact per endpoint up to the final rounding
    const Interval doubled(x.lo().scaled_pow2(1), x.hi().scaled_pow2(1));
    const Interval inner = Interval::sub(Interval::point(one_at(prec)), doubled, prec);
    return scale_by_rational(mu, inner, prec);
}

Interval logistic_mean_value_range(const mpq_class& mu, const Interval& x, long prec) {
    // the expansion point must lie inside x for the mean value enclosure; a
    // midpoint rounded at a precision coarser than the endpoints can escape
    Float mid = x.midpoint(prec);
    if (Float::compare(mid, x.lo()) < 0) mid = x.lo();
    if (Float::compare(mid, x.hi()) > 0) mid = x.hi();
    const mpq_class mid_q = mid.to_rational();
    const mpq_class f_mid = mu * mid_q * (1 - mid_q);
    const Interval value = Interval::from_rational_outward(f_mid, prec);
    const Interval slope = logistic_derivative_range(mu, x, prec);
    const Interval offset = Interval::sub(x, Interval::point(mid), prec);
    return Interval::add(value, Interval::mul(slope, offset, prec), prec);
}

}  // namespace orbitprec
