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

#include <doctest.h>

#include <array>
#include <utility>

#include "orbitprec/dynsys.hpp"
#include "orbitprec/interval.hpp"
#include "oracle.hpp"

using namespace orbitprec;

namespace {

mpq_class q(long num, long den) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

Interval iv(const mpq_class& lo, const mpq_class& hi, long prec = 32) {
    return Interval::from_rationals_outward(lo, hi, prec);
}

oracle::QInterval to_q(const Interval& x) {
    return {x.lo().to_rational(), x.hi().to_rational()};
}

bool encloses_q(const Interval& outer, const oracle::QInterval& inner) {
    return outer.lo().to_rational() <= inner.lo && inner.hi <= outer.hi().to_rational();
}

Interval natural(MapForm form, const mpq_class& mu, const Interval& x, long prec) {
    switch (form) {
        case MapForm::Factored: return logistic_factored_range(mu, x, prec);
        case MapForm::Expanded: return logistic_expanded_range(mu, x, prec);
        case MapForm::Centered: return logistic_centered_range(mu, x, prec);
        default: return logistic_mean_value_range(mu, x, prec);
    }
}

oracle::QInterval natural_oracle(MapForm form, const mpq_class& mu, const oracle::QInterval& x) {
    switch (form) {
        case MapForm::Factored: return oracle::factored(mu, x);
        case MapForm::Expanded: return oracle::expanded(mu, x);
        case MapForm::Centered: return oracle::centered(mu, x);
        default: return oracle::mean_value(mu, x);
    }
}

}  // namespace

TEST_CASE("interval multiplication of the unit square") {
    const Interval u = iv(0, 1);
    const Interval p = Interval::mul(u, u, 32);
    CHECK(p.lo().to_rational() == 0);
    CHECK(p.hi().to_rational() == 1);
}

TEST_CASE("interval subtraction of the unit interval from itself") {
    const Interval u = iv(0, 1);
    const Interval d = Interval::sub(u, u, 32);
    CHECK(d.lo().to_rational() == -1);
    CHECK(d.hi().to_rational() == 1);
}

TEST_CASE("degenerate interval addition is exact") {
    const Interval a = iv(q(1, 4), q(1, 4));
    const Interval b = iv(q(1, 2), q(1, 2));
    const Interval s = Interval::add(a, b, 32);
    CHECK(s.lo().to_rational() == q(3, 4));
    CHECK(s.hi().to_rational() == q(3, 4));
}

TEST_CASE("width and midpoint") {
    const Interval x = iv(q(1, 8), q(1, 4));
    CHECK(x.width_upper(24).to_rational() == q(1, 8));
    CHECK(iv(q(1, 2), q(1, 2)).width_upper(24).is_zero());
    const Interval y = iv(q(2, 5), q(3, 5), 20);
    const mpq_class mid = y.midpoint(20).to_rational();
    CHECK(::abs(mid - q(1, 2)) <= q(1, 100000));
}

TEST_CASE("midpoint stays inside when endpoints share its precision") {
    oracle::Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        const long t = rng.integer(1, 16);
        mpq_class a = rng.unit_rational();
        mpq_class b = rng.unit_rational();
        if (a > b) std::swap(a, b);
        const Interval x = iv(a, b, t);
        const Float mid = x.midpoint(t);
        CHECK(Float::compare(x.lo(), mid) <= 0);
        CHECK(Float::compare(mid, x.hi()) <= 0);
    }
}

TEST_CASE("mean value form encloses f even at a coarser evaluation precision") {
    // the rounded midpoint of a fine interval can land outside it; the form
    // clamps its expansion point, so the enclosure must survive
    oracle::Rng rng(32);
    for (int i = 0; i < 150; ++i) {
        const long t = rng.integer(1, 10);
        const mpq_class mu = rng.rational(1, 4000, 1000);
        if (sgn(mu) <= 0 || mu > 4) continue;
        mpq_class a = rng.unit_rational();
        mpq_class b = rng.unit_rational();
        if (a > b) std::swap(a, b);
        const Interval x = iv(a, b, 48);
        const Interval y = logistic_mean_value_range(mu, x, t);
        for (int j = 0; j < 3; ++j) {
            const mpq_class pt = a + mpq_class(j, 2) * (b - a);
            CHECK(y.contains(oracle::logistic(mu, pt)));
        }
    }
}

TEST_CASE("factored form on an exact dyadic box") {
    // mu=2, X=[1/8, 1/4]: idealized endpoints [2*l*(1-u), 2*u*(1-l)]
    const Interval x = iv(q(1, 8), q(1, 4), 30);
    const Interval y = logistic_factored_range(mpq_class(2), x, 30);
    CHECK(y.lo().to_rational() == q(3, 16));
    CHECK(y.hi().to_rational() == q(7, 16));
    CHECK(y.width_upper(24).to_rational() == q(1, 4));  // mu * width
}

TEST_CASE("centered form at the vertex point") {
    const Interval x = iv(q(1, 2), q(1, 2), 30);
    const Interval y = logistic_centered_range(mpq_class(3), x, 30);
    CHECK(y.lo().to_rational() == q(3, 4));
    CHECK(y.hi().to_rational() == q(3, 4));
}

TEST_CASE("expanded form over the unit interval at mu=1") {
    const Interval y = logistic_expanded_range(mpq_class(1), iv(0, 1), 30);
    CHECK(y.lo().to_rational() == -1);
    CHECK(y.hi().to_rational() == 1);
}

TEST_CASE("mean value form matches the exact oracle on [0.4, 0.6]") {
    const oracle::QInterval exact = oracle::mean_value(mpq_class(2), {q(2, 5), q(3, 5)});
    CHECK(exact.lo == q(46, 100));
    CHECK(exact.hi == q(54, 100));
    // the rounded evaluation encloses the exact one
    const Interval x = iv(q(2, 5), q(3, 5), 40);
    const Interval y = logistic_mean_value_range(mpq_class(2), x, 40);
    CHECK(encloses_q(y, oracle::mean_value(mpq_class(2), to_q(x))));
}

TEST_CASE("mean value form on a point interval is a tight enclosure of f") {
    const Interval x = iv(q(22, 100), q(22, 100), 40);
    const Interval y = logistic_mean_value_range(q(15, 4), x, 40);
    const mpq_class f = oracle::logistic(q(15, 4), x.lo().to_rational());
    CHECK(y.contains(f));
    CHECK(y.width_upper(24).to_rational() <= ::abs(f) * q(1, 1L << 36));
    // and at the vertex: encloses mu/4
    const Interval v = logistic_mean_value_range(q(15, 4), iv(q(1, 2), q(1, 2), 40), 40);
    CHECK(v.contains(q(15, 16)));
}

TEST_CASE("intersection reuses endpoints exactly") {
    const Interval a = iv(q(-1, 10), q(3, 10));
    const Interval d = iv(0, 1);
    const Interval r = Interval::intersect(a, d);
    CHECK(Float::compare(r.lo(), d.lo()) == 0);
    CHECK(Float::compare(r.hi(), a.hi()) == 0);
    const Interval inside = iv(q(2, 10), q(4, 10));
    const Interval s = Interval::intersect(inside, d);
    CHECK(Float::compare(s.lo(), inside.lo()) == 0);
    CHECK(Float::compare(s.hi(), inside.hi()) == 0);
    CHECK_THROWS_AS(Interval::intersect(iv(q(3, 2), 2), d), domain_error);
}

TEST_CASE("outward rounding brackets exact endpoint arithmetic") {
    oracle::Rng rng(37);
    for (int i = 0; i < 300; ++i) {
        const long t = rng.integer(4, 24);
        mpq_class a = rng.rational(-500, 500, 97);
        mpq_class b = rng.rational(-500, 500, 97);
        if (a > b) std::swap(a, b);
        mpq_class c = rng.rational(-500, 500, 97);
        mpq_class d = rng.rational(-500, 500, 97);
        if (c > d) std::swap(c, d);
        const Interval x = iv(a, b, 40);
        const Interval y = iv(c, d, 40);
        const oracle::QInterval qx = to_q(x);
        const oracle::QInterval qy = to_q(y);
        CHECK(encloses_q(Interval::add(x, y, t), oracle::q_add(qx, qy)));
        CHECK(encloses_q(Interval::sub(x, y, t), oracle::q_sub(qx, qy)));
        CHECK(encloses_q(Interval::mul(x, y, t), oracle::q_mul(qx, qy)));
    }
}

TEST_CASE("fundamental enclosure: exact values of every form lie in the extension") {
    oracle::Rng rng(41);
    const std::array<MapForm, 4> forms = {MapForm::Factored, MapForm::Expanded, MapForm::Centered,
                                          MapForm::MeanValue};
    for (int i = 0; i < 200; ++i) {
        const long t = rng.integer(6, 40);
        const mpq_class mu = rng.rational(1, 4000, 1000);
        if (sgn(mu) <= 0 || mu > 4) continue;
        mpq_class a = rng.unit_rational();
        mpq_class b = rng.unit_rational();
        if (a > b) std::swap(a, b);
        const Interval x = iv(a, b, t);
        // sample exact points of X, including the endpoints
        for (int j = 0; j < 5; ++j) {
            const mpq_class lam = mpq_class(j, 4);
            const mpq_class pt = a + lam * (b - a);
            const mpq_class image = oracle::logistic(mu, pt);
            for (const MapForm form : forms) {
                CAPTURE(static_cast<int>(form));
                CHECK(natural(form, mu, x, t).contains(image));
            }
        }
    }
}

TEST_CASE("natural extensions are inclusion monotone") {
    oracle::Rng rng(43);
    const std::array<MapForm, 3> forms = {MapForm::Factored, MapForm::Expanded,
                                          MapForm::Centered};
    for (int i = 0; i < 150; ++i) {
        const long t = rng.integer(6, 32);
        const mpq_class mu = rng.rational(1, 4000, 1000);
        if (sgn(mu) <= 0 || mu > 4) continue;
        mpq_class a = rng.unit_rational();
        mpq_class b = rng.unit_rational();
        if (a > b) std::swap(a, b);
        // inner box strictly inside [a, b]
        const mpq_class a2 = a + (b - a) / 5;
        const mpq_class b2 = b - (b - a) / 7;
        const Interval outer = iv(a, b, t);
        const Interval inner = iv(a2, b2, t);
        for (const MapForm form : forms) {
            CHECK(natural(form, mu, outer, t).encloses(natural(form, mu, inner, t)));
        }
        // mean value form: monotonicity holds in exact arithmetic
        CHECK(oracle::q_inside(oracle::mean_value(mu, to_q(outer)),
                               oracle::mean_value(mu, to_q(inner))));
    }
}

TEST_CASE("exact width recursions of the factored and expanded forms") {
    // factored: d' = mu d while the box stays inside [0,1]
    mpq_class mu = 2;
    oracle::QInterval x{q(22, 100), q(22, 100) + mpq_class(1, mpz_class(1) << 30)};
    mpq_class width = x.hi - x.lo;
    for (int n = 0; n < 5; ++n) {
        x = oracle::factored(mu, x);
        width *= mu;
        REQUIRE(x.hi - x.lo == width);
        REQUIRE(x.lo >= 0);
        REQUIRE(x.hi <= 1);
    }
    // expanded: d' = mu d (1 + hi + lo)
    mu = 3;
    oracle::QInterval y{q(22, 100), q(22, 100) + mpq_class(1, mpz_class(1) << 30)};
    for (int n = 0; n < 5; ++n) {
        const mpq_class expect = mu * (y.hi - y.lo) * (1 + y.hi + y.lo);
        y = oracle::expanded(mu, y);
        REQUIRE(y.hi - y.lo == expect);
    }
}
