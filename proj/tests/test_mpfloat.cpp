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

#include "orbitprec/decimal.hpp"
#include "orbitprec/mpfloat.hpp"
#include "oracle.hpp"

using namespace orbitprec;

namespace {

mpq_class q(long num, long den) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

mpq_class pow2q(long k) {
    mpq_class v(1);
    if (k >= 0) {
        mpq_mul_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    }
    return v;
}

}  // namespace

TEST_CASE("round_nearest on exactly representable inputs") {
    const Float half = round_nearest(q(1, 2), 8);
    CHECK(half.to_rational() == q(1, 2));
    CHECK(half.significand() == 128);
    CHECK(half.scale() == 0);
    CHECK(half.valid());
}

TEST_CASE("round_nearest picks the closest 5-bit float to 0.22") {
    const Float v = round_nearest(q(22, 100), 5);
    CHECK(v.to_rational() == q(28, 128));  // 0.21875 = 28 * 2^-7
    CHECK(v.valid());
}

TEST_CASE("round_nearest of 1/3 at two bits") {
    const Float v = round_nearest(q(1, 3), 2);
    CHECK(v.to_rational() == q(3, 8));  // 0.375 beats 0.25
}

TEST_CASE("rounding matches the brute-force grid search") {
    oracle::Rng rng(2026);
    for (int i = 0; i < 300; ++i) {
        const long t = rng.integer(1, 9);
        mpq_class x = rng.rational(-2000, 2000, 999);
        if (sgn(x) == 0) x = 1;
        CAPTURE(t);
        CAPTURE(x.get_str());
        CHECK(round_nearest(x, t).to_rational() == oracle::nearest_bruteforce(x, t));
        CHECK(Float::from_rational(x, t, Rounding::Down).to_rational() ==
              oracle::floor_bruteforce(x, t));
        // round up == -round_down(-x)
        CHECK(Float::from_rational(x, t, Rounding::Up).to_rational() ==
              -oracle::floor_bruteforce(-x, t));
    }
}

TEST_CASE("ulp") {
    CHECK(round_nearest(q(1, 2), 8).ulp().to_rational() == pow2q(-8));
    CHECK(round_nearest(mpq_class(1), 1).ulp().to_rational() == 1);
    CHECK(round_nearest(q(22, 100), 5).ulp().to_rational() == pow2q(-7));
    CHECK_THROWS_AS(Float::zero(4).ulp(), precondition_error);
}

TEST_CASE("ulp is at most 2^(1-t) |x|") {
    oracle::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const long t = rng.integer(1, 40);
        const Float v = round_nearest(rng.unit_rational(), t);
        CHECK(v.ulp().to_rational() <= pow2q(1 - t) * ::abs(v.to_rational()));
    }
}

TEST_CASE("exact dyadic product") {
    const Float a = round_nearest(q(1, 2), 12);
    CHECK(Float::mul(a, a, 12, Rounding::Nearest).to_rational() == q(1, 4));
}

TEST_CASE("subtraction rounds back to one at four bits") {
    const Float one = Float::from_long(1, 16);
    const Float tiny = round_nearest(pow2q(-10), 16);
    CHECK(Float::sub(one, tiny, 4, Rounding::Nearest).to_rational() == 1);
}

TEST_CASE("tie at two bits goes to the even significand") {
    const Float a = round_nearest(q(1, 4), 8);
    const Float b = round_nearest(q(3, 8), 8);
    // exact sum 0.625 is halfway between 0.5 and 0.75 on the 2-bit grid
    CHECK(Float::add(a, b, 2, Rounding::Nearest).to_rational() == q(1, 2));
}

TEST_CASE("division is correctly rounded and rejects zero divisors") {
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const long t = rng.integer(1, 9);
        const mpq_class a = rng.dyadic(12, 10);
        const mpq_class b = rng.dyadic(12, 10);
        if (sgn(b) == 0) continue;
        const Float fa = round_nearest(a, 20);
        const Float fb = round_nearest(b, 20);
        CHECK(Float::div(fa, fb, t, Rounding::Nearest).to_rational() ==
              oracle::nearest_bruteforce(a / b, t));
    }
    CHECK_THROWS_AS(Float::div(Float::from_long(1, 8), Float::zero(8), 8, Rounding::Nearest),
                    precondition_error);
}

TEST_CASE("comparisons, scaling, rational round trip") {
    const Float a = round_nearest(q(-1, 2), 8);
    const Float b = round_nearest(q(1, 4), 8);
    CHECK(Float::compare_abs(a, b) > 0);
    CHECK(Float::compare(a, b) < 0);
    CHECK(round_nearest(q(3, 8), 2).scaled_pow2(1).to_rational() == q(3, 4));
    CHECK(round_nearest(q(3, 8), 2).to_rational() == q(3, 8));
}

TEST_CASE("round trip error stays within 2^(1-t)|q|") {
    oracle::Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        const long t = rng.integer(1, 64);
        mpq_class x = rng.rational(-100000, 100000, 99991);
        if (sgn(x) == 0) x = q(1, 3);
        const mpq_class back = round_nearest(x, t).to_rational();
        CHECK(::abs(back - x) <= pow2q(1 - t) * ::abs(x));
    }
}

TEST_CASE("arithmetic agrees with exact rational computation plus one rounding") {
    oracle::Rng rng(17);
    for (int i = 0; i < 400; ++i) {
        const long t = rng.integer(1, 30);
        const mpq_class a = rng.dyadic(18, 16);
        const mpq_class b = rng.dyadic(18, 16);
        const Float fa = round_nearest(a, 40);
        const Float fb = round_nearest(b, 40);
        REQUIRE(fa.to_rational() == a);
        REQUIRE(fb.to_rational() == b);
        for (const Rounding mode : {Rounding::Nearest, Rounding::Down, Rounding::Up}) {
            CHECK(Float::add(fa, fb, t, mode).to_rational() ==
                  Float::from_rational(a + b, t, mode).to_rational());
            CHECK(Float::sub(fa, fb, t, mode).to_rational() ==
                  Float::from_rational(a - b, t, mode).to_rational());
            CHECK(Float::mul(fa, fb, t, mode).to_rational() ==
                  Float::from_rational(a * b, t, mode).to_rational());
        }
    }
}

TEST_CASE("normalization invariant holds after every operation") {
    oracle::Rng rng(19);
    for (int i = 0; i < 300; ++i) {
        const long t = rng.integer(1, 24);
        const Float fa = round_nearest(rng.dyadic(20, 12), 24);
        const Float fb = round_nearest(rng.dyadic(20, 12), 24);
        CHECK(Float::add(fa, fb, t, Rounding::Nearest).valid());
        CHECK(Float::sub(fa, fb, t, Rounding::Up).valid());
        CHECK(Float::mul(fa, fb, t, Rounding::Down).valid());
        if (!fb.is_zero()) CHECK(Float::div(fa, fb, t, Rounding::Nearest).valid());
    }
}

TEST_CASE("directed rounding brackets the exact value") {
    oracle::Rng rng(23);
    for (int i = 0; i < 300; ++i) {
        const long t = rng.integer(1, 20);
        mpq_class x = rng.rational(-999, 999, 997);
        if (sgn(x) == 0) x = q(2, 7);
        const mpq_class down = Float::from_rational(x, t, Rounding::Down).to_rational();
        const mpq_class up = Float::from_rational(x, t, Rounding::Up).to_rational();
        CHECK(down <= x);
        CHECK(x <= up);
    }
}

TEST_CASE("log2_abs is scale-aware for extreme exponents") {
    const Float tiny = Float::from_long(3, 8).scaled_pow2(-100000);
    CHECK(tiny.log2_abs() == doctest::Approx(std::log2(3.0) - 100000).epsilon(1e-12));
}

TEST_CASE("decimal rendering is deterministic and trimmed") {
    CHECK(decimal_string(q(1, 10), 10) == "0.1");
    CHECK(decimal_string(q(22, 100), 10) == "0.22");
    CHECK(decimal_string(q(2020, 2000), 10) == "1.01");
    CHECK(decimal_string(q(1, 3), 10) == "0.3333333333");
    CHECK(decimal_string(mpq_class(4), 10) == "4");
    CHECK(decimal_string(q(-375, 100), 10) == "-3.75");
    CHECK(decimal_string(mpq_class(0), 10) == "0");
    CHECK(decimal_string(q(2, 3), 3) == "0.667");
    // rounding can carry into the next decade
    CHECK(decimal_string(q(9999, 10000), 3) == "1");
    CHECK(decimal_string(q(99995, 100000), 4) == "1");  // tie, to even
    CHECK(decimal_string(mpq_class(1) / mpq_class(mpz_class(1) << 20), 4) ==
          "0.0000009537");
}

TEST_CASE("rational parsing accepts decimals and fractions") {
    CHECK(parse_rational("22/100") == q(22, 100));
    CHECK(parse_rational("3.75") == q(15, 4));
    CHECK(parse_rational("-0.005") == q(-1, 200));
    CHECK(parse_rational("1e-3") == q(1, 1000));
    CHECK(parse_rational("2.5e2") == 250);
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("abc"), parse_error);
    CHECK_THROWS_AS(parse_rational(""), parse_error);
}
