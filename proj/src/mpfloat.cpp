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

#include "orbitprec/mpfloat.hpp"

#include <algorithm>
#include <cmath>

#include "orbitprec/decimal.hpp"

namespace orbitprec {

namespace {

long bit_length(const mpz_class& z) {
    // valid for z != 0
    return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

mpz_class shifted_left(const mpz_class& z, long k) {
    mpz_class out;
    mpz_mul_2exp(out.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return out;
}

}  // namespace

Float Float::zero(long prec) {
    if (prec < 1) throw precondition_error("Float precision must be >= 1");
    return Float(mpz_class(0), 0, prec);
}

Float Float::from_long(long value, long prec, Rounding mode) {
    return from_scaled_fraction(mpz_class(value), mpz_class(1), 0, prec, mode);
}

Float Float::from_rational(const mpq_class& q, long prec, Rounding mode) {
    return from_scaled_fraction(q.get_num(), q.get_den(), 0, prec, mode);
}

Float Float::from_scaled_fraction(const mpz_class& num, const mpz_class& den, long exp2,
                                  long prec, Rounding mode) {
    if (prec < 1) throw precondition_error("Float precision must be >= 1");
    if (sgn(den) <= 0) throw precondition_error("denominator must be positive");
    if (sgn(num) == 0) return zero(prec);

    const int sign = sgn(num);
    mpz_class a = ::abs(num);

    // Binade of a/den: find e with 2^(e-1) <= a/den < 2^e.
    long e = bit_length(a) - bit_length(den);
    {
        // a/den is in [2^(e-1), 2^(e+1)); bump e if a/den >= 2^e.
        int c;
        if (e >= 0) {
            c = cmp(a, shifted_left(den, e));
        } else {
            c = cmp(shifted_left(a, -e), den);
        }
        if (c >= 0) ++e;
    }

    // Significand: round a/den * 2^(prec - e), which lies in [2^(prec-1), 2^prec).
    const long sh = prec - e;
    mpz_class scaled_num = sh >= 0 ? shifted_left(a, sh) : a;
    mpz_class scaled_den = sh >= 0 ? den : shifted_left(den, -sh);
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());

    if (sgn(r) != 0) {
        bool bump = false;
        switch (mode) {
            case Rounding::Nearest: {
                const int c = cmp(shifted_left(r, 1), scaled_den);
                bump = c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()));
                break;
            }
            case Rounding::Up:
                bump = sign > 0;
                break;
            case Rounding::Down:
                bump = sign < 0;
                break;
        }
        if (bump) ++q;
    }

    // Rounding up may carry into the next binade: q == 2^prec.
    if (mpz_sizeinbase(q.get_mpz_t(), 2) == static_cast<size_t>(prec) + 1) {
        q >>= 1;
        ++e;
    }

    if (sign < 0) q = -q;
    return Float(std::move(q), e + exp2, prec);
}

mpq_class Float::to_rational() const {
    mpq_class q(sig_);
    const long g = scale_ - prec_;
    if (g >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(g));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-g));
    }
    return q;
}

double Float::to_double() const {
    if (is_zero()) return 0.0;
    long exp = 0;
    const double d = mpz_get_d_2exp(&exp, sig_.get_mpz_t());  // sig == d * 2^exp, |d| in [0.5, 1)
    long total = exp + scale_ - prec_;
    total = std::clamp(total, -(1L << 24), 1L << 24);
    return std::ldexp(d, static_cast<int>(total));
}

double Float::log2_abs() const {
    if (is_zero()) throw precondition_error("log2 of zero");
    long exp = 0;
    const double d = mpz_get_d_2exp(&exp, sig_.get_mpz_t());
    return std::log2(std::fabs(d)) + static_cast<double>(exp) +
           static_cast<double>(scale_ - prec_);
}

std::string Float::to_decimal(int significant_digits) const {
    return decimal_string(to_rational(), significant_digits);
}

Float Float::ulp() const {
    if (is_zero()) throw precondition_error("ulp of zero is undefined");
    // 2^(scale - prec) represented with a 1-bit significand.
    return Float(mpz_class(1), scale_ - prec_ + 1, 1);
}

Float Float::abs() const {
    return sign() < 0 ? negated() : *this;
}

Float Float::negated() const {
    return Float(mpz_class(-sig_), scale_, prec_);
}

Float Float::scaled_pow2(long k) const {
    if (is_zero()) return *this;
    return Float(sig_, scale_ + k, prec_);
}

Float Float::rounded(long prec, Rounding mode) const {
    if (is_zero()) return zero(prec);
    return from_scaled_fraction(sig_, mpz_class(1), scale_ - prec_, prec, mode);
}

Float Float::add(const Float& a, const Float& b, long prec, Rounding mode) {
    if (a.is_zero()) return b.rounded(prec, mode);
    if (b.is_zero()) return a.rounded(prec, mode);
    const long ga = a.scale_ - a.prec_;
    const long gb = b.scale_ - b.prec_;
    const long g = std::min(ga, gb);
    const mpz_class sum = shifted_left(a.sig_, ga - g) + shifted_left(b.sig_, gb - g);
    if (sgn(sum) == 0) return zero(prec);
    return from_scaled_fraction(sum, mpz_class(1), g, prec, mode);
}

Float Float::sub(const Float& a, const Float& b, long prec, Rounding mode) {
    return add(a, b.negated(), prec, mode);
}

Float Float::mul(const Float& a, const Float& b, long prec, Rounding mode) {
    if (a.is_zero() || b.is_zero()) return zero(prec);
    const mpz_class prod = a.sig_ * b.sig_;
    return from_scaled_fraction(prod, mpz_class(1), (a.scale_ - a.prec_) + (b.scale_ - b.prec_),
                                prec, mode);
}

Float Float::div(const Float& a, const Float& b, long prec, Rounding mode) {
    if (b.is_zero()) throw precondition_error("division by zero");
    if (a.is_zero()) return zero(prec);
    const mpz_class num = sgn(b.sig_) < 0 ? mpz_class(-a.sig_) : a.sig_;
    return from_scaled_fraction(num, ::abs(b.sig_), (a.scale_ - a.prec_) - (b.scale_ - b.prec_),
                                prec, mode);
}

int Float::compare(const Float& a, const Float& b) {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    if (a.scale_ != b.scale_) {
        const int mag = a.scale_ < b.scale_ ? -1 : 1;
        return sa > 0 ? mag : -mag;
    }
    const long ga = a.scale_ - a.prec_;
    const long gb = b.scale_ - b.prec_;
    const long g = std::min(ga, gb);
    const int c = cmp(shifted_left(a.sig_, ga - g), shifted_left(b.sig_, gb - g));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int Float::compare_abs(const Float& a, const Float& b) {
    return compare(a.abs(), b.abs());
}

bool Float::valid() const {
    if (prec_ < 1) return false;
    if (sgn(sig_) == 0) return scale_ == 0;
    const long bits = bit_length(::abs(sig_));
    return bits == prec_;
}

}  // namespace orbitprec
