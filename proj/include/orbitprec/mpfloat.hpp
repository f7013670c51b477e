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

#ifndef ORBITPREC_MPFLOAT_HPP
#define ORBITPREC_MPFLOAT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace orbitprec {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The orbit (or an enclosure of it) left the map's domain.
class domain_error : public error {
public:
    using error::error;
};

// A caller contract was violated (division by zero, ulp of zero, bad
// precision, Wilkinson op-count too large for the precision, ...).
class precondition_error : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    using error::error;
};

enum class Rounding {
    Nearest,  // round to nearest, ties to even significand
    Down,     // toward -infinity
    Up        // toward +infinity
};

/// Arbitrary-precision binary floating-point value sig * 2^(scale - prec).
///
/// Invariants:
///   - prec >= 1 (number of significand bits),
///   - sig == 0 implies scale == 0,
///   - sig != 0 implies 2^(prec-1) <= |sig| <= 2^prec - 1, so a nonzero
///     value v satisfies 2^(scale-1) <= |v| < 2^scale.
///
/// There is no bound on scale or prec. Every operation computes the exact
/// rational result first and rounds exactly once in the requested mode, so
/// results are correctly rounded by construction. Values are immutable.
class Float {
public:
    Float() : sig_(0), scale_(0), prec_(1) {}

    static Float zero(long prec);
    static Float from_long(long value, long prec, Rounding mode = Rounding::Nearest);
    static Float from_rational(const mpq_class& q, long prec, Rounding mode);
    /// Rounds num/den * 2^exp2 (den > 0) to `prec` bits. All entry points
    /// funnel through this.
    static Float from_scaled_fraction(const mpz_class& num, const mpz_class& den, long exp2,
                                      long prec, Rounding mode);

    const mpz_class& significand() const { return sig_; }
    long scale() const { return scale_; }
    long precision() const { return prec_; }
    bool is_zero() const { return sgn(sig_) == 0; }
    int sign() const { return sgn(sig_); }

    mpq_class to_rational() const;  // exact; Floats are dyadic rationals
    double to_double() const;       // saturates to +-inf / 0 outside double range
    double log2_abs() const;        // exact-scale log2 of |value|; throws on zero
    std::string to_decimal(int significant_digits) const;

    Float ulp() const;  // 2^(scale - prec); throws precondition_error on zero
    Float abs() const;
    Float negated() const;
    Float scaled_pow2(long k) const;  // exact multiplication by 2^k
    Float rounded(long prec, Rounding mode) const;

    static Float add(const Float& a, const Float& b, long prec, Rounding mode);
    static Float sub(const Float& a, const Float& b, long prec, Rounding mode);
    static Float mul(const Float& a, const Float& b, long prec, Rounding mode);
    static Float div(const Float& a, const Float& b, long prec, Rounding mode);

    static int compare(const Float& a, const Float& b);      // sign of a - b, exact
    static int compare_abs(const Float& a, const Float& b);  // sign of |a| - |b|, exact

    bool valid() const;  // invariant check, used by tests

private:
    Float(mpz_class sig, long scale, long prec)
        : sig_(std::move(sig)), scale_(scale), prec_(prec) {}

    mpz_class sig_;
    long scale_;
    long prec_;
};

inline Float round_nearest(const mpq_class& q, long prec) {
    return Float::from_rational(q, prec, Rounding::Nearest);
}

}  // namespace orbitprec

#endif  // ORBITPREC_MPFLOAT_HPP
