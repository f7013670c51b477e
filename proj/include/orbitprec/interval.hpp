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

#ifndef ORBITPREC_INTERVAL_HPP
#define ORBITPREC_INTERVAL_HPP

#include <gmpxx.h>

#include "orbitprec/mpfloat.hpp"

namespace orbitprec {

/// Inf-sup interval with outward rounding. Every operation computes exact
/// endpoint candidates and rounds once: lower endpoints toward -infinity,
/// upper endpoints toward +infinity, so the result encloses the exact range.
class Interval {
public:
    Interval(Float lo, Float hi);  // throws precondition_error if lo > hi
    static Interval point(const Float& x);
    static Interval from_rational_outward(const mpq_class& q, long prec);
    static Interval from_rationals_outward(const mpq_class& lo, const mpq_class& hi, long prec);

    const Float& lo() const { return lo_; }
    const Float& hi() const { return hi_; }
    bool is_point() const { return Float::compare(lo_, hi_) == 0; }

    Float width_upper(long prec) const;   // hi - lo, rounded up
    Float midpoint(long prec) const;      // (lo + hi)/2, rounded to nearest
    bool contains(const mpq_class& x) const;
    bool encloses(const Interval& other) const;

    static Interval add(const Interval& a, const Interval& b, long prec);
    static Interval sub(const Interval& a, const Interval& b, long prec);
    static Interval mul(const Interval& a, const Interval& b, long prec);
    /// Exact endpoint max/min; throws domain_error when disjoint.
    static Interval intersect(const Interval& a, const Interval& b);

private:
    Float lo_;
    Float hi_;
};

Interval scale_by_rational(const mpq_class& c, const Interval& x, long prec);
Interval add_rational(const mpq_class& c, const Interval& x, long prec);

// Range enclosures for the logistic family, evaluated left to right in the
// printed expression order with outward rounding at each operation.
Interval logistic_factored_range(const mpq_class& mu, const Interval& x, long prec);  // mu*x*(1-x)
Interval logistic_expanded_range(const mpq_class& mu, const Interval& x, long prec);  // mu*(x-x^2)
Interval logistic_centered_range(const mpq_class& mu, const Interval& x, long prec);  // mu/4 - mu*(x-1/2)^2
Interval logistic_derivative_range(const mpq_class& mu, const Interval& x, long prec);  // mu*(1-2x)
/// f(mid) + f'(X) * (X - mid) with all pieces outward rounded; mid is the
/// rounded midpoint, which always lies inside X.
Interval logistic_mean_value_range(const mpq_class& mu, const Interval& x, long prec);

}  // namespace orbitprec

#endif  // ORBITPREC_INTERVAL_HPP
