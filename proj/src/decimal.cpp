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

#include "orbitprec/decimal.hpp"

#include <cctype>
#include <cstdlib>

#include "orbitprec/mpfloat.hpp"

namespace orbitprec {

namespace {

mpz_class pow10z(long k) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return out;
}

// sign of a - b*10^k, for a, b > 0
int compare_scaled10(const mpz_class& a, const mpz_class& b, long k) {
    if (k >= 0) return cmp(a, mpz_class(b * pow10z(k)));
    return cmp(mpz_class(a * pow10z(-k)), b);
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

mpq_class parse_decimal(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exp10 = 0;
    const size_t epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        std::string_view es = s.substr(epos + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 6) throw parse_error("bad exponent in number");
        exp10 = std::strtol(std::string(es).c_str(), nullptr, 10);
        if (eneg) exp10 = -exp10;
        s = s.substr(0, epos);
    }

    std::string_view int_part = s;
    std::string_view frac_part;
    const size_t dot = s.find('.');
    if (dot != std::string_view::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw parse_error("empty number");
    if (!int_part.empty() && !all_digits(int_part)) throw parse_error("bad digits in number");
    if (!frac_part.empty() && !all_digits(frac_part)) throw parse_error("bad digits in number");

    mpz_class num(std::string(int_part) + std::string(frac_part), 10);
    if (negative) num = -num;
    mpq_class q(num);
    long den_pow = static_cast<long>(frac_part.size()) - exp10;
    if (den_pow > 0) {
        q /= mpq_class(pow10z(den_pow));
    } else if (den_pow < 0) {
        q *= mpq_class(pow10z(-den_pow));
    }
    q.canonicalize();
    return q;
}

}  // namespace

mpq_class parse_rational(std::string_view text) {
    // trim surrounding spaces
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) throw parse_error("empty number");

    const size_t slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);

    std::string_view ns = text.substr(0, slash);
    std::string_view ds = text.substr(slash + 1);
    bool negative = false;
    if (!ns.empty() && (ns.front() == '+' || ns.front() == '-')) {
        negative = ns.front() == '-';
        ns.remove_prefix(1);
    }
    if (!all_digits(ns) || !all_digits(ds)) throw parse_error("bad fraction");
    mpz_class num(std::string(ns), 10);
    mpz_class den(std::string(ds), 10);
    if (sgn(den) == 0) throw parse_error("zero denominator");
    if (negative) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

std::string decimal_string(const mpq_class& q, int significant_digits) {
    if (significant_digits < 1) throw precondition_error("need at least one digit");
    if (sgn(q) == 0) return "0";

    const bool negative = sgn(q) < 0;
    const mpz_class a = ::abs(q.get_num());
    const mpz_class& b = q.get_den();

    // decimal exponent E with 10^(E-1) <= a/b < 10^E
    long e10 = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
               static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
    while (compare_scaled10(a, b, e10) >= 0) ++e10;
    while (compare_scaled10(a, b, e10 - 1) < 0) --e10;

    // round a/b * 10^(digits - E) to an integer, half to even
    const long sh = significant_digits - e10;
    const mpz_class num = sh >= 0 ? mpz_class(a * pow10z(sh)) : a;
    const mpz_class den = sh >= 0 ? b : mpz_class(b * pow10z(-sh));
    mpz_class digits_int, rem;
    mpz_fdiv_qr(digits_int.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (sgn(rem) != 0) {
        const int c = cmp(mpz_class(rem * 2), den);
        if (c > 0 || (c == 0 && mpz_odd_p(digits_int.get_mpz_t()))) ++digits_int;
    }
    if (digits_int == pow10z(significant_digits)) {
        digits_int /= 10;
        ++e10;
    }

    std::string digits = digits_int.get_str();
    std::string out;
    if (e10 >= static_cast<long>(digits.size())) {
        out = digits + std::string(e10 - digits.size(), '0');
    } else if (e10 > 0) {
        std::string frac = digits.substr(static_cast<size_t>(e10));
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out = digits.substr(0, static_cast<size_t>(e10));
        if (!frac.empty()) out += "." + frac;
    } else {
        std::string frac = std::string(-e10, '0') + digits;
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out = "0." + frac;
    }
    return negative ? "-" + out : out;
}

}  // namespace orbitprec
