/*
 * Copyright 2026 The bidgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "bidgame/error.hpp"

namespace bidgame {

// Exact rationals. gmpxx uses expression templates, so never bind a
// mixed expression to `auto`; spell out Rational.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a/b", integers and plain decimals ("-0.55", "3e-2") exactly.
inline Rational parse_rational(std::string_view text)
{
    auto fail = [&](const char* why) -> Rational {
        throw Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "': " + why);
    };
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t lead = 0;
    while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
    s.erase(0, lead);
    if (s.empty()) return fail("empty");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) return fail("zero denominator");
        return Rational(num / den);
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = (s[i++] == '-');
    std::string digits;
    long scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) ++scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return fail("no digits");
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') return fail("unexpected character");
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        if (i == s.size()) return fail("empty exponent");
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return fail("bad exponent");
            exponent = exponent * 10 + (s[i] - '0');
            if (exponent > 100000) return fail("exponent too large");
        }
        if (eneg) exponent = -exponent;
    }
    Integer num(digits, 10);
    long shift = exponent - scale;
    Integer pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational r = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact value of a finite double.
inline Rational from_double(double d) { return Rational(d); }

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer floor(const Rational& r) { return floor_div(r.get_num(), r.get_den()); }
inline Integer ceil(const Rational& r) { return ceil_div(r.get_num(), r.get_den()); }

/// Smallest multiple of q that is >= x (q > 0).
inline Rational ceil_to_multiple(const Rational& x, const Rational& q)
{
    Rational k = x / q;
    return Rational(Rational(ceil(k)) * q);
}

/// Largest multiple of q that is <= x (q > 0).
inline Rational floor_to_multiple(const Rational& x, const Rational& q)
{
    Rational k = x / q;
    return Rational(Rational(floor(k)) * q);
}

inline Rational pow2(long e)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace bidgame
