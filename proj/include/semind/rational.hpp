#pragma once

// Thin helpers over GMP's C++ interface. All exact arithmetic in the library
// goes through BigInt / Rational.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace semind {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt pow_int(const BigInt& base, std::uint64_t exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return out;
}

inline BigInt pow_int(std::uint64_t base, std::uint64_t exp) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return out;
}

// Canonical input stays canonical: gcd(a^e, b^e) = 1 whenever gcd(a, b) = 1.
inline Rational pow_rat(const Rational& base, std::uint64_t exp) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
    return out;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "numerator/denominator" with no decimal point; integers still carry "/1".
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_fraction(const std::string& text) {
    Rational q(text, 10);
    q.canonicalize();
    return q;
}

/// log2 of a positive big integer, accurate to double precision for any size.
inline double log2_big(const BigInt& x) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp);
}

inline double log2_rat(const Rational& q) { return log2_big(q.get_num()) - log2_big(q.get_den()); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::uint64_t to_u64(const BigInt& x) {
    if (sgn(x) < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64) {
        throw std::overflow_error("value does not fit in 64 bits: " + x.get_str());
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
    return out;
}

inline BigInt from_u64(std::uint64_t v) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

}  // namespace semind
