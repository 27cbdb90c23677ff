#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "charsparse/errors.hpp"

namespace charsparse {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_pow(std::uint64_t base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// q^(num/den) comparisons without leaving the integers:
// value < coeff * q^(num/den)  <=>  value^den < coeff^den * q^num   (all parts >= 0).
inline bool less_than_scaled_root_power(const Int& value, const Int& coeff, std::uint64_t q,
                                        long num, unsigned long den) {
    if (den == 0) throw invalid_parameter_error("zero denominator in power comparison");
    if (num < 0) {
        // value < coeff * q^(-|num|/den)  <=>  value^den * q^|num| < coeff^den
        Int lhs = int_pow(value, den) * int_pow(q, static_cast<unsigned long>(-num));
        return lhs < int_pow(coeff, den);
    }
    Int lhs = int_pow(value, den);
    Int rhs = int_pow(coeff, den) * int_pow(q, static_cast<unsigned long>(num));
    return lhs < rhs;
}

// (1 + 1/q)^M etc. as exact rationals.
inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

inline std::uint32_t ordinal_of_prime(Int n, const Int& ell) {
    std::uint32_t v = 0;
    if (ell < 2) throw invalid_parameter_error("ord_p needs a prime >= 2");
    while (n != 0 && mpz_divisible_p(n.get_mpz_t(), ell.get_mpz_t())) {
        n /= ell;
        ++v;
    }
    return v;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

}  // namespace charsparse
