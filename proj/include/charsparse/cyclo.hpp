#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "charsparse/numeric.hpp"

namespace charsparse {

std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);

// Outcome of the averaged-norm test: the exact value of T(a * conj(a)) and
// whether it clears the required floor (1, or d^2 for the divisor variant).
struct GallagherResult {
    Rat value;
    bool passes = false;
};

// An algebraic integer in Z[zeta_N], zeta_N = exp(2*pi*i/N).
//
// Values are kept in canonical coordinates on a fixed free Z-basis of
// Z[zeta_N], so equality, zero tests, and divisibility by a rational integer
// are exact coordinatewise checks.  The basis consists of the powers
// zeta_N^e whose e-th digit at every prime power p^a || N (the residue
// e * (N/p^a)^{-1} mod p^a) lies below (p-1)*p^{a-1}; powers in the top band
// are rewritten with 1 + x^{p^{a-1}} + ... + x^{(p-1)*p^{a-1}} = 0.  For
// prime-power N this is exactly the power basis 1, zeta, ..., zeta^{phi(N)-1}.
//
// Operations on operands with different N first lift both to the lcm of the
// conductors.  Instances are immutable; all operations return new values.
class CycInt {
public:
    // zero with conductor 1
    CycInt() = default;
    // a rational integer (conductor 1)
    CycInt(Int value);
    CycInt(long value) : CycInt(Int(value)) {}
    CycInt(int value) : CycInt(Int(value)) {}

    // sum of coeff * zeta_N^exponent; exponents arbitrary (reduced mod N)
    static CycInt make(std::uint32_t N,
                       const std::vector<std::pair<Int, long long>>& terms);
    // zeta_N^exponent
    static CycInt root(std::uint32_t N, long long exponent);

    std::uint32_t conductor() const { return N_; }
    // canonical coordinates: basis exponent -> nonzero coefficient
    const std::map<std::uint32_t, Int>& coords() const { return coords_; }

    bool is_zero() const { return coords_.empty(); }
    bool is_integer() const;
    // the value as a rational integer; domain error if not one
    Int as_integer() const;

    CycInt operator-() const;
    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    CycInt& operator*=(const CycInt& o);
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    friend bool operator==(const CycInt& a, const CycInt& b);
    friend bool operator!=(const CycInt& a, const CycInt& b) { return !(a == b); }

    // complex conjugation, zeta -> zeta^{-1}
    CycInt conj() const;
    // the Galois element zeta -> zeta^a; requires gcd(a, N) = 1
    CycInt galois(long long a) const;
    // the same value viewed in Z[zeta_M]; requires N | M
    CycInt lifted(std::uint32_t M) const;
    // the same value viewed in the subring Z[zeta_M]; requires M | N and
    // that the value actually lies in Z[zeta_M] (domain error otherwise)
    CycInt descended(std::uint32_t M) const;

    // trace to Q divided by the field degree phi(N); exact, Galois-invariant
    Rat normalized_trace() const;

    // true iff value / d has integer coordinates, i.e. value in d * Z[zeta_N]
    bool divisible_by_int(const Int& d) const;
    // value / d; domain error unless divisible_by_int(d)
    CycInt div_exact_int(const Int& d) const;

    // T(a * conj(a)) with passes = (a == 0) || value >= 1
    GallagherResult gallagher_check() const;
    // divisor-aware floor: requires d >= 1 and d | a (unless a == 0);
    // passes = (a == 0) || value >= d^2
    GallagherResult gallagher_check_divisor(const Int& d) const;

private:
    std::uint32_t N_ = 1;
    std::map<std::uint32_t, Int> coords_;
};

// {"N": conductor, "terms": [[coeff, exponent], ...]} with exponents
// ascending and coefficients as decimal strings
nlohmann::json cyc_to_json(const CycInt& a);
CycInt cyc_from_json(const nlohmann::json& j);

}  // namespace charsparse
