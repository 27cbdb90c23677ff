#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "charsparse/ff.hpp"
#include "charsparse/numeric.hpp"

namespace charsparse {

// Monic polynomial c_0 + c_1 x + ... + c_{n-1} x^{n-1} + x^n over a finite
// field.  Coefficients are stored low-first as element indices; the leading 1
// is implicit, so degree == low.size().  Degree 0 is the constant 1.
struct MonicPoly {
    const Field* fld = nullptr;
    std::vector<std::uint32_t> low;

    std::size_t degree() const { return low.size(); }
    const Field& field() const { return *fld; }
    std::uint32_t coeff_idx(std::size_t i) const;  // 0 <= i <= degree
};

bool operator==(const MonicPoly& a, const MonicPoly& b);
bool operator!=(const MonicPoly& a, const MonicPoly& b);

// Canonical order: by degree, then by the index encoding of the coefficient
// vector (most significant coefficient first).  Used to sort factor lists so
// factorizations are deterministic.
bool poly_less(const MonicPoly& a, const MonicPoly& b);

MonicPoly monic(const Field& F, std::vector<std::uint32_t> low_coeffs);
MonicPoly monic_one(const Field& F);
// x - r
MonicPoly monic_linear(const Field& F, FieldElem r);

FieldElem eval_poly(const MonicPoly& P, FieldElem x);
MonicPoly mul(const MonicPoly& a, const MonicPoly& b);

// P*(x) = conj(P(0))^{-1} x^{deg P} conj(P)(1/x); conjugation is the
// base_q-power Frobenius when the coefficient field is a quadratic extension
// of F_{base_q}, and the identity when it is F_{base_q} itself.
MonicPoly star(const MonicPoly& P, const PrimePower& base_q);
bool is_self_star(const MonicPoly& P, const PrimePower& base_q);

bool is_irreducible_poly(const MonicPoly& P);

struct Factorization {
    // (irreducible monic factor, multiplicity), sorted by poly_less.
    std::vector<std::pair<MonicPoly, std::uint32_t>> factors;

    std::size_t total_degree() const;
};

// Complete factorization into monic irreducibles over the coefficient field.
// The random splitting stream is derived from (seed, P), so results are
// reproducible; the sorted output does not depend on the seed at all.
Factorization factor(const MonicPoly& P, std::uint64_t seed = 0);

// Multiply a factorization back out (test oracle for factor()).
MonicPoly expand(const Factorization& fac);

// rho = sum of b_i (a_i - 1) over irreducible factors of degree b_i and
// multiplicity a_i; zero exactly for squarefree polynomials.
std::uint64_t rho(const Factorization& fac);
std::uint64_t rho(const MonicPoly& P);

// alpha = prod over distinct irreducible factors (1 + base^{-b_i}) divided by
// (1 - base^{-1}), exact.  The base is explicit: polynomials over F_{q^2} are
// weighted with base q, using their factor degrees over F_{q^2}.
Rat alpha(const Factorization& fac, const Int& base);
Rat alpha(const MonicPoly& P, const Int& base);

// All orders d > 1 of scalars z in the coefficient field with P(zx) == P(x).
// Computed from the coefficient support: d qualifies iff d > 1 and d divides
// gcd(field size - 1, all indices i with c_i != 0, deg P).
std::set<std::uint32_t> zeta_symmetric(const MonicPoly& P);
// Oracle: scan every scalar z != 0,1 and test P(zx) == P(x) directly.
std::set<std::uint32_t> zeta_symmetric_scan(const MonicPoly& P);

// true iff rho(P) <= m and P has no scalar symmetry P(zx) == P(x), z != 1.
bool is_m_regular(const MonicPoly& P, std::uint64_t m);

std::string poly_to_string(const MonicPoly& P);

}  // namespace charsparse
