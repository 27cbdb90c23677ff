#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "charsparse/ff.hpp"
#include "charsparse/numeric.hpp"
#include "charsparse/poly.hpp"

namespace charsparse {

// Three families of monic polynomials with fixed constant term:
//   L: degree n over F_q, P(0) = c
//   U: degree n over F_{q^2}, P = P* (conjugating star) and P(0) = c, c*conj(c) = 1
//   O: even degree n over F_q, P = P* (palindromic) and P(0) = 1
enum class FamilyKind { L, U, O };

char kind_letter(FamilyKind k);
FamilyKind kind_from_string(const std::string& s);

struct FamilySpec {
    FamilyKind kind;
    std::uint32_t n = 0;
    PrimePower base_q;      // the parameter q; U coefficients live in F_{q^2}
    std::uint32_t c_idx = 0;  // constant term, as an index in the coefficient field

    const Field& coeff_field() const;
    FieldElem constant_term() const;
};

// c defaults to (-1)^n in the coefficient field.
FamilySpec family_spec(FamilyKind kind, std::uint32_t n, PrimePower q);
FamilySpec family_spec(FamilyKind kind, std::uint32_t n, PrimePower q, std::uint32_t c_idx);

// q^{n-1} for L and U, q^{n/2} for O.
Int family_cardinality(const FamilySpec& spec);

// Member at a canonical index in [0, cardinality): free coefficients are
// little-endian digits of the index (lowest coefficient varies fastest),
// mirrored coefficients are derived.  This gives enumeration a total order
// that index ranges can partition.
MonicPoly family_member(const FamilySpec& spec, const Int& index);

void family_for_each(const FamilySpec& spec, const Int& lo, const Int& hi,
                     const std::function<void(const MonicPoly&)>& fn);

std::vector<MonicPoly> family_enumerate(const FamilySpec& spec, std::uint64_t cap = 10'000'000);

bool family_membership(const MonicPoly& P, const FamilySpec& spec);

// count independent uniform draws (free coefficients uniform, mirrors derived)
std::vector<MonicPoly> family_sample(const FamilySpec& spec, std::uint64_t count,
                                     std::uint64_t seed);

struct StatConfig {
    std::uint64_t exhaustive_cap = 10'000'000;  // largest population enumerated in full
    std::uint64_t samples = 200'000;            // draws when the population exceeds the cap
    std::uint64_t seed = 0;
    std::uint32_t workers = 1;
};

// Outcome of one statistic over one family.  stated_bound is a self-describing
// exact expression for the bound the count was compared against (empty when
// the source result provides no closed-form bound).  bound_holds is +1/0 when
// the exact comparison ran (exhaustive mode), -1 when not applicable.
struct FamilyStats {
    FamilySpec spec;
    std::string statistic;
    std::uint64_t m_or_M = 0;
    Int population;
    Int examined;
    std::uint64_t count = 0;
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::string stated_bound;
    int bound_holds = -1;

    std::string fraction() const;  // count/examined, exact lowest terms
    std::string mode() const;
};

// members with an irreducible factor (over the coefficient field) whose
// degree is divisible by m; count < {1,2,3}*pop*(1+ln n)/m for {L,U,O}.
// half_degree_variant (U only, m even) counts degree divisible by m/2.
FamilyStats stat_factor_degree_divisible(const FamilySpec& spec, std::uint32_t m,
                                         const StatConfig& cfg = {},
                                         bool half_degree_variant = false);

// members with rho(P) >= m; count < 2q^{-m/2}pop (L), 4q^{-m/2}pop (U),
// 2q^{-m/4}pop (O), checked exactly.
FamilyStats stat_rho_ge(const FamilySpec& spec, std::uint32_t m, const StatConfig& cfg = {});

// members with alpha(P) >= (1+1/q)^M, exact rational comparison; no
// closed-form bound (the source result is an epsilon-M existence statement).
FamilyStats stat_alpha_ge(const FamilySpec& spec, std::uint32_t M, const StatConfig& cfg = {});

// members with a scalar symmetry P(zx) = P(x), z != 1; count < 2q^{n/2-1},
// checked exactly; L and U only.
FamilyStats stat_zeta_symmetric(const FamilySpec& spec, const StatConfig& cfg = {});

}  // namespace charsparse
