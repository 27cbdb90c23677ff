#pragma once

#include <cstdint>
#include <vector>

#include "charsparse/errors.hpp"

namespace charsparse {

// Prime power q = p^k with q <= 2^16.
struct PrimePower {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint32_t q = 0;

    static PrimePower of(std::uint32_t q);
    static PrimePower make(std::uint32_t p, std::uint32_t k);
    bool operator==(const PrimePower& o) const { return q == o.q; }
};

class Field;

// One field element, identified by its index in the canonical enumeration.
// The index encodes the coordinate vector over F_p in little-endian base p,
// so index 0 is zero and index 1 is one.
struct FieldElem {
    const Field* fld = nullptr;
    std::uint32_t idx = 0;

    FieldElem() = default;
    FieldElem(const Field* f, std::uint32_t i) : fld(f), idx(i) {}

    bool is_zero() const { return idx == 0; }
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    bool operator<(const FieldElem& o) const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
};

// F_q with a deterministic representation: the modulus is the
// lexicographically smallest monic irreducible of degree k over F_p
// (coefficient tuples compared high degree first, i.e. candidates are tried
// in increasing order of their index encoding). Multiplication runs through
// exp/log tables built on the smallest-index primitive element.
class Field {
public:
    explicit Field(PrimePower pp);

    std::uint32_t q() const { return pp_.q; }
    std::uint32_t p() const { return pp_.p; }
    std::uint32_t degree() const { return pp_.k; }
    PrimePower prime_power() const { return pp_; }

    // Low-order coefficients of the monic modulus (length k). For k = 1 the
    // modulus is x itself and this holds a single zero.
    const std::vector<std::uint32_t>& modulus() const { return mod_low_; }

    FieldElem zero() const { return {this, 0}; }
    FieldElem one() const { return {this, one_idx_}; }
    FieldElem element(std::uint32_t idx) const;
    // Integer reduced into the prime subfield.
    FieldElem from_int(long v) const;
    // Smallest-index generator of the multiplicative group.
    FieldElem generator() const { return {this, gen_idx_}; }

    std::vector<std::uint32_t> coords(FieldElem a) const;

    std::uint32_t add_idx(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub_idx(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg_idx(std::uint32_t a) const;
    std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv_idx(std::uint32_t a) const;

    FieldElem add(FieldElem a, FieldElem b) const { return {this, add_idx(a.idx, b.idx)}; }
    FieldElem mul(FieldElem a, FieldElem b) const { return {this, mul_idx(a.idx, b.idx)}; }
    FieldElem inv(FieldElem a) const { return {this, inv_idx(a.idx)}; }
    FieldElem pow(FieldElem a, long long e) const;

    // a |-> a^base_q, defined on the quadratic extension of F_base_q only.
    FieldElem frobenius(FieldElem a, std::uint32_t base_q) const;

    // Multiplicative order; error on zero.
    std::uint32_t mult_order(FieldElem a) const;

    // Discrete log base generator(); error on zero.
    std::uint32_t log(FieldElem a) const;
    FieldElem gen_pow(std::uint64_t e) const { return {this, expt_[e % (pp_.q - 1)]}; }

private:
    PrimePower pp_;
    std::vector<std::uint32_t> mod_low_;
    std::vector<std::uint32_t> expt_;  // expt_[i] = index of g^i, size q-1
    std::vector<std::uint32_t> logt_;  // logt_[idx] for idx != 0
    std::uint32_t one_idx_ = 1;
    std::uint32_t gen_idx_ = 1;

    void check(std::uint32_t idx) const;
};

// Shared, cached field instances; FieldElems from repeated calls with the
// same q compare and combine freely.
const Field& field_make(std::uint32_t q);
const Field& field_make(PrimePower pp);

// Index map of a field homomorphism sub -> sup.  Requires sub.q()^d ==
// sup.q() for some d >= 1.  Among the d possible embeddings, the one sending
// sub's generator to the smallest-index root of its minimal polynomial is
// chosen, so the map is deterministic.
std::vector<std::uint32_t> subfield_embedding(const Field& sub, const Field& sup);

}  // namespace charsparse
