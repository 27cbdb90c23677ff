#pragma once

#include <cstdint>
#include <vector>

#include "charsparse/numeric.hpp"

namespace charsparse {

// Nonnegative integer sequence a_1, a_2, ...: a named rule or an explicit
// prefix followed by a constant tail.
struct SeqSpec {
    enum class Kind { Constant, Identity, PrefixTail };
    Kind kind = Kind::Constant;
    Int value = 0;             // Constant
    std::vector<Int> prefix;   // PrefixTail
    Int tail = 0;              // PrefixTail

    static SeqSpec constant(Int v);
    static SeqSpec identity();
    static SeqSpec prefix_tail(std::vector<Int> prefix, Int tail);

    Int at(std::uint64_t i) const;  // i >= 1
};

// exact partition numbers p(0..n) by the pentagonal-number recurrence
std::vector<Int> partition_counts(std::uint32_t n);
Int partition_count(std::uint32_t n);

// all partitions of n, parts weakly decreasing, in lexicographically
// decreasing order starting from (n)
std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t n);

// coefficients A_0..A_M of prod_{i>=1} (1-z^i)^{-a_i}
std::vector<Int> genfun_coeffs(const SeqSpec& a, std::uint32_t M);

// max over partitions 1^{e_1} 2^{e_2} ... of k with e_i <= b_i of prod a_i^{e_i}
Int max_product_partition(const SeqSpec& a, const SeqSpec& b, std::uint32_t k);

// class-counting formulas: GL exact p(n); SL an n*p(n) upper bound; Sp and
// SO from the 2^{number of distinct even/odd parts} sums; even_char_bound the
// quadruple-partition coefficient
enum class UnipotentType { GL, SL_bound, Sp, SO_plus, SO_minus, even_char_bound };

Int unipotent_class_count(UnipotentType type, std::uint32_t n_or_r);
// counts for n_or_r = 0..max in one pass (shared series)
std::vector<Int> unipotent_count_sequence(UnipotentType type, std::uint32_t max);

// Lusztig symbol: unordered pair of strictly increasing sequences, kept in
// reduced form (never both containing 0).
struct Symbol {
    std::vector<std::uint32_t> S, T;

    std::uint64_t rank() const;
    std::uint32_t defect() const;
    bool reduced() const;
    bool degenerate() const { return S == T; }
};

// the shift S -> {0} u (S+1), T -> {0} u (T+1) preserves rank and defect
Symbol shift_symbol(const Symbol& s);
Symbol reduce_symbol(Symbol s);

// all reduced symbols with the given rank and defect, each unordered pair
// listed once (degenerate ones once as well)
std::vector<Symbol> symbols_of_rank(std::uint32_t rank, std::uint32_t defect);
Int count_symbols(std::uint32_t rank, std::uint32_t defect);

// unipotent character counts: A is p(r); BC sums reduced symbols of rank r
// over all odd defects; D sums defects divisible by 4 with degenerate
// symbols counted twice
enum class CharType { A, BC, D };
Int unipotent_char_count(CharType type, std::uint32_t r);

// (M, delta) with M = max(N, floor(8/eps)+1) and delta = eps/(2(2M^2+4));
// guarantee is the exact value of M^2 delta + 2 delta + 4/M, < eps
struct MasterConstants {
    Int M;
    Rat delta;
    Rat guarantee;
    bool guarantee_ok = false;
};
MasterConstants master_constants(const Rat& epsilon, const Int& N);

// gamma^{-m} a_m for m = 0..M as exact rationals
std::vector<Rat> subexp_probe(const std::vector<Int>& coeffs, const Rat& gamma);

// start of the maximal strictly-decreasing suffix (0 if the whole sequence
// decreases; size-1 if even the final step does not)
std::size_t decreasing_from(const std::vector<Rat>& v);

}  // namespace charsparse
