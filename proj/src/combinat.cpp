#include "charsparse/combinat.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "charsparse/errors.hpp"

namespace charsparse {

namespace {

void require_nonneg(const Int& v, const char* what) {
    if (v < 0) throw invalid_parameter_error(std::string(what) + " must be nonnegative");
}

}  // namespace

SeqSpec SeqSpec::constant(Int v) {
    require_nonneg(v, "sequence value");
    SeqSpec s;
    s.kind = Kind::Constant;
    s.value = std::move(v);
    return s;
}

SeqSpec SeqSpec::identity() {
    SeqSpec s;
    s.kind = Kind::Identity;
    return s;
}

SeqSpec SeqSpec::prefix_tail(std::vector<Int> prefix, Int tail) {
    for (const Int& v : prefix) require_nonneg(v, "sequence value");
    require_nonneg(tail, "sequence tail");
    SeqSpec s;
    s.kind = Kind::PrefixTail;
    s.prefix = std::move(prefix);
    s.tail = std::move(tail);
    return s;
}

Int SeqSpec::at(std::uint64_t i) const {
    if (i == 0) throw invalid_parameter_error("sequences are indexed from 1");
    switch (kind) {
        case Kind::Constant: return value;
        case Kind::Identity: return Int(static_cast<unsigned long>(i));
        case Kind::PrefixTail:
            if (i <= prefix.size()) return prefix[i - 1];
            return tail;
    }
    throw invalid_parameter_error("corrupt sequence rule");
}

std::vector<Int> partition_counts(std::uint32_t n) {
    std::vector<Int> p(static_cast<std::size_t>(n) + 1);
    p[0] = 1;
    for (std::uint32_t m = 1; m <= n; ++m) {
        Int acc = 0;
        // generalized pentagonal numbers g = j(3j-1)/2 for j = 1,-1,2,-2,...
        for (std::uint32_t j = 1;; ++j) {
            std::uint64_t g1 = static_cast<std::uint64_t>(j) * (3ull * j - 1) / 2;
            std::uint64_t g2 = static_cast<std::uint64_t>(j) * (3ull * j + 1) / 2;
            if (g1 > m) break;
            int sign = (j % 2 == 1) ? 1 : -1;
            if (sign > 0) acc += p[m - g1]; else acc -= p[m - g1];
            if (g2 <= m) {
                if (sign > 0) acc += p[m - g2]; else acc -= p[m - g2];
            }
        }
        p[m] = acc;
    }
    return p;
}

Int partition_count(std::uint32_t n) { return partition_counts(n)[n]; }

std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<std::uint32_t> cur;
    // descend: place parts <= bound summing to rem
    auto rec = [&](auto&& self, std::uint32_t rem, std::uint32_t bound) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t part = std::min(rem, bound); part >= 1; --part) {
            cur.push_back(part);
            self(self, rem - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

namespace {

// in-place multiply of a truncated series by (1-z^i)^{-1}
void mul_inv_one_minus(std::vector<Int>& A, std::uint32_t i) {
    for (std::size_t m = i; m < A.size(); ++m) A[m] += A[m - i];
}

// in-place multiply by (1+z^i)
void mul_one_plus(std::vector<Int>& A, std::uint32_t i) {
    for (std::size_t m = A.size(); m-- > i;) A[m] += A[m - i];
}

}  // namespace

std::vector<Int> genfun_coeffs(const SeqSpec& a, std::uint32_t M) {
    std::vector<Int> A(static_cast<std::size_t>(M) + 1);
    A[0] = 1;
    for (std::uint32_t i = 1; i <= M; ++i) {
        Int ai = a.at(i);
        if (ai > 1000000) throw budget_error("sequence value too large for series expansion");
        for (Int e = 0; e < ai; ++e) mul_inv_one_minus(A, i);
    }
    return A;
}

Int max_product_partition(const SeqSpec& a, const SeqSpec& b, std::uint32_t k) {
    if (k == 0) throw invalid_parameter_error("partition target must be positive");
    for (std::uint32_t i = 1; i <= k; ++i) {
        if (a.at(i) < 1) throw invalid_parameter_error("factor sequence values must be >= 1");
    }
    // best[m] = max product over admissible partitions of m; 0 marks unreachable
    std::vector<Int> best(static_cast<std::size_t>(k) + 1);
    best[0] = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        Int cap = b.at(i);
        Int ai = a.at(i);
        std::vector<Int> next = best;
        for (std::uint32_t m = i; m <= k; ++m) {
            Int power = 1;
            Int e = 1;
            for (; e <= cap && static_cast<std::uint64_t>(e.get_ui()) * i <= m; ++e) {
                power *= ai;
                std::uint32_t rest = m - static_cast<std::uint32_t>(e.get_ui()) * i;
                if (best[rest] == 0) continue;
                Int cand = best[rest] * power;
                if (cand > next[m]) next[m] = cand;
            }
        }
        best = std::move(next);
    }
    if (best[k] == 0) throw domain_error("no partition satisfies the multiplicity caps");
    return best[k];
}

std::vector<Int> unipotent_count_sequence(UnipotentType type, std::uint32_t max) {
    switch (type) {
        case UnipotentType::GL:
            return partition_counts(max);
        case UnipotentType::SL_bound: {
            std::vector<Int> p = partition_counts(max);
            for (std::uint32_t n = 0; n <= max; ++n) p[n] *= n;
            return p;
        }
        case UnipotentType::Sp: {
            // sum over partitions of 2r of 2^{#distinct even parts}:
            // prod_{i odd} (1-z^i)^{-1} * prod_{i even} (1+z^i)(1-z^i)^{-1}
            std::uint32_t deg = 2 * max;
            std::vector<Int> A(static_cast<std::size_t>(deg) + 1);
            A[0] = 1;
            for (std::uint32_t i = 1; i <= deg; ++i) {
                mul_inv_one_minus(A, i);
                if (i % 2 == 0) mul_one_plus(A, i);
            }
            std::vector<Int> out(static_cast<std::size_t>(max) + 1);
            for (std::uint32_t r = 0; r <= max; ++r) out[r] = A[2 * r];
            return out;
        }
        case UnipotentType::SO_plus:
        case UnipotentType::SO_minus: {
            // S(2r) = sum over partitions of 2r of 2^{#distinct odd parts};
            // E(2r) = #partitions with all parts even = p(r); the split
            // (S +- E)/2 realizes the 2^{#distinct odd parts - 1} sum with
            // the all-even term kept on the plus side only
            std::uint32_t deg = 2 * max;
            std::vector<Int> A(static_cast<std::size_t>(deg) + 1);
            A[0] = 1;
            for (std::uint32_t i = 1; i <= deg; ++i) {
                mul_inv_one_minus(A, i);
                if (i % 2 == 1) mul_one_plus(A, i);
            }
            std::vector<Int> even = partition_counts(max);
            std::vector<Int> out(static_cast<std::size_t>(max) + 1);
            for (std::uint32_t r = 0; r <= max; ++r) {
                Int s = A[2 * r];
                Int e = even[r];
                if ((s + e) % 2 != 0) throw validation_error("odd-part split lost parity");
                if (type == UnipotentType::SO_plus) out[r] = (s + e) / 2;
                else out[r] = (s - e) / 2;
            }
            return out;
        }
        case UnipotentType::even_char_bound:
            return genfun_coeffs(SeqSpec::constant(4), max);
    }
    throw invalid_parameter_error("unknown class-count type");
}

Int unipotent_class_count(UnipotentType type, std::uint32_t n_or_r) {
    return unipotent_count_sequence(type, n_or_r)[n_or_r];
}

std::uint64_t Symbol::rank() const {
    std::uint64_t sum = 0;
    for (std::uint32_t v : S) sum += v;
    for (std::uint32_t v : T) sum += v;
    std::int64_t sz = static_cast<std::int64_t>(S.size() + T.size()) - 1;
    std::uint64_t corr = static_cast<std::uint64_t>((sz * sz) / 4);
    if (sum < corr) throw validation_error("symbol rank underflow: sequences not strictly increasing?");
    return sum - corr;
}

std::uint32_t Symbol::defect() const {
    std::size_t a = S.size(), b = T.size();
    return static_cast<std::uint32_t>(a > b ? a - b : b - a);
}

bool Symbol::reduced() const {
    bool zs = !S.empty() && S.front() == 0;
    bool zt = !T.empty() && T.front() == 0;
    return !(zs && zt);
}

Symbol shift_symbol(const Symbol& s) {
    Symbol out;
    out.S.reserve(s.S.size() + 1);
    out.T.reserve(s.T.size() + 1);
    out.S.push_back(0);
    for (std::uint32_t v : s.S) out.S.push_back(v + 1);
    out.T.push_back(0);
    for (std::uint32_t v : s.T) out.T.push_back(v + 1);
    return out;
}

Symbol reduce_symbol(Symbol s) {
    while (!s.reduced()) {
        s.S.erase(s.S.begin());
        s.T.erase(s.T.begin());
        for (std::uint32_t& v : s.S) --v;
        for (std::uint32_t& v : s.T) --v;
    }
    return s;
}

namespace {

// strictly increasing sequences of the given size and sum, entries >= lo
void increasing_seqs(std::uint32_t size, std::uint64_t sum, std::uint32_t lo,
                     std::vector<std::uint32_t>& cur,
                     std::vector<std::vector<std::uint32_t>>& out) {
    if (size == 0) {
        if (sum == 0) out.push_back(cur);
        return;
    }
    // remaining entries are distinct and >= v, so their sum >= size*v + size(size-1)/2
    std::uint64_t tail = static_cast<std::uint64_t>(size) * (size - 1) / 2;
    for (std::uint32_t v = lo;; ++v) {
        std::uint64_t min_sum = static_cast<std::uint64_t>(size) * v + tail;
        if (min_sum > sum) break;
        cur.push_back(v);
        increasing_seqs(size - 1, sum - v, v + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::uint32_t>> seqs_of(std::uint32_t size, std::uint64_t sum) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    increasing_seqs(size, sum, 0, cur, out);
    return out;
}

}  // namespace

std::vector<Symbol> symbols_of_rank(std::uint32_t rank, std::uint32_t defect) {
    std::vector<Symbol> out;
    // a reduced pair of sizes (b+d, b) has rank at least b + floor(d^2/4),
    // so sizes are bounded and the minimum is monotone in b
    std::uint64_t base = static_cast<std::uint64_t>(defect) * defect / 4;
    for (std::uint32_t b = 0; base + b <= rank; ++b) {
        std::uint32_t a = b + defect;
        if (a + b == 0) {
            if (rank == 0) out.push_back(Symbol{});  // the empty symbol
            continue;
        }
        std::int64_t sz = static_cast<std::int64_t>(a) + b - 1;
        std::uint64_t total = rank + static_cast<std::uint64_t>((sz * sz) / 4);
        std::uint64_t s_lo = static_cast<std::uint64_t>(a) * (a - 1) / 2;
        std::uint64_t t_lo = b == 0 ? 0 : static_cast<std::uint64_t>(b) * (b - 1) / 2;
        for (std::uint64_t ssum = s_lo; ssum + t_lo <= total; ++ssum) {
            std::uint64_t tsum = total - ssum;
            auto ss = seqs_of(a, ssum);
            if (ss.empty()) continue;
            auto ts = seqs_of(b, tsum);
            for (const auto& S : ss) {
                for (const auto& T : ts) {
                    bool zs = S.front() == 0;
                    bool zt = !T.empty() && T.front() == 0;
                    if (zs && zt) continue;
                    if (defect == 0 && S < T) continue;  // one listing per unordered pair
                    out.push_back(Symbol{S, T});
                }
            }
        }
    }
    for (const Symbol& s : out) {
        if (s.rank() != rank || s.defect() != defect || !s.reduced()) {
            throw validation_error("symbol enumeration produced an inconsistent symbol");
        }
    }
    return out;
}

Int count_symbols(std::uint32_t rank, std::uint32_t defect) {
    return Int(static_cast<unsigned long>(symbols_of_rank(rank, defect).size()));
}

Int unipotent_char_count(CharType type, std::uint32_t r) {
    switch (type) {
        case CharType::A:
            return partition_count(r);
        case CharType::BC: {
            Int total = 0;
            for (std::uint32_t d = 1;; d += 2) {
                // smallest rank of a reduced defect-d symbol is floor(d^2/4)
                if (static_cast<std::uint64_t>(d) * d / 4 > r) break;
                total += count_symbols(r, d);
            }
            return total;
        }
        case CharType::D: {
            Int total = 0;
            for (std::uint32_t d = 0;; d += 4) {
                if (static_cast<std::uint64_t>(d) * d / 4 > r) break;
                auto syms = symbols_of_rank(r, d);
                Int cnt = 0;
                for (const Symbol& s : syms) cnt += s.degenerate() ? 2 : 1;
                total += cnt;
            }
            return total;
        }
    }
    throw invalid_parameter_error("unknown character-count type");
}

MasterConstants master_constants(const Rat& epsilon, const Int& N) {
    if (epsilon <= 0) throw invalid_parameter_error("epsilon must be positive");
    if (N < 1) throw invalid_parameter_error("N must be >= 1");
    Rat eight_over_eps = Rat(8) / epsilon;
    Int floor8 = eight_over_eps.get_num() / eight_over_eps.get_den();  // eps > 0: truncation = floor
    Int M = std::max(N, Int(floor8 + 1));
    Rat m2(M * M);
    Rat delta = epsilon / (Rat(2) * (Rat(2) * m2 + 4));
    Rat guarantee = m2 * delta + Rat(2) * delta + Rat(4) / Rat(M);
    MasterConstants out;
    out.M = M;
    out.delta = delta;
    out.guarantee = guarantee;
    out.guarantee_ok = guarantee < epsilon;
    return out;
}

std::vector<Rat> subexp_probe(const std::vector<Int>& coeffs, const Rat& gamma) {
    if (gamma <= 1) throw invalid_parameter_error("gamma must exceed 1");
    std::vector<Rat> out;
    out.reserve(coeffs.size());
    Rat scale = 1;
    Rat inv = Rat(1) / gamma;
    inv.canonicalize();
    for (const Int& a : coeffs) {
        Rat v = Rat(a) * scale;
        v.canonicalize();
        out.push_back(v);
        scale *= inv;
    }
    return out;
}

std::size_t decreasing_from(const std::vector<Rat>& v) {
    if (v.size() < 2) return 0;
    std::size_t i = v.size() - 1;
    while (i > 0 && v[i - 1] > v[i]) --i;
    return i;
}

}  // namespace charsparse
