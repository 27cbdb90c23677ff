#include "charsparse/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "charsparse/errors.hpp"

namespace charsparse {
namespace {

struct Slot {
    std::size_t pos;          // coefficient index receiving the digit
    std::uint32_t radix;      // number of admissible values
    bool fixed_set = false;   // digit indexes into `values` instead of the field
};

// free-coefficient layout; `values` is the Frobenius-twisted fixed set used
// by the middle slot of U at even n
struct Layout {
    std::vector<Slot> slots;
    std::vector<std::uint32_t> values;
};

std::uint32_t conj_twist(const Field& F, std::uint32_t a, std::uint32_t base_q,
                         std::uint32_t c_idx) {
    return F.mul_idx(c_idx, F.frobenius(F.element(a), base_q).idx);
}

Layout layout_of(const FamilySpec& spec) {
    const Field& F = spec.coeff_field();
    Layout lay;
    switch (spec.kind) {
        case FamilyKind::L:
            for (std::size_t i = 1; i < spec.n; ++i) lay.slots.push_back({i, F.q(), false});
            break;
        case FamilyKind::U: {
            for (std::size_t i = 1; 2 * i < spec.n; ++i) lay.slots.push_back({i, F.q(), false});
            if (spec.n % 2 == 0) {
                for (std::uint32_t a = 0; a < F.q(); ++a)
                    if (a == conj_twist(F, a, spec.base_q.q, spec.c_idx)) lay.values.push_back(a);
                if (lay.values.size() != spec.base_q.q)
                    throw validation_error("twisted fixed set does not have q elements");
                lay.slots.push_back({spec.n / 2, spec.base_q.q, true});
            }
            break;
        }
        case FamilyKind::O:
            for (std::size_t i = 1; 2 * i <= spec.n; ++i) lay.slots.push_back({i, F.q(), false});
            break;
    }
    return lay;
}

MonicPoly build_member(const FamilySpec& spec, const Layout& lay,
                       const std::vector<std::uint32_t>& digits) {
    const Field& F = spec.coeff_field();
    std::vector<std::uint32_t> low(spec.n, 0);
    low[0] = spec.c_idx;
    for (std::size_t s = 0; s < lay.slots.size(); ++s) {
        const Slot& sl = lay.slots[s];
        std::uint32_t a = sl.fixed_set ? lay.values[digits[s]] : digits[s];
        low[sl.pos] = a;
        std::size_t mirror = spec.n - sl.pos;
        if (mirror < spec.n && mirror != sl.pos) {
            if (spec.kind == FamilyKind::U)
                low[mirror] = conj_twist(F, a, spec.base_q.q, spec.c_idx);
            else if (spec.kind == FamilyKind::O)
                low[mirror] = a;
        }
    }
    return monic(F, std::move(low));
}

std::vector<std::uint32_t> digits_of(const Layout& lay, Int index) {
    std::vector<std::uint32_t> digits(lay.slots.size(), 0);
    for (std::size_t s = 0; s < lay.slots.size(); ++s) {
        Int d = index % lay.slots[s].radix;
        digits[s] = static_cast<std::uint32_t>(d.get_ui());
        index /= lay.slots[s].radix;
    }
    return digits;
}

// shared loop behind the four statistics: count members satisfying pred
struct RunResult {
    Int examined;
    std::uint64_t count = 0;
    bool exhaustive = true;
};

RunResult run_stat(const FamilySpec& spec, const StatConfig& cfg,
                   const std::function<bool(const MonicPoly&)>& pred) {
    RunResult res;
    Int pop = family_cardinality(spec);
    res.exhaustive = pop <= cfg.exhaustive_cap;
    std::uint32_t workers = std::max<std::uint32_t>(1, cfg.workers);
    std::vector<std::uint64_t> counts(workers, 0);

    if (res.exhaustive) {
        res.examined = pop;
        auto work = [&](std::uint32_t w) {
            Int lo = pop * w / workers;
            Int hi = pop * (w + 1) / workers;
            family_for_each(spec, lo, hi, [&](const MonicPoly& P) {
                if (pred(P)) ++counts[w];
            });
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
    } else {
        res.examined = Int(cfg.samples);
        auto work = [&](std::uint32_t w) {
            std::uint64_t share = cfg.samples / workers + (w < cfg.samples % workers ? 1 : 0);
            std::uint64_t stream = cfg.seed * 0x9E3779B97F4A7C15ULL + w + 1;
            for (const auto& P : family_sample(spec, share, stream))
                if (pred(P)) ++counts[w];
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
    }
    for (auto c : counts) res.count += c;
    return res;
}

FamilyStats make_stats(const FamilySpec& spec, const StatConfig& cfg, const std::string& name,
                       std::uint64_t m_or_M, const RunResult& res) {
    FamilyStats st;
    st.spec = spec;
    st.statistic = name;
    st.m_or_M = m_or_M;
    st.population = family_cardinality(spec);
    st.examined = res.examined;
    st.count = res.count;
    st.exhaustive = res.exhaustive;
    st.seed = cfg.seed;
    return st;
}

}  // namespace

char kind_letter(FamilyKind k) {
    switch (k) {
        case FamilyKind::L: return 'L';
        case FamilyKind::U: return 'U';
        case FamilyKind::O: return 'O';
    }
    throw invalid_parameter_error("unknown family kind");
}

FamilyKind kind_from_string(const std::string& s) {
    if (s == "L" || s == "l") return FamilyKind::L;
    if (s == "U" || s == "u") return FamilyKind::U;
    if (s == "O" || s == "o") return FamilyKind::O;
    throw invalid_parameter_error("family kind must be L, U, or O");
}

const Field& FamilySpec::coeff_field() const {
    return kind == FamilyKind::U ? field_make(base_q.q * base_q.q) : field_make(base_q.q);
}

FieldElem FamilySpec::constant_term() const { return coeff_field().element(c_idx); }

FamilySpec family_spec(FamilyKind kind, std::uint32_t n, PrimePower q) {
    const Field& F =
        kind == FamilyKind::U ? field_make(q.q * q.q) : field_make(q.q);
    std::uint32_t c = n % 2 == 0 ? F.one().idx : F.from_int(-1).idx;
    return family_spec(kind, n, q, c);
}

FamilySpec family_spec(FamilyKind kind, std::uint32_t n, PrimePower q, std::uint32_t c_idx) {
    if (n < 1) throw invalid_parameter_error("family degree must be positive");
    FamilySpec spec{kind, n, q, c_idx};
    const Field& F = spec.coeff_field();
    if (c_idx >= F.q()) throw invalid_parameter_error("constant term outside the coefficient field");
    switch (kind) {
        case FamilyKind::L:
            if (c_idx == 0) throw invalid_parameter_error("L needs a nonzero constant term");
            break;
        case FamilyKind::U: {
            FieldElem c = F.element(c_idx);
            if (c.is_zero() || F.mul(c, F.frobenius(c, q.q)) != F.one())
                throw invalid_parameter_error("U needs c with c*conj(c) = 1");
            break;
        }
        case FamilyKind::O:
            if (n % 2 != 0) throw invalid_parameter_error("O needs even degree");
            if (c_idx != F.one().idx) throw invalid_parameter_error("O fixes the constant term to 1");
            break;
    }
    return spec;
}

Int family_cardinality(const FamilySpec& spec) {
    std::uint32_t exp = spec.kind == FamilyKind::O ? spec.n / 2 : spec.n - 1;
    return int_pow(Int(spec.base_q.q), exp);
}

MonicPoly family_member(const FamilySpec& spec, const Int& index) {
    if (index < 0 || index >= family_cardinality(spec))
        throw invalid_parameter_error("family index out of range");
    Layout lay = layout_of(spec);
    return build_member(spec, lay, digits_of(lay, index));
}

void family_for_each(const FamilySpec& spec, const Int& lo, const Int& hi,
                     const std::function<void(const MonicPoly&)>& fn) {
    if (lo < 0 || hi > family_cardinality(spec) || lo > hi)
        throw invalid_parameter_error("family index range out of bounds");
    Layout lay = layout_of(spec);
    std::vector<std::uint32_t> digits = digits_of(lay, lo);
    for (Int i = lo; i < hi; ++i) {
        fn(build_member(spec, lay, digits));
        // odometer step: lowest slot varies fastest
        for (std::size_t s = 0; s < lay.slots.size(); ++s) {
            if (++digits[s] < lay.slots[s].radix) break;
            digits[s] = 0;
        }
    }
}

std::vector<MonicPoly> family_enumerate(const FamilySpec& spec, std::uint64_t cap) {
    Int pop = family_cardinality(spec);
    if (pop > cap)
        throw budget_error("population exceeds the exhaustive cap; use family_sample");
    std::vector<MonicPoly> out;
    out.reserve(pop.get_ui());
    family_for_each(spec, 0, pop, [&](const MonicPoly& P) { out.push_back(P); });
    return out;
}

bool family_membership(const MonicPoly& P, const FamilySpec& spec) {
    const Field& F = spec.coeff_field();
    if (P.fld->q() != F.q() || P.degree() != spec.n) return false;
    if (P.low[0] != spec.c_idx) return false;
    if (spec.kind == FamilyKind::L) return true;
    return star(P, spec.base_q) == P;
}

std::vector<MonicPoly> family_sample(const FamilySpec& spec, std::uint64_t count,
                                     std::uint64_t seed) {
    Layout lay = layout_of(spec);
    std::mt19937_64 rng(seed);
    std::vector<MonicPoly> out;
    out.reserve(count);
    std::vector<std::uint32_t> digits(lay.slots.size(), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        for (std::size_t s = 0; s < lay.slots.size(); ++s)
            digits[s] = static_cast<std::uint32_t>(rng() % lay.slots[s].radix);
        out.push_back(build_member(spec, lay, digits));
    }
    return out;
}

std::string FamilyStats::fraction() const {
    if (examined == 0) return "0";
    Rat f(Int(count), examined);
    f.canonicalize();
    return rat_to_string(f);
}

std::string FamilyStats::mode() const { return exhaustive ? "exhaustive" : "sampled"; }

FamilyStats stat_factor_degree_divisible(const FamilySpec& spec, std::uint32_t m,
                                         const StatConfig& cfg, bool half_degree_variant) {
    if (m < 1) throw invalid_parameter_error("factor-degree statistic needs m >= 1");
    std::uint32_t d = m;
    if (half_degree_variant) {
        if (spec.kind != FamilyKind::U || m % 2 != 0)
            throw invalid_parameter_error("half-degree variant is for U with even m");
        d = m / 2;
    }
    auto res = run_stat(spec, cfg, [&](const MonicPoly& P) {
        for (const auto& fa : factor(P, cfg.seed).factors)
            if (fa.first.degree() % d == 0) return true;
        return false;
    });
    auto st = make_stats(spec, cfg, half_degree_variant ? "factor_degree_divisible_half"
                                                        : "factor_degree_divisible",
                         m, res);
    std::uint32_t fam = spec.kind == FamilyKind::L ? 1 : spec.kind == FamilyKind::U ? 2 : 3;
    std::ostringstream os;
    os << fam << "*" << st.population << "*(1+ln " << spec.n << ")/" << d;
    st.stated_bound = os.str();
    if (st.exhaustive) {
        // conservative: compare against a slightly shrunk bound so double
        // rounding can only turn a true "holds" into "violated", never the
        // other way
        double bound = fam * st.population.get_d() * (1.0 + std::log(static_cast<double>(spec.n))) /
                       static_cast<double>(d);
        st.bound_holds = static_cast<double>(st.count) < bound * (1.0 - 1e-12) ? 1 : 0;
    }
    return st;
}

FamilyStats stat_rho_ge(const FamilySpec& spec, std::uint32_t m, const StatConfig& cfg) {
    auto res = run_stat(spec, cfg, [&](const MonicPoly& P) { return rho(factor(P, cfg.seed)) >= m; });
    auto st = make_stats(spec, cfg, "rho_ge", m, res);
    std::uint32_t q = spec.base_q.q;
    std::ostringstream os;
    bool quarter = spec.kind == FamilyKind::O;
    std::uint32_t coeff = spec.kind == FamilyKind::U ? 4 : 2;
    os << coeff << "*" << q << "^(-" << m << "/" << (quarter ? 4 : 2) << ")*" << st.population;
    st.stated_bound = os.str();
    if (st.exhaustive) {
        // count < coeff * q^{-m/e} * pop  <=>  count^e * q^m < coeff^e * pop^e
        std::uint32_t e = quarter ? 4 : 2;
        Int lhs = int_pow(Int(st.count), e) * int_pow(Int(q), m);
        Int rhs = int_pow(Int(coeff), e) * int_pow(st.population, e);
        st.bound_holds = lhs < rhs ? 1 : 0;
    }
    return st;
}

FamilyStats stat_alpha_ge(const FamilySpec& spec, std::uint32_t M, const StatConfig& cfg) {
    if (M < 1) throw invalid_parameter_error("alpha statistic needs M >= 1");
    std::uint32_t q = spec.base_q.q;
    Rat threshold = rat_pow(Rat(q + 1, q), M);
    auto res = run_stat(spec, cfg, [&](const MonicPoly& P) {
        return alpha(factor(P, cfg.seed), Int(q)) >= threshold;
    });
    auto st = make_stats(spec, cfg, "alpha_ge", M, res);
    std::ostringstream os;
    os << "threshold (1+1/" << q << ")^" << M;
    st.stated_bound = os.str();
    return st;
}

FamilyStats stat_zeta_symmetric(const FamilySpec& spec, const StatConfig& cfg) {
    if (spec.kind == FamilyKind::O)
        throw unsupported_error("scalar-symmetry counts are stated for L and U only");
    auto res = run_stat(spec, cfg, [](const MonicPoly& P) { return !zeta_symmetric(P).empty(); });
    auto st = make_stats(spec, cfg, "zeta_symmetric", 0, res);
    std::uint32_t q = spec.base_q.q;
    std::ostringstream os;
    os << "2*" << q << "^(" << spec.n << "/2-1)";
    st.stated_bound = os.str();
    if (st.exhaustive) {
        // count < 2 q^{n/2-1}  <=>  count^2 q^{max(0,2-n)} < 4 q^{max(0,n-2)}
        Int lhs = Int(st.count) * Int(st.count) *
                  int_pow(Int(q), spec.n < 2 ? 2 - spec.n : 0);
        Int rhs = 4 * int_pow(Int(q), spec.n >= 2 ? spec.n - 2 : 0);
        st.bound_holds = lhs < rhs ? 1 : 0;
    }
    return st;
}

}  // namespace charsparse
