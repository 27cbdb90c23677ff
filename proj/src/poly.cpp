#include "charsparse/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "charsparse/errors.hpp"

namespace charsparse {
namespace {

// Dense polynomial over a Field: element indices, low-first, no trailing
// zeros (the zero polynomial is the empty vector).  Not necessarily monic.
using PV = std::vector<std::uint32_t>;

void trim(PV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const PV& a) { return static_cast<int>(a.size()) - 1; }

PV p_add(const Field& F, const PV& a, const PV& b) {
    PV out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint32_t x = i < a.size() ? a[i] : 0;
        std::uint32_t y = i < b.size() ? b[i] : 0;
        out[i] = F.add_idx(x, y);
    }
    trim(out);
    return out;
}

PV p_sub(const Field& F, const PV& a, const PV& b) {
    PV out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint32_t x = i < a.size() ? a[i] : 0;
        std::uint32_t y = i < b.size() ? b[i] : 0;
        out[i] = F.sub_idx(x, y);
    }
    trim(out);
    return out;
}

PV p_mul(const Field& F, const PV& a, const PV& b) {
    if (a.empty() || b.empty()) return {};
    PV out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            out[i + j] = F.add_idx(out[i + j], F.mul_idx(a[i], b[j]));
        }
    }
    trim(out);
    return out;
}

// quotient, remainder
std::pair<PV, PV> p_divrem(const Field& F, const PV& a, const PV& b) {
    if (b.empty()) throw domain_error("polynomial division by zero");
    if (deg(a) < deg(b)) return {PV{}, a};
    PV rem = a;
    PV quot(a.size() - b.size() + 1, 0);
    std::uint32_t linv = F.inv_idx(b.back());
    for (int i = deg(a) - deg(b); i >= 0; --i) {
        std::uint32_t c = F.mul_idx(rem[i + deg(b)], linv);
        quot[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            rem[i + j] = F.sub_idx(rem[i + j], F.mul_idx(c, b[j]));
    }
    trim(rem);
    trim(quot);
    return {quot, rem};
}

PV p_mod(const Field& F, const PV& a, const PV& b) { return p_divrem(F, a, b).second; }
PV p_div(const Field& F, const PV& a, const PV& b) { return p_divrem(F, a, b).first; }

void p_make_monic(const Field& F, PV& a) {
    if (a.empty() || a.back() == 1) return;
    std::uint32_t linv = F.inv_idx(a.back());
    for (auto& c : a) c = F.mul_idx(c, linv);
}

PV p_gcd(const Field& F, PV a, PV b) {
    while (!b.empty()) {
        PV r = p_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    p_make_monic(F, a);
    return a;
}

PV p_derivative(const Field& F, const PV& a) {
    if (a.size() <= 1) return {};
    PV out(a.size() - 1, 0);
    for (std::size_t i = 1; i < a.size(); ++i) {
        std::uint32_t scale = F.from_int(static_cast<long>(i % F.p())).idx;
        out[i - 1] = F.mul_idx(scale, a[i]);
    }
    trim(out);
    return out;
}

PV p_powmod(const Field& F, const PV& base, const Int& e, const PV& mod) {
    if (mpz_sgn(e.get_mpz_t()) == 0) return p_mod(F, PV{1}, mod);
    PV acc{1};
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        acc = p_mod(F, p_mul(F, acc, acc), mod);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = p_mod(F, p_mul(F, acc, base), mod);
    }
    return acc;
}

// inverse of x -> x^p on coefficients, exponents divided by p
PV pth_root(const Field& F, const PV& a) {
    const std::uint32_t p = F.p();
    long long e = 1;
    for (std::uint32_t j = 0; j + 1 < F.degree(); ++j) e *= p;
    PV out((a.size() + p - 1) / p, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (i % p != 0) throw validation_error("p-th power part has a stray exponent");
        out[i / p] = F.pow(F.element(a[i]), e).idx;
    }
    trim(out);
    return out;
}

// squarefree decomposition: pairwise coprime monic parts with multiplicities
void sff(const Field& F, PV f, std::uint32_t outer, std::vector<std::pair<PV, std::uint32_t>>& out) {
    const std::uint32_t p = F.p();
    PV fp = p_derivative(F, f);
    if (fp.empty()) {
        sff(F, pth_root(F, f), outer * p, out);
        return;
    }
    PV c = p_gcd(F, f, fp);
    PV w = p_div(F, f, c);
    std::uint32_t i = 1;
    while (deg(w) > 0) {
        PV y = p_gcd(F, w, c);
        PV z = p_div(F, w, y);
        if (deg(z) > 0) out.emplace_back(std::move(z), i * outer);
        w = std::move(y);
        c = p_div(F, c, w);
        ++i;
    }
    if (deg(c) > 0) sff(F, pth_root(F, c), outer * p, out);
}

// distinct-degree: (product of all irreducible factors of degree d, d)
std::vector<std::pair<PV, std::uint32_t>> ddf(const Field& F, PV f) {
    std::vector<std::pair<PV, std::uint32_t>> out;
    const Int Q(F.q());
    PV x{0, 1};
    PV h = p_mod(F, x, f);
    std::uint32_t d = 0;
    while (deg(f) >= static_cast<int>(2 * (d + 1))) {
        ++d;
        h = p_powmod(F, h, Q, f);
        PV g = p_gcd(F, p_sub(F, h, x), f);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = p_div(F, f, g);
            h = p_mod(F, h, f);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, static_cast<std::uint32_t>(deg(f)));
    return out;
}

// equal-degree splitting (Cantor-Zassenhaus; trace construction in char 2)
void edf(const Field& F, const PV& f, std::uint32_t d, std::mt19937_64& rng, std::vector<PV>& out) {
    if (deg(f) == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    const std::uint32_t Q = F.q();
    Int half;
    if (Q % 2 == 1) {
        half = int_pow(Int(Q), d) - 1;
        half /= 2;
    }
    for (;;) {
        PV h(static_cast<std::size_t>(deg(f)), 0);
        for (auto& c : h) c = static_cast<std::uint32_t>(rng() % Q);
        trim(h);
        if (deg(h) < 1) continue;
        PV g = p_gcd(F, h, f);
        if (deg(g) <= 0 || deg(g) >= deg(f)) {
            PV t;
            if (Q % 2 == 1) {
                t = p_powmod(F, h, half, f);
                t = p_sub(F, t, PV{1});
            } else {
                // trace to F_2 of the residue field F_{Q^d}
                std::uint32_t rounds = 1;
                for (std::uint32_t v = Q; v > 2; v /= 2) ++rounds;
                rounds *= d;
                PV cur = p_mod(F, h, f);
                t = cur;
                for (std::uint32_t i = 1; i < rounds; ++i) {
                    cur = p_mod(F, p_mul(F, cur, cur), f);
                    t = p_add(F, t, cur);
                }
            }
            g = p_gcd(F, t, f);
        }
        if (deg(g) > 0 && deg(g) < deg(f)) {
            edf(F, g, d, rng, out);
            edf(F, p_div(F, f, g), d, rng, out);
            return;
        }
    }
}

PV to_pv(const MonicPoly& P) {
    PV out = P.low;
    out.push_back(1);
    return out;
}

MonicPoly from_pv(const Field& F, PV a) {
    if (a.empty() || a.back() != 1)
        throw validation_error("expected a monic polynomial");
    a.pop_back();
    return MonicPoly{&F, std::move(a)};
}

std::uint64_t poly_hash(const MonicPoly& P) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(P.fld->q());
    for (auto c : P.low) mix(c + 1);
    return h;
}

std::uint32_t conj_idx(const Field& F, std::uint32_t idx, const PrimePower& base_q) {
    if (F.q() == base_q.q) return idx;
    return F.frobenius(F.element(idx), base_q.q).idx;
}

}  // namespace

std::uint32_t MonicPoly::coeff_idx(std::size_t i) const {
    if (i == low.size()) return 1;
    if (i > low.size()) throw invalid_parameter_error("coefficient index beyond degree");
    return low[i];
}

bool operator==(const MonicPoly& a, const MonicPoly& b) {
    return a.fld->q() == b.fld->q() && a.low == b.low;
}

bool operator!=(const MonicPoly& a, const MonicPoly& b) { return !(a == b); }

bool poly_less(const MonicPoly& a, const MonicPoly& b) {
    if (a.fld->q() != b.fld->q())
        throw invalid_parameter_error("comparing polynomials over different fields");
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.degree(); i-- > 0;)
        if (a.low[i] != b.low[i]) return a.low[i] < b.low[i];
    return false;
}

MonicPoly monic(const Field& F, std::vector<std::uint32_t> low_coeffs) {
    for (auto c : low_coeffs)
        if (c >= F.q()) throw invalid_parameter_error("coefficient index out of range");
    return MonicPoly{&F, std::move(low_coeffs)};
}

MonicPoly monic_one(const Field& F) { return MonicPoly{&F, {}}; }

MonicPoly monic_linear(const Field& F, FieldElem r) { return MonicPoly{&F, {F.neg_idx(r.idx)}}; }

FieldElem eval_poly(const MonicPoly& P, FieldElem x) {
    const Field& F = *P.fld;
    FieldElem acc = F.one();
    for (std::size_t i = P.degree(); i-- > 0;) acc = acc * x + F.element(P.low[i]);
    return acc;
}

MonicPoly mul(const MonicPoly& a, const MonicPoly& b) {
    if (a.fld->q() != b.fld->q())
        throw invalid_parameter_error("multiplying polynomials over different fields");
    return from_pv(*a.fld, p_mul(*a.fld, to_pv(a), to_pv(b)));
}

MonicPoly star(const MonicPoly& P, const PrimePower& base_q) {
    const Field& F = *P.fld;
    std::uint64_t bq = base_q.q;
    if (F.q() != bq && F.q() != bq * bq)
        throw invalid_parameter_error("star wants coefficients in the base field or its quadratic extension");
    const std::size_t n = P.degree();
    if (n == 0) return P;
    if (P.low[0] == 0) throw domain_error("star of a polynomial with zero constant term");
    std::uint32_t inv0 = F.inv_idx(conj_idx(F, P.low[0], base_q));
    std::vector<std::uint32_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = F.mul_idx(conj_idx(F, P.coeff_idx(n - i), base_q), inv0);
    return MonicPoly{&F, std::move(out)};
}

bool is_self_star(const MonicPoly& P, const PrimePower& base_q) { return star(P, base_q) == P; }

bool is_irreducible_poly(const MonicPoly& P) {
    const std::size_t n = P.degree();
    if (n == 0) return false;
    if (n == 1) return true;
    if (P.low[0] == 0) return false;  // divisible by x
    const Field& F = *P.fld;
    PV f = to_pv(P);
    PV x{0, 1};
    const Int Q(F.q());
    // x^{Q^n} = x mod f, and gcd(x^{Q^{n/r}} - x, f) = 1 for primes r | n
    if (p_powmod(F, x, int_pow(Q, n), f) != p_mod(F, x, f)) return false;
    std::size_t m = n;
    for (std::size_t r = 2; r * r <= m; ++r) {
        if (m % r != 0) continue;
        while (m % r == 0) m /= r;
        PV g = p_gcd(F, p_sub(F, p_powmod(F, x, int_pow(Q, n / r), f), x), f);
        if (deg(g) != 0) return false;
    }
    if (m > 1) {
        PV g = p_gcd(F, p_sub(F, p_powmod(F, x, int_pow(Q, n / m), f), x), f);
        if (deg(g) != 0) return false;
    }
    return true;
}

std::size_t Factorization::total_degree() const {
    std::size_t n = 0;
    for (const auto& [f, a] : factors) n += f.degree() * a;
    return n;
}

Factorization factor(const MonicPoly& P, std::uint64_t seed) {
    if (P.degree() == 0) throw invalid_parameter_error("factoring a constant");
    const Field& F = *P.fld;
    std::mt19937_64 rng(seed ^ poly_hash(P));

    std::vector<std::pair<PV, std::uint32_t>> sqf;
    sff(F, to_pv(P), 1, sqf);

    std::map<PV, std::uint32_t> mults;
    for (const auto& [part, mult] : sqf)
        for (const auto& [prod, d] : ddf(F, part)) {
            std::vector<PV> irr;
            edf(F, prod, d, rng, irr);
            for (auto& g : irr) mults[std::move(g)] += mult;
        }

    Factorization out;
    for (const auto& [pv, mult] : mults) out.factors.emplace_back(from_pv(F, pv), mult);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });

    if (out.total_degree() != P.degree() || expand(out) != P)
        throw validation_error("factorization does not multiply back to its input");
    return out;
}

MonicPoly expand(const Factorization& fac) {
    if (fac.factors.empty()) throw invalid_parameter_error("expanding an empty factorization");
    const Field& F = *fac.factors.front().first.fld;
    PV acc{1};
    for (const auto& [f, a] : fac.factors) {
        PV fp = to_pv(f);
        for (std::uint32_t i = 0; i < a; ++i) acc = p_mul(F, acc, fp);
    }
    return from_pv(F, std::move(acc));
}

std::uint64_t rho(const Factorization& fac) {
    std::uint64_t r = 0;
    for (const auto& [f, a] : fac.factors) r += f.degree() * static_cast<std::uint64_t>(a - 1);
    return r;
}

std::uint64_t rho(const MonicPoly& P) { return rho(factor(P)); }

Rat alpha(const Factorization& fac, const Int& base) {
    Rat out(base, base - 1);  // 1 / (1 - 1/base)
    for (const auto& [f, a] : fac.factors) {
        Int qb = int_pow(base, f.degree());
        out *= Rat(qb + 1, qb);
    }
    out.canonicalize();
    return out;
}

Rat alpha(const MonicPoly& P, const Int& base) { return alpha(factor(P), base); }

std::set<std::uint32_t> zeta_symmetric(const MonicPoly& P) {
    const std::size_t n = P.degree();
    std::uint64_t g = n;
    for (std::size_t i = 1; i < n; ++i)
        if (P.low[i] != 0) g = std::gcd(g, static_cast<std::uint64_t>(i));
    g = std::gcd(g, static_cast<std::uint64_t>(P.fld->q() - 1));
    std::set<std::uint32_t> out;
    for (std::uint64_t d = 2; d <= g; ++d)
        if (g % d == 0) out.insert(static_cast<std::uint32_t>(d));
    return out;
}

std::set<std::uint32_t> zeta_symmetric_scan(const MonicPoly& P) {
    const Field& F = *P.fld;
    const std::size_t n = P.degree();
    std::set<std::uint32_t> out;
    for (std::uint32_t zi = 2; zi < F.q(); ++zi) {
        FieldElem z = F.element(zi);
        if (F.pow(z, static_cast<long long>(n)) != F.one()) continue;
        bool sym = true;
        FieldElem zp = F.one();
        for (std::size_t i = 0; i < n && sym; ++i) {
            if (P.low[i] != 0 && zp != F.one()) sym = false;
            zp = zp * z;
        }
        if (sym) out.insert(F.mult_order(z));
    }
    return out;
}

bool is_m_regular(const MonicPoly& P, std::uint64_t m) {
    return rho(P) <= m && zeta_symmetric(P).empty();
}

std::string poly_to_string(const MonicPoly& P) {
    const Field& F = *P.fld;
    std::ostringstream os;
    bool first = true;
    auto term = [&](std::uint32_t cidx, std::size_t i) {
        if (cidx == 0) return;
        if (!first) os << " + ";
        first = false;
        bool unit = cidx == 1;
        if (!unit || i == 0) {
            if (cidx < F.p())
                os << cidx;
            else
                os << "e" << cidx;
            if (i > 0) os << "*";
        }
        if (i == 1)
            os << "x";
        else if (i > 1)
            os << "x^" << i;
    };
    for (std::size_t i = P.degree() + 1; i-- > 0;) term(P.coeff_idx(i), i);
    if (first) os << "0";
    return os.str();
}

}  // namespace charsparse
