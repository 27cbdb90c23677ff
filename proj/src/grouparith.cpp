#include "charsparse/grouparith.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "charsparse/errors.hpp"

namespace charsparse {

namespace {

Int int_of(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

Int pow_mod(const Int& base, unsigned long e, const Int& mod) {
    Int out;
    mpz_powm_ui(out.get_mpz_t(), base.get_mpz_t(), e, mod.get_mpz_t());
    return out;
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::uint32_t> prime_divisors_u32(std::uint32_t m) {
    std::vector<std::uint32_t> out;
    std::uint32_t rest = m;
    for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= rest; ++p) {
        if (rest % p == 0) {
            out.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    }
    if (rest > 1) out.push_back(rest);
    return out;
}

// q has multiplicative order exactly m modulo the prime ell
bool order_is_exactly(const Int& q, std::uint32_t m, const Int& ell) {
    if (pow_mod(q, m, ell) != 1) return false;
    for (std::uint32_t p : prime_divisors_u32(m)) {
        if (pow_mod(q, m / p, ell) == 1) return false;
    }
    return true;
}

bool is_zsigmondy_prime(const Int& ell, const Int& q, std::uint32_t m) {
    if (m < 2 || ell < 2 || !is_probable_prime(ell)) return false;
    if (q % ell == 0) return false;
    return order_is_exactly(q, m, ell);
}

}  // namespace

GroupSpec group_spec(GroupCase cas, std::uint32_t n_or_r, PrimePower q) {
    if (cas == GroupCase::A_linear || cas == GroupCase::A_unitary) {
        if (n_or_r < 2) throw invalid_parameter_error("A cases need dimension n >= 2");
    } else if (n_or_r < 1) {
        throw invalid_parameter_error("rank must be >= 1");
    }
    return GroupSpec{cas, n_or_r, q};
}

Int center_order(const GroupSpec& spec) {
    Int q = int_of(spec.q.q);
    switch (spec.cas) {
        case GroupCase::A_linear: return int_gcd(int_of(spec.n_or_r), q - 1);
        case GroupCase::A_unitary: return int_gcd(int_of(spec.n_or_r), q + 1);
        case GroupCase::B:
        case GroupCase::C: return int_gcd(Int(2), q - 1);
        case GroupCase::D_plus: return int_gcd(Int(4), int_pow(q, spec.n_or_r) - 1);
        case GroupCase::D_minus: return int_gcd(Int(4), int_pow(q, spec.n_or_r) + 1);
    }
    throw invalid_parameter_error("unknown group case");
}

DualFamily dual_family(GroupCase cas) {
    switch (cas) {
        case GroupCase::A_linear: return {FamilyKind::L, false};
        case GroupCase::A_unitary: return {FamilyKind::U, false};
        case GroupCase::B:
        case GroupCase::C: return {FamilyKind::O, true};
        case GroupCase::D_plus:
        case GroupCase::D_minus: return {FamilyKind::O, false};
    }
    throw invalid_parameter_error("unknown group case");
}

Int gl_order(std::uint32_t n, const Int& Q) {
    if (n == 0) return 1;
    Int qn = int_pow(Q, n);
    Int out = 1;
    Int qk = 1;
    for (std::uint32_t k = 0; k < n; ++k) {
        out *= qn - qk;
        qk *= Q;
    }
    return out;
}

Int u_order(std::uint32_t n, const Int& Q0) {
    if (n == 0) return 1;
    Int out = int_pow(Q0, static_cast<unsigned long>(n) * (n - 1) / 2);
    for (std::uint32_t k = 1; k <= n; ++k) {
        Int term = int_pow(Q0, k);
        if (k % 2 == 0) term -= 1; else term += 1;
        out *= term;
    }
    return out;
}

namespace {

Int sp_so_odd_order(std::uint32_t r, const Int& q) {
    Int out = int_pow(q, static_cast<unsigned long>(r) * r);
    for (std::uint32_t i = 1; i <= r; ++i) out *= int_pow(q, 2 * i) - 1;
    return out;
}

Int so_even_order(std::uint32_t r, const Int& q, int eps) {
    Int out = int_pow(q, static_cast<unsigned long>(r) * (r - 1));
    out *= int_pow(q, r) - eps;
    for (std::uint32_t i = 1; i < r; ++i) out *= int_pow(q, 2 * i) - 1;
    return out;
}

[[noreturn]] void bad_variant() {
    throw invalid_parameter_error("order variant not defined for this group case");
}

}  // namespace

Int group_order(const GroupSpec& spec, OrderVariant variant) {
    Int q = int_of(spec.q.q);
    std::uint32_t n = spec.n_or_r;
    switch (spec.cas) {
        case GroupCase::A_linear: {
            Int gl = gl_order(n, q);
            switch (variant) {
                case OrderVariant::GL: return gl;
                case OrderVariant::SL:
                case OrderVariant::adjoint:
                case OrderVariant::simply_connected: return gl / (q - 1);
                case OrderVariant::simple: return gl / (q - 1) / center_order(spec);
                default: bad_variant();
            }
        }
        case GroupCase::A_unitary: {
            Int u = u_order(n, q);
            switch (variant) {
                case OrderVariant::U: return u;
                case OrderVariant::SU:
                case OrderVariant::adjoint:
                case OrderVariant::simply_connected: return u / (q + 1);
                case OrderVariant::simple: return u / (q + 1) / center_order(spec);
                default: bad_variant();
            }
        }
        case GroupCase::B: {
            Int so = sp_so_odd_order(n, q);
            switch (variant) {
                case OrderVariant::SO:
                case OrderVariant::adjoint:
                case OrderVariant::simply_connected: return so;
                case OrderVariant::Omega:
                case OrderVariant::simple: return so / center_order(spec);
                default: bad_variant();
            }
        }
        case GroupCase::C: {
            Int sp = sp_so_odd_order(n, q);
            switch (variant) {
                case OrderVariant::Sp:
                case OrderVariant::adjoint:
                case OrderVariant::simply_connected: return sp;
                case OrderVariant::simple: return sp / center_order(spec);
                default: bad_variant();
            }
        }
        case GroupCase::D_plus:
        case GroupCase::D_minus: {
            int eps = spec.cas == GroupCase::D_plus ? 1 : -1;
            Int so = so_even_order(n, q, eps);
            switch (variant) {
                case OrderVariant::SO:
                case OrderVariant::adjoint:
                case OrderVariant::simply_connected: return so;
                case OrderVariant::Omega: return so / int_gcd(Int(2), q - 1);
                case OrderVariant::simple: return so / center_order(spec);
                default: bad_variant();
            }
        }
    }
    throw invalid_parameter_error("unknown group case");
}

Int prime_to_q_part(const Int& N, PrimePower q) {
    if (N < 1) throw invalid_parameter_error("argument must be positive");
    Int out = N;
    Int p = int_of(q.p);
    while (out % p == 0) out /= p;
    return out;
}

namespace {

// one nontrivial factor of composite odd n, or a budget error
Int pollard_brent(const Int& n, std::uint64_t& budget) {
    for (unsigned long c = 1; c < 100; ++c) {
        Int y = 2, x, ys, g = 1, accum = 1;
        std::uint64_t r = 1;
        const std::uint64_t batch = 128;
        auto step = [&](Int& v) {
            if (budget == 0) throw budget_error("integer factorization budget exhausted");
            --budget;
            v = (v * v + static_cast<signed long>(c)) % n;
        };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) step(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    step(y);
                    Int diff = x - y;
                    if (diff < 0) diff = -diff;
                    if (diff != 0) accum = accum * diff % n;
                }
                g = int_gcd(accum, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // batched gcd overshot: replay one step at a time
            g = 1;
            while (g == 1) {
                step(ys);
                Int diff = x - ys;
                if (diff < 0) diff = -diff;
                g = int_gcd(diff, n);
            }
        }
        if (g != n) return g;
    }
    throw budget_error("integer factorization ran out of polynomial offsets");
}

void factor_into(const Int& n, std::uint64_t& budget, std::map<Int, std::uint32_t>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_brent(n, budget);
    factor_into(d, budget, out);
    factor_into(n / d, budget, out);
}

}  // namespace

std::map<Int, std::uint32_t> factor_integer(const Int& n, std::uint64_t budget) {
    if (n < 1) throw invalid_parameter_error("can only factor positive integers");
    std::map<Int, std::uint32_t> out;
    Int rest = n;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            ++out[Int(p)];
            rest /= static_cast<signed long>(p);
        }
    }
    for (unsigned long p = 17; p < 100000 && rest > 1; p += 2) {
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        do {
            ++out[Int(p)];
            rest /= static_cast<signed long>(p);
        } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
    }
    factor_into(rest, budget, out);
    return out;
}

ZsigmondyResult zsigmondy(PrimePower q, std::uint32_t m, std::uint64_t budget) {
    if (m < 2) throw invalid_parameter_error("multiplicative order target must be >= 2");
    Int qi = int_of(q.q);
    Int N = int_pow(qi, m) - 1;
    ZsigmondyResult out;
    out.q = qi;
    out.m = m;
    for (const auto& [ell, mult] : factor_integer(N, budget)) {
        (void)mult;
        if (order_is_exactly(qi, m, ell)) out.primes.insert(ell);
    }
    return out;
}

std::pair<bool, bool> which_z_check(const Int& ell, PrimePower q, std::uint32_t m,
                                    std::uint32_t k) {
    Int qi = int_of(q.q);
    if (!is_zsigmondy_prime(ell, qi, m)) {
        throw precondition_error("prime does not have the required multiplicative order");
    }
    Int pk = pow_mod(qi, k, ell);
    bool divides_minus = pk == 1;
    bool divides_plus = (pk + 1) % ell == 0;
    bool lemma_minus = k % m == 0;
    bool lemma_plus = m % 2 == 0 && k % (m / 2) == 0 && (k / (m / 2)) % 2 == 1;
    if (divides_minus != lemma_minus || divides_plus != lemma_plus) {
        throw validation_error("divisibility disagrees with the order characterization");
    }
    return {divides_minus, divides_plus};
}

Int centralizer_order_gl(const Factorization& f, PrimePower q) {
    if (f.factors.empty()) throw invalid_parameter_error("empty factorization");
    if (f.factors.front().first.field().q() != q.q) {
        throw invalid_parameter_error("factorization is over a different field");
    }
    Int out = 1;
    for (const auto& [poly, mult] : f.factors) {
        out *= gl_order(mult, int_pow(int_of(q.q), poly.degree()));
    }
    return out;
}

Int centralizer_order_u(const Factorization& f, PrimePower base_q) {
    if (f.factors.empty()) throw invalid_parameter_error("empty factorization");
    std::uint64_t qq = static_cast<std::uint64_t>(base_q.q) * base_q.q;
    if (f.factors.front().first.field().q() != qq) {
        throw invalid_parameter_error("factorization is not over the quadratic extension");
    }
    Int q = int_of(base_q.q);
    Int out = 1;
    std::vector<bool> done(f.factors.size(), false);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (done[i]) continue;
        const auto& [poly, mult] = f.factors[i];
        MonicPoly st = star(poly, base_q);
        if (st == poly) {
            out *= u_order(mult, int_pow(q, poly.degree()));
            done[i] = true;
            continue;
        }
        bool paired = false;
        for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
            if (done[j] || !(f.factors[j].first == st)) continue;
            if (f.factors[j].second != mult) {
                throw domain_error("swapped factors with unequal multiplicities");
            }
            out *= gl_order(mult, int_pow(q, 2 * poly.degree()));
            done[i] = done[j] = true;
            paired = true;
            break;
        }
        if (!paired) throw domain_error("factor lacks its swapped partner");
    }
    return out;
}

Int torus_centralizer_order(GroupCase cas, const Factorization& f, PrimePower base_q) {
    if (f.factors.empty()) throw invalid_parameter_error("empty factorization");
    for (const auto& fa : f.factors) {
        if (fa.second != 1) throw domain_error("torus orders need squarefree input");
    }
    Int q = int_of(base_q.q);
    std::uint32_t n = f.total_degree();
    Int torus = 1;
    std::uint32_t rank = 0;

    if (cas == GroupCase::A_linear) {
        if (f.factors.front().first.field().q() != base_q.q) {
            throw invalid_parameter_error("factorization is over a different field");
        }
        for (const auto& fa : f.factors) torus *= int_pow(q, fa.first.degree()) - 1;
        if (torus % (q - 1) != 0) throw validation_error("determinant quotient not integral");
        torus /= q - 1;
        rank = n - 1;
    } else if (cas == GroupCase::A_unitary) {
        std::uint64_t qq = static_cast<std::uint64_t>(base_q.q) * base_q.q;
        if (f.factors.front().first.field().q() != qq) {
            throw invalid_parameter_error("factorization is not over the quadratic extension");
        }
        std::vector<bool> done(f.factors.size(), false);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            if (done[i]) continue;
            const MonicPoly& poly = f.factors[i].first;
            MonicPoly st = star(poly, base_q);
            if (st == poly) {
                if (poly.degree() % 2 == 0) {
                    throw validation_error("self-swapped factor of even degree");
                }
                torus *= int_pow(q, poly.degree()) + 1;
                done[i] = true;
                continue;
            }
            bool paired = false;
            for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
                if (done[j] || !(f.factors[j].first == st)) continue;
                torus *= int_pow(q, 2 * poly.degree()) - 1;
                done[i] = done[j] = true;
                paired = true;
                break;
            }
            if (!paired) throw domain_error("factor lacks its swapped partner");
        }
        if (torus % (q + 1) != 0) throw validation_error("determinant quotient not integral");
        torus /= q + 1;
        rank = n - 1;
    } else {
        if (f.factors.front().first.field().q() != base_q.q) {
            throw invalid_parameter_error("factorization is over a different field");
        }
        PrimePower pp = base_q;
        std::vector<bool> done(f.factors.size(), false);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            if (done[i]) continue;
            const MonicPoly& poly = f.factors[i].first;
            MonicPoly st = star(poly, pp);
            if (st == poly) {
                std::uint32_t d = poly.degree();
                if (d == 1) {
                    // x -+ 1 eigenvalues: no torus contribution
                } else if (d % 2 == 0) {
                    torus *= int_pow(q, d / 2) + 1;
                } else {
                    throw validation_error("self-reciprocal irreducible of odd degree > 1");
                }
                done[i] = true;
                continue;
            }
            bool paired = false;
            for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
                if (done[j] || !(f.factors[j].first == st)) continue;
                torus *= int_pow(q, poly.degree()) - 1;
                done[i] = done[j] = true;
                paired = true;
                break;
            }
            if (!paired) throw domain_error("factor lacks its reciprocal partner");
        }
        rank = n / 2;
    }

    Rat a = alpha(f, q);
    // torus <= alpha * q^rank, compared exactly
    if (torus * a.get_den() > a.get_num() * int_pow(q, rank)) {
        throw validation_error("torus order exceeds its ceiling");
    }
    return torus;
}

bool just_one_check(const MonicPoly& P, std::uint32_t m, const Int& ell, JustOneMode mode) {
    if (m < 2) throw invalid_parameter_error("order target must be >= 2");
    Factorization fac = factor(P);
    std::uint32_t rh = rho(fac);
    PrimePower field_pp = P.field().prime_power();

    if (mode == JustOneMode::linear) {
        if (m <= 2 * rh) throw precondition_error("order target too small for this repetition load");
        for (const auto& fa : fac.factors) {
            if (fa.first.degree() % m == 0) {
                throw precondition_error("a factor degree is a multiple of the order target");
            }
        }
        if (!is_zsigmondy_prime(ell, int_of(field_pp.q), m)) {
            throw precondition_error("prime does not have the required multiplicative order");
        }
        Int cent = centralizer_order_gl(fac, field_pp);
        return int_gcd(ell, cent) == 1;
    }

    if (field_pp.k % 2 != 0) {
        throw invalid_parameter_error("quadratic-extension input required");
    }
    PrimePower base = PrimePower::make(field_pp.p, field_pp.k / 2);
    if (m <= 4 * rh) throw precondition_error("order target too small for this repetition load");
    for (const auto& fa : fac.factors) {
        if ((2 * fa.first.degree()) % m == 0) {
            throw precondition_error("a factor degree is a multiple of half the order target");
        }
    }
    if (!is_zsigmondy_prime(ell, int_of(base.q), m)) {
        throw precondition_error("prime does not have the required multiplicative order");
    }
    Int cent = centralizer_order_u(fac, base);
    return int_gcd(ell, cent) == 1;
}

Int burnside_d(const Int& char_degree, const Int& class_size) {
    if (char_degree < 1 || class_size < 1) {
        throw invalid_parameter_error("degree and class size must be positive");
    }
    return char_degree / int_gcd(char_degree, class_size);
}

Int jordan_degree(const Int& G_prime_part, const Int& H_prime_part, const Int& pi_degree) {
    if (G_prime_part < 1 || H_prime_part < 1 || pi_degree < 1) {
        throw invalid_parameter_error("order parts and degree must be positive");
    }
    if (G_prime_part % H_prime_part != 0) {
        throw domain_error("subgroup part does not divide the group part");
    }
    return G_prime_part / H_prime_part * pi_degree;
}

std::uint32_t ord_of(const Int& N, const Int& ell) { return ordinal_of_prime(N, ell); }

}  // namespace charsparse
