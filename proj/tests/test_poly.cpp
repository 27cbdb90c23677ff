#include <doctest.h>

#include <set>
#include <vector>

#include "charsparse/errors.hpp"
#include "charsparse/ff.hpp"
#include "charsparse/poly.hpp"

using namespace charsparse;

namespace {

// every monic polynomial of the given degree, optionally with c_0 != 0
std::vector<MonicPoly> all_monic(const Field& F, std::size_t n, bool nonzero_c0) {
    std::vector<MonicPoly> out;
    std::vector<std::uint32_t> low(n, 0);
    for (;;) {
        if (!nonzero_c0 || n == 0 || low[0] != 0) out.push_back(monic(F, low));
        std::size_t i = 0;
        while (i < n && low[i] + 1 == F.q()) low[i++] = 0;
        if (i == n) break;
        ++low[i];
    }
    return out;
}

}  // namespace

TEST_CASE("star matches hand-computed values") {
    const Field& F2 = field_make(2);
    const Field& F3 = field_make(3);
    const Field& F4 = field_make(4);
    auto q2 = PrimePower::of(2);
    auto q3 = PrimePower::of(3);

    CHECK(star(monic(F2, {1, 1}), q2) == monic(F2, {1, 1}));
    CHECK(star(monic(F3, {2, 1}), q3) == monic(F3, {2, 2}));
    // over F_4 with conjugation: g |-> g^2 = g+1, so x^2+gx+1 |-> x^2+(g+1)x+1
    CHECK(star(monic(F4, {1, 2}), q2) == monic(F4, {1, 3}));
    CHECK_THROWS_AS(star(monic(F3, {0, 1}), q3), domain_error);
}

TEST_CASE("star is an involution and multiplicative") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
        const Field& F = field_make(q);
        auto base = PrimePower::of(q);
        for (std::size_t n = 1; n <= 4; ++n)
            for (const auto& P : all_monic(F, n, true)) CHECK(star(star(P, base), base) == P);
    }
    // conjugating star over the quadratic extension
    const Field& F9 = field_make(9);
    auto q3 = PrimePower::of(3);
    for (const auto& P : all_monic(F9, 2, true)) {
        CHECK(star(star(P, q3), q3) == P);
        for (const auto& Q : all_monic(F9, 1, true))
            CHECK(star(mul(P, Q), q3) == mul(star(P, q3), star(Q, q3)));
    }
}

TEST_CASE("factor matches hand-computed factorizations") {
    const Field& F2 = field_make(2);
    const Field& F3 = field_make(3);
    const Field& F5 = field_make(5);

    auto f1 = factor(monic(F3, {1, 1}));  // x^2+x+1 = (x+2)^2 over F_3
    REQUIRE(f1.factors.size() == 1);
    CHECK(f1.factors[0].first == monic(F3, {2}));
    CHECK(f1.factors[0].second == 2);

    auto f2 = factor(monic(F2, {1, 1}));
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].second == 1);
    CHECK(is_irreducible_poly(monic(F2, {1, 1})));

    auto f3 = factor(monic(F5, {0, 4, 0}));  // x^3 - x = x(x+1)(x+4)
    REQUIRE(f3.factors.size() == 3);
    CHECK(f3.factors[0].first == monic(F5, {0}));
    CHECK(f3.factors[1].first == monic(F5, {1}));
    CHECK(f3.factors[2].first == monic(F5, {4}));
}

TEST_CASE("factor round-trips and yields irreducibles, independent of seed") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
        const Field& F = field_make(q);
        std::size_t maxn = q <= 4 ? 4 : 3;
        for (std::size_t n = 1; n <= maxn; ++n)
            for (const auto& P : all_monic(F, n, false)) {
                auto fac = factor(P, 7);
                CHECK(expand(fac) == P);
                CHECK(fac.total_degree() == n);
                for (const auto& [f, a] : fac.factors) {
                    CHECK(is_irreducible_poly(f));
                    CHECK(a >= 1);
                }
                auto fac2 = factor(P, 8675309);
                REQUIRE(fac.factors.size() == fac2.factors.size());
                for (std::size_t i = 0; i < fac.factors.size(); ++i) {
                    CHECK(fac.factors[i].first == fac2.factors[i].first);
                    CHECK(fac.factors[i].second == fac2.factors[i].second);
                }
            }
    }
    // a deeper char-2 case exercising the p-th-root descent: (x^2+x+1)^4
    const Field& F4 = field_make(4);
    MonicPoly base = monic(F4, {1, 1});
    MonicPoly P = mul(mul(base, base), mul(base, base));
    auto fac = factor(P);
    REQUIRE(fac.factors.size() == 2);  // x^2+x+1 = (x+g)(x+g^2) over F_4
    CHECK(fac.factors[0].second == 4);
    CHECK(fac.factors[1].second == 4);
    CHECK(expand(fac) == P);
}

TEST_CASE("rho counts repeated factors") {
    const Field& F2 = field_make(2);
    const Field& F3 = field_make(3);
    const Field& F5 = field_make(5);
    CHECK(rho(monic(F5, {0, 4, 0})) == 0);       // squarefree
    CHECK(rho(monic(F3, {2, 0, 0})) == 2);       // (x-1)^3 = x^3+2
    CHECK(rho(monic(F2, {1, 1, 0, 1})) == 1);    // (x-1)^2 (x^2+x+1)
}

TEST_CASE("rho is invariant under twist and field extension") {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        const Field& F = field_make(q);
        for (std::size_t n = 1; n <= 3; ++n)
            for (const auto& P : all_monic(F, n, true)) {
                std::uint64_t r = rho(P);
                for (std::uint32_t w = 1; w < q; ++w) {
                    FieldElem om = F.element(w);
                    // omega^{-n} P(omega x)
                    std::vector<std::uint32_t> tw(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        FieldElem s = F.pow(om, static_cast<long long>(i) - static_cast<long long>(n));
                        tw[i] = F.mul_idx(P.low[i], s.idx);
                    }
                    CHECK(rho(monic(F, tw)) == r);
                }
            }
    }
    for (std::uint32_t q : {2u, 3u, 4u}) {
        const Field& F = field_make(q);
        const Field& E = field_make(q * q);
        auto emb = subfield_embedding(F, E);
        std::size_t maxn = q == 4 ? 2 : 3;
        for (std::size_t n = 1; n <= maxn; ++n)
            for (const auto& P : all_monic(F, n, false)) {
                std::vector<std::uint32_t> up(n);
                for (std::size_t i = 0; i < n; ++i) up[i] = emb[P.low[i]];
                CHECK(rho(monic(E, up)) == rho(P));
            }
    }
}

TEST_CASE("alpha is the exact factor-degree product") {
    const Field& F2 = field_make(2);
    CHECK(alpha(monic(F2, {1, 1}), 2) == Rat(5, 2));    // irreducible quadratic
    CHECK(alpha(monic(F2, {1, 0, 0}), 2) == Rat(15, 4));  // x^3+1 = (x+1)(x^2+x+1)
    // multiplicities don't matter
    MonicPoly r = monic(F2, {1, 1});
    MonicPoly xp1 = monic(F2, {1});
    CHECK(alpha(mul(mul(xp1, xp1), r), 2) == alpha(mul(xp1, r), 2));
    // the base is explicit: same poly, different weights
    const Field& F9 = field_make(9);
    MonicPoly s = monic(F9, {1, 1});
    CHECK(alpha(s, 3) != alpha(s, 9));
}

TEST_CASE("zeta symmetry from support matches the scalar scan") {
    const Field& F3 = field_make(3);
    CHECK(zeta_symmetric(monic(F3, {1, 0})) == std::set<std::uint32_t>{2});  // x^2+1
    CHECK(zeta_symmetric(monic(F3, {1, 1})).empty());
    const Field& F5 = field_make(5);
    CHECK(zeta_symmetric(monic(F5, {1, 0, 0, 0})) == std::set<std::uint32_t>{2, 4});  // x^4+1

    for (std::uint32_t q : {3u, 4u, 5u}) {
        const Field& F = field_make(q);
        for (std::size_t n = 1; n <= 4; ++n)
            for (const auto& P : all_monic(F, n, true))
                CHECK(zeta_symmetric(P) == zeta_symmetric_scan(P));
    }
    const Field& F9 = field_make(9);
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& P : all_monic(F9, n, true))
            CHECK(zeta_symmetric(P) == zeta_symmetric_scan(P));
}

TEST_CASE("m-regularity combines rho and scalar symmetry") {
    const Field& F3 = field_make(3);
    CHECK_FALSE(is_m_regular(monic(F3, {1, 0}), 100));
    CHECK_FALSE(is_m_regular(monic(F3, {1, 1}), 0));
    CHECK(is_m_regular(monic(F3, {1, 1}), 1));
    CHECK(is_m_regular(monic(F3, {2, 1}), 0));  // x^2+x+2 squarefree
}

TEST_CASE("roots of a self-star irreducible form one orbit under x -> x^-q") {
    // over F_4 (base q = 2), roots of a degree-3 irreducible live in F_64
    const Field& F4 = field_make(4);
    const Field& F64 = field_make(64);
    auto q2 = PrimePower::of(2);
    auto emb = subfield_embedding(F4, F64);
    std::size_t found = 0;
    for (const auto& P : all_monic(F4, 3, true)) {
        if (!is_self_star(P, q2) || !is_irreducible_poly(P)) continue;
        ++found;
        std::vector<std::uint32_t> up(P.low.size());
        for (std::size_t i = 0; i < up.size(); ++i) up[i] = emb[P.low[i]];
        MonicPoly big = monic(F64, up);
        std::set<std::uint32_t> roots;
        for (std::uint32_t i = 0; i < 64; ++i)
            if (eval_poly(big, F64.element(i)).is_zero()) roots.insert(i);
        REQUIRE(roots.size() == 3);
        std::set<std::uint32_t> orbit;
        FieldElem r = F64.element(*roots.begin());
        while (orbit.insert(r.idx).second) r = F64.pow(r, -2);
        CHECK(orbit == roots);
    }
    CHECK(found > 0);
}

TEST_CASE("polynomial utilities") {
    const Field& F3 = field_make(3);
    CHECK(poly_to_string(monic(F3, {2, 2})) == "x^2 + 2*x + 2");
    CHECK(poly_to_string(monic_one(F3)) == "1");
    CHECK(poly_to_string(monic(F3, {0, 0})) == "x^2");
    const Field& F4 = field_make(4);
    CHECK(poly_to_string(monic(F4, {1, 2})) == "x^2 + e2*x + 1");
    CHECK_THROWS_AS(monic(F3, {3}), invalid_parameter_error);
    CHECK(eval_poly(monic(F3, {1, 1}), F3.from_int(1)) == F3.from_int(0));
    CHECK(monic_linear(F3, F3.from_int(1)) == monic(F3, {2}));
    CHECK(poly_less(monic(F3, {2}), monic(F3, {0, 1})));
    CHECK_THROWS_AS(factor(monic_one(F3)), invalid_parameter_error);
}
