#include "charsparse/cyclo.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "charsparse/errors.hpp"
#include "doctest.h"

using namespace charsparse;

namespace {

// independent float anchor: evaluate at zeta_N = exp(2*pi*i/N)
std::complex<double> numeric_value(const CycInt& a) {
    std::complex<double> s{0.0, 0.0};
    for (const auto& [e, c] : a.coords()) {
        double ang = 2.0 * M_PI * static_cast<double>(e) / a.conductor();
        s += c.get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

CycInt random_element(std::mt19937& rng, std::uint32_t N, int max_terms = 5,
                      int coeff_bound = 9) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<long long> expo(0, N - 1);
    std::vector<std::pair<Int, long long>> terms;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) terms.emplace_back(Int(coeff(rng)), expo(rng));
    return CycInt::make(N, terms);
}

// quadratic Gauss sum sum_x zeta_p^{x^2} over x mod p
CycInt gauss_sum(std::uint32_t p) {
    std::vector<std::pair<Int, long long>> terms;
    for (std::uint32_t x = 0; x < p; ++x)
        terms.emplace_back(Int(1), static_cast<long long>(x) * x % p);
    return CycInt::make(p, terms);
}

}  // namespace

TEST_CASE("roots of unity reduce to canonical coordinates") {
    CHECK(CycInt::root(4, 1) * CycInt::root(4, 1) == CycInt(-1));
    CHECK(CycInt(1) + CycInt::root(3, 1) + CycInt::root(3, 2) == CycInt(0));
    CHECK(CycInt::root(6, 1) == -CycInt::root(3, 2));
    CHECK(CycInt::root(6, 1) == CycInt(1) + CycInt::root(6, 2));
    CHECK(CycInt::root(12, 4) + CycInt(1) == CycInt::root(12, 2));
    CHECK(CycInt::root(2, 1) * CycInt::root(3, 1) == CycInt::root(6, 5));

    // the full sum of N-th roots vanishes; the primitive ones sum to mu(N)
    for (std::uint32_t N : {2u, 6u, 9u, 12u, 30u, 36u}) {
        CycInt all(0), prim(0);
        for (std::uint32_t e = 0; e < N; ++e) {
            all += CycInt::root(N, e);
            if (std::gcd(e, N) == 1) prim += CycInt::root(N, e);
        }
        CHECK(all == CycInt(0));
        CHECK(prim == CycInt(moebius(N)));
    }

    // canonical coordinates agree with a numeric evaluation
    std::mt19937 rng(20260815);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::uint32_t> pick_n(1, 60);
        std::uint32_t N = pick_n(rng);
        CycInt a = random_element(rng, N);
        CycInt b = random_element(rng, N);
        std::complex<double> pa = numeric_value(a), pb = numeric_value(b);
        CHECK(std::abs(numeric_value(a + b) - (pa + pb)) < 1e-7);
        CHECK(std::abs(numeric_value(a * b) - pa * pb) < 1e-6);
        CHECK(std::abs(numeric_value(a.conj()) - std::conj(pa)) < 1e-7);
    }
}

TEST_CASE("rational integers embed at conductor one") {
    CHECK(CycInt(5) * CycInt(-3) == CycInt(-15));
    CHECK((CycInt(5) * CycInt(-3)).as_integer() == -15);
    CHECK(CycInt(0).is_zero());
    CHECK(CycInt(0).is_integer());
    CHECK(CycInt(7).is_integer());
    CHECK_FALSE(CycInt::root(5, 1).is_integer());
    CHECK_THROWS_AS(CycInt::root(5, 1).as_integer(), domain_error);

    CycInt s(0);
    for (int e = 1; e <= 4; ++e) s += CycInt::root(5, e);
    CHECK(s.is_integer());
    CHECK(s.as_integer() == -1);
}

TEST_CASE("conjugation and the Galois action") {
    CHECK(CycInt::root(5, 1).conj() == CycInt::root(5, 4));
    CHECK(CycInt::root(8, 1).galois(3) == CycInt::root(8, 3));

    std::mt19937 rng(411);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::uint32_t> pick_n(1, 40);
        std::uint32_t N = pick_n(rng);
        CycInt a = random_element(rng, N);
        CycInt b = random_element(rng, N);
        CHECK(a.galois(1) == a);
        CHECK(a.conj() == a.galois(-1));
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());

        // group law over units mod N
        std::vector<long long> units;
        for (long long v = 1; v <= N; ++v)
            if (std::gcd<long long>(v, N) == 1) units.push_back(v);
        std::uniform_int_distribution<std::size_t> pick_u(0, units.size() - 1);
        for (int rep = 0; rep < 4; ++rep) {
            long long u = units[pick_u(rng)], v = units[pick_u(rng)];
            CHECK(a.galois(u).galois(v) == a.galois(u * v % N));
        }
    }

    CHECK_THROWS_AS(CycInt::root(8, 1).galois(2), invalid_parameter_error);
    CHECK_THROWS_AS(CycInt::root(6, 1).galois(3), invalid_parameter_error);
}

TEST_CASE("normalized trace: exact values and Galois-average agreement") {
    CHECK(CycInt(1).normalized_trace() == Rat(1));
    CHECK(CycInt::root(5, 1).normalized_trace() == Rat(-1, 4));

    // |1 + zeta_5|^2 = 2 + zeta_5 + zeta_5^4 has trace 2 - 1/4 - 1/4 = 3/2
    CycInt a = CycInt(1) + CycInt::root(5, 1);
    CHECK((a * a.conj()).normalized_trace() == Rat(3, 2));

    // mu/phi table at conductor 12: e -> m = 12/gcd(12,e)
    std::vector<Rat> expected = {Rat(1),      Rat(0), Rat(1, 2), Rat(0),
                                 Rat(-1, 2),  Rat(0), Rat(-1),   Rat(0),
                                 Rat(-1, 2),  Rat(0), Rat(1, 2), Rat(0)};
    for (std::uint32_t e = 0; e < 12; ++e)
        CHECK(CycInt::root(12, e).normalized_trace() == expected[e]);

    std::mt19937 rng(2718);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::uint32_t> pick_n(1, 30);
        std::uint32_t N = pick_n(rng);
        CycInt x = random_element(rng, N);
        CycInt y = random_element(rng, N);

        // definition as the average over the Galois group
        CycInt orbit_sum(0);
        std::uint32_t units = 0;
        for (std::uint32_t u = 1; u <= N; ++u) {
            if (std::gcd(u, N) != 1) continue;
            orbit_sum += x.galois(u);
            ++units;
        }
        CHECK(units == euler_phi(N));
        CHECK(orbit_sum.is_integer());
        CHECK(Rat(orbit_sum.as_integer()) == Rat(units) * x.normalized_trace());

        // Q-linearity and Galois invariance
        CHECK((x + y).normalized_trace() == x.normalized_trace() + y.normalized_trace());
        for (std::uint32_t u = 1; u <= N; ++u) {
            if (std::gcd(u, N) != 1) continue;
            CHECK(x.galois(u).normalized_trace() == x.normalized_trace());
        }
    }
}

TEST_CASE("quadratic Gauss sums square to plus or minus the prime") {
    CHECK(gauss_sum(5) * gauss_sum(5) == CycInt(5));
    CHECK(gauss_sum(13) * gauss_sum(13) == CycInt(13));
    CHECK(gauss_sum(7) * gauss_sum(7) == CycInt(-7));
    CHECK(gauss_sum(11) * gauss_sum(11) == CycInt(-11));
    // |tau|^2 = p either way
    for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        CycInt t = gauss_sum(p);
        CHECK((t * t.conj()).as_integer() == p);
    }
}

TEST_CASE("divisibility by rational integers is coordinatewise") {
    CHECK(CycInt(17).divisible_by_int(1));
    CHECK((CycInt(2) + CycInt::root(4, 1) * 2).divisible_by_int(2));
    CHECK_FALSE((CycInt(1) + CycInt::root(3, 1)).divisible_by_int(2));

    // (1 - zeta_3)^2 = -3 zeta_3
    CycInt d = CycInt(1) - CycInt::root(3, 1);
    CHECK(d * d == -(CycInt::root(3, 1) * 3));
    CHECK((d * d).divisible_by_int(3));
    CHECK((d * d).div_exact_int(3) == -CycInt::root(3, 1));

    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::uint32_t> pick_n(1, 60);
        std::uniform_int_distribution<int> pick_d(1, 6);
        std::uint32_t N = pick_n(rng);
        Int d2(pick_d(rng));
        CycInt beta = random_element(rng, N);
        CycInt alpha = beta * CycInt(d2);
        REQUIRE(alpha.divisible_by_int(d2));
        CHECK(alpha.div_exact_int(d2) == beta);
        CHECK(alpha.div_exact_int(d2) * CycInt(d2) == alpha);
    }

    CHECK_THROWS_AS((CycInt(1) + CycInt::root(3, 1)).div_exact_int(2), domain_error);
    CHECK_THROWS_AS(CycInt(4).divisible_by_int(0), precondition_error);
    CHECK_THROWS_AS(CycInt(4).divisible_by_int(-2), precondition_error);
}

TEST_CASE("averaged-norm floor: value and pass flag") {
    GallagherResult zero = CycInt(0).gallagher_check();
    CHECK(zero.value == Rat(0));
    CHECK(zero.passes);

    GallagherResult g = (CycInt(1) + CycInt::root(5, 1)).gallagher_check();
    CHECK(g.value == Rat(3, 2));
    CHECK(g.passes);

    GallagherResult two = CycInt(2).gallagher_check_divisor(2);
    CHECK(two.value == Rat(4));
    CHECK(two.passes);

    GallagherResult four = (CycInt(2) + CycInt::root(4, 1) * 2).gallagher_check_divisor(2);
    CHECK(four.value == Rat(8));
    CHECK(four.passes);

    // Gauss sums meet the floor exactly at d = 1
    for (std::uint32_t p : {5u, 7u, 11u}) {
        GallagherResult r = gauss_sum(p).gallagher_check();
        CHECK(r.value == Rat(static_cast<long>(p)));
        CHECK(r.passes);
    }

    CHECK_THROWS_AS((CycInt(1) + CycInt::root(3, 1)).gallagher_check_divisor(2),
                    precondition_error);
    CHECK_THROWS_AS(CycInt(3).gallagher_check_divisor(0), precondition_error);
    CHECK(CycInt(0).gallagher_check_divisor(7).passes);

    // every nonzero algebraic integer has averaged squared modulus >= 1
    std::mt19937 rng(31337);
    int tested = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<std::uint32_t> pick_n(1, 60);
        CycInt x = random_element(rng, pick_n(rng));
        if (x.is_zero()) continue;
        GallagherResult r = x.gallagher_check();
        CHECK(r.value >= 1);
        CHECK(r.passes);
        ++tested;
    }
    CHECK(tested > 250);
}

TEST_CASE("mixed conductors merge through the lcm") {
    CycInt a = CycInt::root(4, 1) + CycInt::root(6, 1);
    CHECK(a.conductor() == 12);
    CHECK(std::abs(numeric_value(a) -
                   (std::complex<double>(0, 1) +
                    std::complex<double>(0.5, std::sqrt(3.0) / 2))) < 1e-12);

    CHECK(CycInt::root(10, 3) == CycInt::root(30, 9));
    CHECK(CycInt::root(5, 1) * CycInt::root(7, 1) == CycInt::root(35, 12));

    std::mt19937 rng(7);
    CycInt x = random_element(rng, 18);
    CHECK(x.lifted(18) == x);
    CHECK(x.lifted(36) == x);
    CHECK(x.lifted(90).conductor() == 90);
    CHECK(x.lifted(90).normalized_trace() == x.normalized_trace());
    CHECK_THROWS_AS(x.lifted(27), invalid_parameter_error);
    CHECK_THROWS_AS(x.lifted(0), invalid_parameter_error);
}

TEST_CASE("serialization round-trips and validates") {
    std::mt19937 rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<std::uint32_t> pick_n(1, 60);
        CycInt x = random_element(rng, pick_n(rng));
        nlohmann::json j = cyc_to_json(x);
        CHECK(cyc_from_json(j) == x);
        // canonical form is stable under a round trip
        CHECK(cyc_to_json(cyc_from_json(j)).dump() == j.dump());
    }

    // integer coefficients and redundant terms are accepted and canonicalized
    nlohmann::json j = {{"N", 4}, {"terms", {{2, 2}, {"-1", 6}, {"3", 1}}}};
    CHECK(cyc_from_json(j) == CycInt(-1) + CycInt::root(4, 1) * 3);

    CHECK_THROWS_AS(cyc_from_json(nlohmann::json{{"terms", nlohmann::json::array()}}),
                    validation_error);
    CHECK_THROWS_AS(cyc_from_json(nlohmann::json{{"N", 0}, {"terms", nlohmann::json::array()}}),
                    validation_error);
    CHECK_THROWS_AS(cyc_from_json(nlohmann::json{{"N", 4}, {"terms", 3}}), validation_error);
    CHECK_THROWS_AS(cyc_from_json(nlohmann::json{{"N", 4}, {"terms", {{1, 2, 3}}}}),
                    validation_error);
    CHECK_THROWS_AS(cyc_from_json(nlohmann::json{{"N", 4}, {"terms", {{"xyz", 1}}}}),
                    validation_error);
    CHECK_THROWS_AS(cyc_from_json(nlohmann::json{{"N", 4}, {"terms", {{1.5, 1}}}}),
                    validation_error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(CycInt::make(0, {}), invalid_parameter_error);
    CHECK_THROWS_AS(euler_phi(0), invalid_parameter_error);
    CHECK_THROWS_AS(moebius(0), invalid_parameter_error);

    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(101) == 100);
    CHECK(euler_phi(5100) == 1280);
    CHECK(moebius(1) == 1);
    CHECK(moebius(2) == -1);
    CHECK(moebius(4) == 0);
    CHECK(moebius(6) == 1);
    CHECK(moebius(30) == -1);
    CHECK(moebius(101) == -1);

    // conductor lcm beyond the 32-bit range is rejected
    CycInt big1 = CycInt::root(1u << 20, 1);
    CycInt big2 = CycInt::root(1594323, 1);  // 3^13, coprime to 2^20
    CHECK_THROWS_AS(big1 + big2, unsupported_error);
    CHECK_THROWS_AS(big1 * big2, unsupported_error);
}

TEST_CASE("ring axioms on random inputs") {
    std::mt19937 rng(90210);
    for (int trial = 0; trial < 120; ++trial) {
        std::uniform_int_distribution<std::uint32_t> pick_n(1, 60);
        std::uint32_t N = pick_n(rng);
        CycInt a = random_element(rng, N);
        CycInt b = random_element(rng, N);
        CycInt c = random_element(rng, N);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + CycInt(0) == a);
        CHECK(a * CycInt(1) == a);
        CHECK(a - a == CycInt(0));
        CHECK((-a) + a == CycInt(0));
    }
}

TEST_CASE("conductor descent inverts lifting") {
    std::mt19937 rng(424242);
    // lift then descend is the identity, across divisor pairs M | N
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs = {
        {1, 8}, {2, 4}, {3, 6}, {3, 12}, {4, 8}, {5, 30}, {6, 36}, {9, 27}, {12, 60}};
    for (auto [M, N] : pairs) {
        for (int trial = 0; trial < 20; ++trial) {
            CycInt a = random_element(rng, M);
            CycInt up = a.lifted(N);
            CHECK(up.descended(M) == a);
            CHECK(up.conductor() == N);
        }
    }

    // a value that genuinely needs the larger ring cannot descend
    CHECK_THROWS_AS(CycInt::root(8, 1).descended(4), domain_error);
    CHECK_THROWS_AS(CycInt::root(12, 1).descended(6), domain_error);
    // target must divide the conductor
    CHECK_THROWS_AS(CycInt::root(6, 1).descended(4), invalid_parameter_error);
    CHECK_THROWS_AS(CycInt::root(6, 1).descended(0), invalid_parameter_error);

    // rationals descend to conductor 1 from anywhere
    CHECK(CycInt(Int(-7)).lifted(36).descended(1) == CycInt(Int(-7)));
    // zeta_12^4 + zeta_12^8 = -1 lies in every subring
    CycInt sum = CycInt::root(12, 4) + CycInt::root(12, 8);
    CHECK(sum.descended(1) == CycInt(Int(-1)));
}
