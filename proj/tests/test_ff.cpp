#include <doctest.h>

#include <set>

#include "charsparse/errors.hpp"
#include "charsparse/ff.hpp"

using namespace charsparse;

namespace {

// check the full field axioms by enumeration
void check_field_axioms(const Field& F) {
    const std::uint32_t q = F.q();
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            CHECK(F.add_idx(a, b) == F.add_idx(b, a));
            CHECK(F.mul_idx(a, b) == F.mul_idx(b, a));
            CHECK(F.add_idx(a, F.neg_idx(a)) == 0);
            if (b != 0) {
                std::uint32_t binv = F.inv_idx(b);
                CHECK(F.mul_idx(b, binv) == F.one().idx);
            }
        }
    }
    // associativity and distributivity on a grid (full cube is q^3; keep q small)
    if (q <= 16) {
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                for (std::uint32_t c = 0; c < q; ++c) {
                    CHECK(F.mul_idx(a, F.mul_idx(b, c)) == F.mul_idx(F.mul_idx(a, b), c));
                    CHECK(F.mul_idx(a, F.add_idx(b, c)) == F.add_idx(F.mul_idx(a, b), F.mul_idx(a, c)));
                }
    }
}

}  // namespace

TEST_CASE("prime power parsing") {
    auto pp = PrimePower::of(9);
    CHECK(pp.p == 3);
    CHECK(pp.k == 2);
    CHECK_THROWS_AS(PrimePower::of(6), invalid_parameter_error);
    CHECK_THROWS_AS(PrimePower::of(1), invalid_parameter_error);
    CHECK_THROWS_AS(PrimePower::of(0), invalid_parameter_error);
    CHECK(PrimePower::of(65536).p == 2);
    CHECK_THROWS_AS(PrimePower::make(4, 2), invalid_parameter_error);
}

TEST_CASE("prime field arithmetic is residue arithmetic") {
    const Field& F7 = field_make(7);
    CHECK(F7.add_idx(3, 5) == 1);
    CHECK(F7.mul_idx(3, 5) == 1);
    CHECK(F7.inv_idx(3) == 5);
    CHECK(F7.from_int(-1).idx == 6);
    check_field_axioms(F7);
}

TEST_CASE("F4 has modulus x^2+x+1 and generator x") {
    const Field& F4 = field_make(4);
    CHECK(F4.modulus() == std::vector<std::uint32_t>{1, 1});
    FieldElem g = F4.generator();
    CHECK(g.idx == 2);  // the class of x
    CHECK((g * g).idx == F4.add_idx(g.idx, 1));  // g^2 = g + 1
    CHECK(F4.pow(g, 3) == F4.one());
    check_field_axioms(F4);
}

TEST_CASE("F9 basics") {
    const Field& F9 = field_make(9);
    CHECK(F9.modulus() == std::vector<std::uint32_t>{1, 0});  // x^2 + 1
    CHECK(F9.mult_order(F9.generator()) == 8);
    check_field_axioms(F9);
}

TEST_CASE("field axioms for every field up to 64") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u, 49u, 64u}) {
        const Field& F = field_make(q);
        CHECK(F.q() == q);
        check_field_axioms(F);
    }
}

TEST_CASE("frobenius is an involution fixing exactly the base field") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        const Field& E = field_make(q * q);
        std::set<std::uint32_t> fixed;
        for (std::uint32_t i = 0; i < q * q; ++i) {
            FieldElem a = E.element(i);
            FieldElem fa = E.frobenius(a, q);
            CHECK(E.frobenius(fa, q) == a);
            if (fa == a) fixed.insert(i);
        }
        CHECK(fixed.size() == q);
        // the fixed set is a subfield: closed under + and *
        for (auto a : fixed)
            for (auto b : fixed) {
                CHECK(fixed.count(E.add_idx(a, b)) == 1);
                CHECK(fixed.count(E.mul_idx(a, b)) == 1);
            }
    }
    CHECK_THROWS_AS(field_make(8).frobenius(field_make(8).one(), 3), invalid_parameter_error);
}

TEST_CASE("canonical enumeration starts at zero and one") {
    const Field& F = field_make(27);
    CHECK(F.zero().idx == 0);
    CHECK(F.one().idx == 1);
    CHECK(F.coords(F.element(5)) == std::vector<std::uint32_t>{2, 1, 0});
    CHECK_THROWS_AS(F.element(27), invalid_parameter_error);
    CHECK_THROWS_AS(F.inv_idx(0), domain_error);
}

TEST_CASE("pow handles negative exponents and zero") {
    const Field& F = field_make(25);
    FieldElem g = F.generator();
    CHECK(F.pow(g, -1) == F.inv(g));
    CHECK(F.pow(g, 24) == F.one());
    CHECK(F.pow(F.zero(), 0) == F.one());
    CHECK(F.pow(F.zero(), 5) == F.zero());
    CHECK_THROWS_AS(F.pow(F.zero(), -2), domain_error);
}
