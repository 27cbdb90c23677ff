#include "charsparse/chartab.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "charsparse/bruteforce.hpp"
#include "charsparse/errors.hpp"
#include "charsparse/grouparith.hpp"
#include "doctest.h"

using namespace charsparse;

namespace {

std::multiset<long> degree_multiset(const CharTable& t) {
    std::multiset<long> out;
    for (std::size_t i = 0; i < t.size(); ++i) out.insert(t.degree(i).get_si());
    return out;
}

std::size_t class_index(const CharTable& t, const std::string& name) {
    for (std::size_t g = 0; g < t.size(); ++g)
        if (t.classes()[g].name == name) return g;
    REQUIRE(false);
    return 0;
}

std::size_t char_index(const CharTable& t, const std::string& name) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t.character_names()[i] == name) return i;
    REQUIRE(false);
    return 0;
}

// Conjugacy class count of PSL2(q) = SL2(q)/{+-1} computed directly on
// cosets, independent of any table formula.
std::uint32_t psl2_class_count_brute(std::uint32_t q) {
    MatGroup G = MatGroup::build(MatCase::SL, 2, q);
    Mat neg = G.identity();
    std::uint16_t m1 = static_cast<std::uint16_t>(G.field().from_int(-1).idx);
    neg.at(0, 0) = m1;
    neg.at(1, 1) = m1;
    auto canon = [&](const Mat& g) {
        Mat h = G.mul(neg, g);
        return G.index_of(g) <= G.index_of(h) ? g : h;
    };
    std::vector<char> seen(G.order(), 0);
    std::uint32_t classes = 0;
    for (const Mat& g : G.elements()) {
        Mat cg = canon(g);
        if (seen[G.index_of(cg)]) continue;
        seen[G.index_of(cg)] = 1;
        ++classes;
        std::vector<Mat> stack = {cg};
        while (!stack.empty()) {
            Mat x = stack.back();
            stack.pop_back();
            for (const Mat& c : G.elements()) {
                Mat y = canon(G.mul(G.mul(c, x), G.inverse(c)));
                std::size_t idx = G.index_of(y);
                if (!seen[idx]) {
                    seen[idx] = 1;
                    stack.push_back(y);
                }
            }
        }
    }
    return classes;
}

}  // namespace

TEST_CASE("SL2 tables have the classical shape") {
    for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
        CAPTURE(q);
        CharTable t = table_sl2(q);
        CHECK(t.size() == q + 4);
        CHECK(t.group() == "SL2(" + std::to_string(q) + ")");
        CHECK(t.order() == Int(q) * (Int(q) * Int(q) - 1));

        std::multiset<long> want = {1, long(q)};
        for (std::uint32_t i = 0; i < (q - 3) / 2; ++i) want.insert(long(q) + 1);
        for (std::uint32_t j = 0; j < (q - 1) / 2; ++j) want.insert(long(q) - 1);
        want.insert((long(q) + 1) / 2);
        want.insert((long(q) + 1) / 2);
        want.insert((long(q) - 1) / 2);
        want.insert((long(q) - 1) / 2);
        CHECK(degree_multiset(t) == want);

        // the exceptional entries encode a square root of q or -q
        CycInt x = t.value(char_index(t, "xi1"), class_index(t, "c")) * CycInt(2) - CycInt(1);
        long eps = (q % 4 == 1) ? 1 : -1;
        CHECK(x * x == CycInt(eps * long(q)));
    }

    for (std::uint32_t q : {4u, 8u, 16u, 32u}) {
        CAPTURE(q);
        CharTable t = table_sl2(q);
        CHECK(t.size() == q + 1);
        std::multiset<long> want = {1, long(q)};
        for (std::uint32_t i = 0; i < (q - 2) / 2; ++i) want.insert(long(q) + 1);
        for (std::uint32_t j = 0; j < q / 2; ++j) want.insert(long(q) - 1);
        CHECK(degree_multiset(t) == want);
    }

    CHECK(table_sl2(5).exponent() == 60);
    CHECK(table_sl2(4).exponent() == 30);

    CHECK_THROWS_AS(table_sl2(2), invalid_parameter_error);
    CHECK_THROWS_AS(table_sl2(3), invalid_parameter_error);
    CHECK_THROWS_AS(table_sl2(6), invalid_parameter_error);
    CHECK_THROWS_AS(table_sl2(263), invalid_parameter_error);
    CHECK_THROWS_AS(table_psl2(3), invalid_parameter_error);
    CHECK_THROWS_AS(table_gl2(19), invalid_parameter_error);
}

TEST_CASE("SL2 tables agree with brute-force conjugacy data") {
    for (std::uint32_t q : {5u, 7u, 9u}) {
        CAPTURE(q);
        CharTable t = table_sl2(q);
        MatGroup G = MatGroup::build(MatCase::SL, 2, q);
        auto classes = conjugacy_classes(G);
        REQUIRE(classes.size() == t.size());

        std::multiset<std::uint64_t> brute_sizes, table_sizes;
        std::multiset<std::uint64_t> brute_orders, table_orders;
        for (const auto& c : classes) {
            brute_sizes.insert(c.size);
            brute_orders.insert(G.element_order(c.rep));
        }
        for (const auto& c : t.classes()) {
            table_sizes.insert(c.size.get_ui());
            table_orders.insert(c.element_order);
        }
        CHECK(brute_sizes == table_sizes);
        CHECK(brute_orders == table_orders);
    }
}

TEST_CASE("PSL2 tables arise from central fusion") {
    for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
        CAPTURE(q);
        CharTable t = table_psl2(q);
        CHECK(t.size() == (q + 5) / 2);
        CHECK(t.order() == Int(q) * (Int(q) * Int(q) - 1) / 2);
        CHECK(t.group() == "PSL2(" + std::to_string(q) + ")");
    }

    // class counts verified against an independent coset computation
    for (std::uint32_t q : {5u, 7u, 9u, 11u}) {
        CAPTURE(q);
        CHECK(psl2_class_count_brute(q) == (q + 5) / 2);
    }

    CHECK(table_psl2(5).exponent() == 30);
    CHECK(table_psl2(7).exponent() == 84);

    // in characteristic two the projective and linear tables coincide
    CharTable a = table_sl2(4);
    CharTable b = table_psl2(4);
    CHECK(b.group() == "PSL2(4)");
    CHECK(a.order() == b.order());
    CHECK(degree_multiset(a) == degree_multiset(b));
}

TEST_CASE("sparsity matches independently known tables") {
    // PSL2(5) is the alternating group A5: 5 zeros in 25 entries
    SparsityReport r5 = sparsity(table_psl2(5));
    CHECK(r5.total_entries == 25);
    CHECK(r5.nonzero_entries == 20);
    CHECK(r5.sigma == Rat(4, 5));

    // PSL2(7): 8 zeros in 36 entries, fraction 7/9
    CharTable t7 = table_psl2(7);
    SparsityReport r7 = sparsity(t7);
    CHECK(r7.total_entries == 36);
    CHECK(r7.nonzero_entries == 28);
    CHECK(r7.sigma == Rat(7, 9));
    CHECK(r7.zeros_per_character == std::vector<std::uint64_t>{0, 2, 2, 2, 1, 1});
    CHECK(r7.zeros_per_class == std::vector<std::uint64_t>{0, 1, 1, 3, 2, 1});

    // PSL2(9) is the alternating group A6: 13 zeros in 49 entries
    CHECK(sparsity(table_psl2(9)).sigma == Rat(36, 49));

    // further exact values
    CHECK(sparsity(table_psl2(11)).sigma == Rat(3, 4));
    CHECK(sparsity(table_psl2(13)).sigma == Rat(58, 81));

    // PSL2(4) and PSL2(5) are isomorphic groups
    CHECK(sparsity(table_psl2(4)).sigma == Rat(4, 5));
}

TEST_CASE("audit suite passes on built-in tables") {
    std::vector<CharTable> tables;
    for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
        tables.push_back(table_sl2(q));
        tables.push_back(table_psl2(q));
    }
    for (std::uint32_t q : {4u, 8u}) tables.push_back(table_sl2(q));
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 9u}) tables.push_back(table_gl2(q));

    for (const CharTable& t : tables) {
        CAPTURE(t.group());
        CHECK(burnside_audit(t).empty());
        GallagherAuditReport g = gallagher_audit(t);
        CHECK(g.all_pass);
        CHECK(g.divisor_pass);
        CHECK(g.min_value >= Rat(1));
        CHECK(g.nonzero_entries == sparsity(t).nonzero_entries);
        CHECK(second_orthogonality_check(t));
    }

    // every table contains a root of unity, so the minimum is exactly 1
    CHECK(gallagher_audit(table_psl2(7)).min_value == Rat(1));

    // tightness at the divisor floor: the Steinberg degree at the identity
    CharTable t7 = table_psl2(7);
    std::size_t st = char_index(t7, "St");
    const CycInt& v = t7.value(st, 0);
    Int d = burnside_d(t7.degree(st), t7.classes()[0].size);
    CHECK(d == 7);
    GallagherResult tight = v.gallagher_check_divisor(d);
    CHECK(tight.passes);
    CHECK(tight.value == Rat(49));
}

TEST_CASE("GL2 tables carry annotations and satisfy the degree lemma") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 9u, 11u}) {
        CAPTURE(q);
        CharTable t = table_gl2(q);
        CHECK(t.size() == q * q - 1);
        CHECK(t.order() == Int(q * q - 1) * Int(q * q - q));
        CHECK(t.annotations().size() == t.size());

        std::multiset<long> want;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            want.insert(1);
            want.insert(long(q));
        }
        for (std::uint32_t i = 0; i < (q - 1) * (q - 2) / 2; ++i) want.insert(long(q) + 1);
        for (std::uint32_t i = 0; i < (q * q - q) / 2; ++i) want.insert(long(q) - 1);
        CHECK(degree_multiset(t) == want);

        // degrees follow from the annotated centralizer orders: the prime-to-q
        // index of the centralizer times the unipotent part's degree
        Int gp = prime_to_q_part(t.order(), PrimePower::of(q));
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string& name = t.character_names()[i];
            Int hp = prime_to_q_part(t.annotations().at(name), PrimePower::of(q));
            Int unip = (name.rfind("st", 0) == 0) ? Int(q) : Int(1);
            CHECK(t.degree(i) == jordan_degree(gp, hp, unip));
        }
    }

    CHECK(table_gl2(3).exponent() == 24);

    // the valuation audit on GL2(4) at ell = 5: the principal series entries
    // are checked and match; nothing is flagged
    OrdDegreeReport r = ord_degree_audit(table_gl2(4), 5);
    CHECK(r.violations.empty());
    bool saw_checked_pi = false;
    for (const auto& e : r.entries) {
        if (e.character.rfind("pi", 0) == 0) {
            CHECK(e.checked);
            CHECK(e.ord_degree == 1);
            CHECK(e.ord_group == 1);
            saw_checked_pi = true;
        }
    }
    CHECK(saw_checked_pi);

    CHECK(ord_degree_audit(table_gl2(5), 3).violations.empty());
    CHECK(ord_degree_audit(table_gl2(7), 2).violations.empty());
    CHECK_THROWS_AS(ord_degree_audit(table_gl2(3), 3), precondition_error);
    CHECK_THROWS_AS(ord_degree_audit(table_gl2(3), 4), invalid_parameter_error);
}

TEST_CASE("character tables round-trip through JSON") {
    for (const CharTable& t : {table_sl2(5), table_psl2(7), table_gl2(3)}) {
        CAPTURE(t.group());
        nlohmann::json j = save_table(t);
        CharTable back = load_table(j);
        CHECK(back == t);
        CHECK(save_table(back).dump() == j.dump());
        // a reparse of the serialized text also matches
        CharTable again = load_table(nlohmann::json::parse(j.dump()));
        CHECK(again == t);
    }
}

TEST_CASE("hand-written tables load when consistent") {
    auto one = cyc_to_json(CycInt(1));
    auto neg = cyc_to_json(CycInt(-1));
    nlohmann::json j = {
        {"group", "C2"},
        {"order", "2"},
        {"exponent", 2},
        {"classes",
         {{{"name", "1"}, {"size", "1"}, {"element_order", 1}},
          {{"name", "g"}, {"size", "1"}, {"element_order", 2}}}},
        {"characters",
         {{{"name", "triv"}, {"values", {one, one}}},
          {{"name", "sgn"}, {"values", {one, neg}}}}}};
    CharTable t = load_table(j);
    CHECK(t.size() == 2);
    CHECK(t.order() == 2);
    SparsityReport r = sparsity(t);
    CHECK(r.nonzero_entries == 4);
    CHECK(r.sigma == Rat(1));
    CHECK(burnside_audit(t).empty());
    CHECK(second_orthogonality_check(t));

    // first violated invariant is named in the error message
    auto expect_failure = [](nlohmann::json bad, const char* needle) {
        try {
            load_table(bad);
            FAIL_CHECK("expected a validation error mentioning " << needle);
        } catch (const validation_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    nlohmann::json bad = j;
    bad["classes"][1]["size"] = "2";
    expect_failure(bad, "class sizes");

    bad = j;
    bad["classes"][1]["element_order"] = 3;
    expect_failure(bad, "element orders");

    bad = j;
    bad["characters"][1]["values"][1] = one;  // duplicate of the trivial row
    expect_failure(bad, "row orthogonality");

    bad = j;
    bad["characters"][1]["values"][0] = cyc_to_json(CycInt(3));
    expect_failure(bad, "degree sum");

    bad = j;
    bad["characters"][0]["values"][1] = neg;  // row 0 must be constant one
    expect_failure(bad, "trivial character");

    bad = j;
    bad["exponent"] = 4;
    expect_failure(bad, "exponent");

    bad = j;
    bad["classes"].erase(1);
    expect_failure(bad, "shape");

    bad = j;
    bad["annotations"] = {{"ghost", {{"centralizer_order", "2"}}}};
    expect_failure(bad, "annotations");

    bad = j;
    bad["flavor"] = "salted";
    expect_failure(bad, "unknown key");

    bad = j;
    bad["order"] = "two";
    expect_failure(bad, "decimal integer");
}

TEST_CASE("corrupted tables are flagged by the audits") {
    CharTable t7 = table_psl2(7);
    std::vector<ClassInfo> classes = t7.classes();
    std::vector<std::string> names = t7.character_names();
    std::vector<std::vector<CycInt>> values;
    for (std::size_t i = 0; i < t7.size(); ++i) {
        std::vector<CycInt> row;
        for (std::size_t g = 0; g < t7.size(); ++g) row.push_back(t7.value(i, g));
        values.push_back(std::move(row));
    }
    std::size_t st = char_index(t7, "St");
    std::size_t c = class_index(t7, "c");
    values[st][c] = CycInt(3);  // the true value is 0; 3 breaks divisibility by 7

    // full validation refuses the corrupted data outright
    CHECK_THROWS_AS(CharTable::make(t7.group(), t7.order(), t7.exponent(), classes, names,
                                    values, {}, TableChecks::full),
                    validation_error);

    CharTable bad = CharTable::make(t7.group(), t7.order(), t7.exponent(), classes, names,
                                    values, {}, TableChecks::structural);
    auto violations = burnside_audit(bad);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].character == st);
    CHECK(violations[0].cls == c);
    CHECK(violations[0].divisor == 7);
    CHECK_FALSE(second_orthogonality_check(bad));
}

TEST_CASE("irreducible counts stay within the linear band") {
    for (std::uint32_t q : {4u,  5u,  7u,  8u,  9u,  11u, 13u, 16u, 17u, 19u,
                            23u, 25u, 27u, 29u, 31u, 32u, 37u, 41u, 43u, 47u, 49u}) {
        CAPTURE(q);
        CharTable t = table_sl2(q);
        std::uint64_t k = t.size();
        CHECK(k >= q);
        CHECK(5 * k <= 136 * q);  // k <= 27.2 q with exact arithmetic
    }
}

TEST_CASE("large tables validate within the supported range") {
    CharTable t = table_sl2(101);
    CHECK(t.size() == 105);
    CharTable p = table_psl2(101);
    CHECK(p.size() == 53);
    CHECK(second_orthogonality_check(p));
    SparsityReport r = sparsity(p);
    CHECK(r.sigma == Rat(1532, 2809));
    CHECK(burnside_audit(p).empty());
    GallagherAuditReport g = gallagher_audit(p);
    CHECK(g.all_pass);
    CHECK(g.divisor_pass);
}
