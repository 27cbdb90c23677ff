#include "charsparse/chartab.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "charsparse/errors.hpp"
#include "charsparse/ff.hpp"
#include "charsparse/grouparith.hpp"

namespace charsparse {

namespace {

std::uint32_t lcm_orders(const std::vector<ClassInfo>& classes) {
    std::uint64_t e = 1;
    for (const auto& c : classes) {
        e = std::lcm(e, c.element_order);
        if (e > 0x7fffffffULL)
            throw unsupported_error("character table: group exponent exceeds the conductor range");
    }
    return static_cast<std::uint32_t>(e);
}

}  // namespace

const CycInt& CharTable::value(std::size_t character, std::size_t cls) const {
    if (character >= values_.size() || cls >= classes_.size())
        throw invalid_parameter_error("character table: index out of range");
    return values_[character][cls];
}

Int CharTable::degree(std::size_t character) const {
    return value(character, 0).as_integer();
}

bool operator==(const CharTable& a, const CharTable& b) {
    return a.group_ == b.group_ && a.order_ == b.order_ && a.exponent_ == b.exponent_ &&
           a.classes_ == b.classes_ && a.names_ == b.names_ && a.values_ == b.values_ &&
           a.annotations_ == b.annotations_;
}

CharTable CharTable::make(std::string group_label,
                          Int order,
                          std::uint32_t exponent,
                          std::vector<ClassInfo> classes,
                          std::vector<std::string> character_names,
                          std::vector<std::vector<CycInt>> values,
                          std::map<std::string, Int> annotations,
                          TableChecks checks) {
    const std::size_t k = classes.size();
    if (k == 0) throw validation_error("character table invariant 'shape': no classes");
    if (character_names.size() != k || values.size() != k)
        throw validation_error(
            "character table invariant 'shape': the table must be square with one row per class");
    for (const auto& row : values)
        if (row.size() != k)
            throw validation_error("character table invariant 'shape': row length differs from "
                                   "the number of classes");
    {
        std::set<std::string> seen;
        for (const auto& c : classes)
            if (!seen.insert(c.name).second)
                throw validation_error("character table invariant 'class names': duplicate name " +
                                       c.name);
        seen.clear();
        for (const auto& n : character_names)
            if (!seen.insert(n).second)
                throw validation_error(
                    "character table invariant 'character names': duplicate name " + n);
    }
    if (order < 1)
        throw validation_error("character table invariant 'order': group order must be positive");
    if (classes[0].size != 1 || classes[0].element_order != 1)
        throw validation_error("character table invariant 'identity class': class 0 must have "
                               "size 1 and element order 1");
    {
        Int total = 0;
        for (const auto& c : classes) {
            if (c.size < 1)
                throw validation_error(
                    "character table invariant 'class sizes': size of class " + c.name +
                    " is not positive");
            if (!mpz_divisible_p(order.get_mpz_t(), c.size.get_mpz_t()))
                throw validation_error(
                    "character table invariant 'class sizes': size of class " + c.name +
                    " does not divide the group order");
            total += c.size;
        }
        if (total != order)
            throw validation_error("character table invariant 'class sizes': sizes sum to " +
                                   total.get_str() + ", expected the group order " +
                                   order.get_str());
    }
    for (const auto& c : classes) {
        if (c.element_order < 1 || exponent % c.element_order != 0)
            throw validation_error(
                "character table invariant 'element orders': order of class " + c.name +
                " does not divide the exponent");
    }
    if (lcm_orders(classes) != exponent)
        throw validation_error("character table invariant 'exponent': the exponent must be the "
                               "lcm of the element orders");
    for (auto& row : values)
        for (auto& v : row) {
            if (exponent % v.conductor() != 0)
                throw validation_error("character table invariant 'conductors': a value lives at "
                                       "a conductor not dividing the exponent");
            v = v.lifted(exponent);
        }
    for (std::size_t i = 0; i < k; ++i) {
        const CycInt& d = values[i][0];
        if (!d.is_integer() || d.as_integer() < 1)
            throw validation_error("character table invariant 'degrees': the identity column "
                                   "entry of " + character_names[i] +
                                   " is not a positive integer");
    }
    for (std::size_t g = 0; g < k; ++g)
        if (values[0][g] != CycInt(1))
            throw validation_error(
                "character table invariant 'trivial character': row 0 must be constant 1");
    {
        Int sum = 0;
        for (std::size_t i = 0; i < k; ++i) {
            Int d = values[i][0].as_integer();
            sum += d * d;
        }
        if (sum != order)
            throw validation_error("character table invariant 'degree sum': the squared degrees "
                                   "sum to " + sum.get_str() + ", expected " + order.get_str());
    }
    for (const auto& [name, cent] : annotations) {
        if (std::find(character_names.begin(), character_names.end(), name) ==
            character_names.end())
            throw validation_error(
                "character table invariant 'annotations': unknown character " + name);
        if (cent < 1)
            throw validation_error(
                "character table invariant 'annotations': centralizer order of " + name +
                " is not positive");
    }
    if (checks == TableChecks::full) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                CycInt sum;
                for (std::size_t g = 0; g < k; ++g)
                    sum += CycInt(classes[g].size) * values[i][g] * values[j][g].conj();
                const CycInt want = (i == j) ? CycInt(order) : CycInt(0);
                if (sum != want)
                    throw validation_error(
                        "character table invariant 'row orthogonality': characters " +
                        character_names[i] + " and " + character_names[j] +
                        " are not orthogonal");
            }
        }
    }
    CharTable t;
    t.group_ = std::move(group_label);
    t.order_ = std::move(order);
    t.exponent_ = exponent;
    t.classes_ = std::move(classes);
    t.names_ = std::move(character_names);
    t.values_ = std::move(values);
    t.annotations_ = std::move(annotations);
    return t;
}

namespace {

// Quadratic Gauss sum over F_q as an element of Z[zeta_p]: the sum of
// zeta_p^{t^2} over the prime field, raised to the field degree with the
// standard Hasse-Davenport sign.  Its square is q for q = 1 mod 4 and -q
// for q = 3 mod 4, which is verified before use.
CycInt gauss_sum(const PrimePower& pp) {
    std::vector<std::pair<Int, long long>> terms;
    for (std::uint32_t t = 0; t < pp.p; ++t)
        terms.emplace_back(Int(1), static_cast<long long>((t * t) % pp.p));
    CycInt tau_p = CycInt::make(pp.p, terms);
    CycInt tau(1);
    for (std::uint32_t i = 0; i < pp.k; ++i) tau *= tau_p;
    if (pp.k % 2 == 0) tau = -tau;
    long eps_q = (pp.q % 4 == 1) ? 1 : -1;
    if (tau * tau != CycInt(Int(eps_q) * Int(pp.q)))
        throw validation_error("table_sl2: Gauss sum square check failed");
    return tau;
}

CharTable sl2_odd(const PrimePower& pp) {
    const std::uint32_t q = pp.q, p = pp.p;
    const Int order = Int(q) * (Int(q) * Int(q) - 1);
    const std::uint32_t nsplit = (q - 3) / 2;   // regular split classes a^l
    const std::uint32_t nnons = (q - 1) / 2;    // regular nonsplit classes b^m
    const long eps = (q % 4 == 1) ? 1 : -1;
    const CycInt tau = gauss_sum(pp);

    std::vector<ClassInfo> classes;
    classes.push_back({"1", 1, 1});
    classes.push_back({"z", 1, 2});
    const Int half = (Int(q) * Int(q) - 1) / 2;
    classes.push_back({"c", half, p});
    classes.push_back({"d", half, p});
    classes.push_back({"zc", half, 2ull * p});
    classes.push_back({"zd", half, 2ull * p});
    for (std::uint32_t l = 1; l <= nsplit; ++l)
        classes.push_back({"a" + std::to_string(l), Int(q) * (q + 1),
                           (q - 1) / std::gcd(l, q - 1)});
    for (std::uint32_t m = 1; m <= nnons; ++m)
        classes.push_back({"b" + std::to_string(m), Int(q) * (q - 1),
                           (q + 1) / std::gcd(m, q + 1)});
    const std::uint32_t N = lcm_orders(classes);

    std::vector<std::string> names;
    std::vector<std::vector<CycInt>> rows;
    auto row = [&](const std::string& name, CycInt at1, CycInt atz, CycInt atc, CycInt atd,
                   CycInt atzc, CycInt atzd, auto split, auto nonsplit) {
        names.push_back(name);
        std::vector<CycInt> r = {std::move(at1), std::move(atz), std::move(atc),
                                 std::move(atd), std::move(atzc), std::move(atzd)};
        for (std::uint32_t l = 1; l <= nsplit; ++l) r.push_back(split(l));
        for (std::uint32_t m = 1; m <= nnons; ++m) r.push_back(nonsplit(m));
        rows.push_back(std::move(r));
    };
    auto zero = [](std::uint32_t) { return CycInt(0); };

    row("triv", 1, 1, 1, 1, 1, 1, [](std::uint32_t) { return CycInt(1); },
        [](std::uint32_t) { return CycInt(1); });
    row("St", CycInt(long(q)), CycInt(long(q)), 0, 0, 0, 0, [](std::uint32_t) { return CycInt(1); },
        [](std::uint32_t) { return CycInt(-1); });
    for (std::uint32_t i = 1; i <= nsplit; ++i) {
        long s = (i % 2 == 0) ? 1 : -1;
        row("chi" + std::to_string(i), CycInt(long(q) + 1), CycInt(s * (long(q) + 1)), 1, 1,
            CycInt(s), CycInt(s),
            [&, i](std::uint32_t l) {
                long long e = static_cast<long long>(i) * l;
                return CycInt::root(q - 1, e) + CycInt::root(q - 1, -e);
            },
            zero);
    }
    for (std::uint32_t j = 1; j <= nnons; ++j) {
        long s = (j % 2 == 0) ? 1 : -1;
        row("theta" + std::to_string(j), CycInt(long(q) - 1), CycInt(s * (long(q) - 1)), -1, -1,
            CycInt(-s), CycInt(-s), zero, [&, j](std::uint32_t m) {
                long long e = static_cast<long long>(j) * m;
                return -(CycInt::root(q + 1, e) + CycInt::root(q + 1, -e));
            });
    }
    for (int idx = 1; idx <= 2; ++idx) {
        const CycInt st = (idx == 1) ? tau : -tau;
        const CycInt plus = (CycInt(1) + st).div_exact_int(2);
        const CycInt minus = (CycInt(1) - st).div_exact_int(2);
        row("xi" + std::to_string(idx), CycInt(long(q + 1) / 2), CycInt(eps * (long(q + 1) / 2)),
            plus, minus, CycInt(eps) * plus, CycInt(eps) * minus,
            [](std::uint32_t l) { return CycInt(l % 2 == 0 ? 1 : -1); }, zero);
    }
    for (int idx = 1; idx <= 2; ++idx) {
        const CycInt st = (idx == 1) ? tau : -tau;
        const CycInt plus = (CycInt(-1) + st).div_exact_int(2);
        const CycInt minus = (CycInt(-1) - st).div_exact_int(2);
        row("eta" + std::to_string(idx), CycInt(long(q - 1) / 2),
            CycInt(-eps * (long(q - 1) / 2)), plus, minus, CycInt(-eps) * plus,
            CycInt(-eps) * minus, zero,
            [](std::uint32_t m) { return CycInt(m % 2 == 0 ? -1 : 1); });
    }

    return CharTable::make("SL2(" + std::to_string(q) + ")", order, N, std::move(classes),
                           std::move(names), std::move(rows));
}

CharTable sl2_even(const PrimePower& pp, const std::string& label) {
    const std::uint32_t q = pp.q;
    const Int order = Int(q) * (Int(q) * Int(q) - 1);
    const std::uint32_t nsplit = (q - 2) / 2;
    const std::uint32_t nnons = q / 2;

    std::vector<ClassInfo> classes;
    classes.push_back({"1", 1, 1});
    classes.push_back({"c", Int(q) * Int(q) - 1, 2});
    for (std::uint32_t l = 1; l <= nsplit; ++l)
        classes.push_back({"a" + std::to_string(l), Int(q) * (q + 1),
                           (q - 1) / std::gcd(l, q - 1)});
    for (std::uint32_t m = 1; m <= nnons; ++m)
        classes.push_back({"b" + std::to_string(m), Int(q) * (q - 1),
                           (q + 1) / std::gcd(m, q + 1)});
    const std::uint32_t N = lcm_orders(classes);

    std::vector<std::string> names;
    std::vector<std::vector<CycInt>> rows;
    auto row = [&](const std::string& name, CycInt at1, CycInt atc, auto split, auto nonsplit) {
        names.push_back(name);
        std::vector<CycInt> r = {std::move(at1), std::move(atc)};
        for (std::uint32_t l = 1; l <= nsplit; ++l) r.push_back(split(l));
        for (std::uint32_t m = 1; m <= nnons; ++m) r.push_back(nonsplit(m));
        rows.push_back(std::move(r));
    };
    auto zero = [](std::uint32_t) { return CycInt(0); };

    row("triv", 1, 1, [](std::uint32_t) { return CycInt(1); },
        [](std::uint32_t) { return CycInt(1); });
    row("St", CycInt(long(q)), 0, [](std::uint32_t) { return CycInt(1); },
        [](std::uint32_t) { return CycInt(-1); });
    for (std::uint32_t i = 1; i <= nsplit; ++i)
        row("chi" + std::to_string(i), CycInt(long(q) + 1), 1,
            [&, i](std::uint32_t l) {
                long long e = static_cast<long long>(i) * l;
                return CycInt::root(q - 1, e) + CycInt::root(q - 1, -e);
            },
            zero);
    for (std::uint32_t j = 1; j <= nnons; ++j)
        row("theta" + std::to_string(j), CycInt(long(q) - 1), -1, zero, [&, j](std::uint32_t m) {
            long long e = static_cast<long long>(j) * m;
            return -(CycInt::root(q + 1, e) + CycInt::root(q + 1, -e));
        });

    return CharTable::make(label + "(" + std::to_string(q) + ")", order, N, std::move(classes),
                           std::move(names), std::move(rows));
}

}  // namespace

CharTable table_sl2(std::uint32_t q) {
    const PrimePower pp = PrimePower::of(q);
    if (q > 256)
        throw invalid_parameter_error("table_sl2: q exceeds the supported cap 256");
    if (pp.p == 2) {
        if (q < 4)
            throw invalid_parameter_error("table_sl2: even q must be at least 4");
        return sl2_even(pp, "SL2");
    }
    if (q < 5)
        throw invalid_parameter_error("table_sl2: odd q must be at least 5");
    return sl2_odd(pp);
}

CharTable table_psl2(std::uint32_t q) {
    const PrimePower pp = PrimePower::of(q);
    if (q > 256)
        throw invalid_parameter_error("table_psl2: q exceeds the supported cap 256");
    if (pp.p == 2) {
        if (q < 4)
            throw invalid_parameter_error("table_psl2: even q must be at least 4");
        return sl2_even(pp, "PSL2");
    }
    if (q < 5)
        throw invalid_parameter_error("table_psl2: odd q must be at least 5");
    const CharTable t = sl2_odd(pp);
    const std::size_t k = t.size();

    // the central involution: the unique class of size 1 and element order 2
    std::size_t zc = k;
    for (std::size_t g = 0; g < k; ++g)
        if (t.classes()[g].size == 1 && t.classes()[g].element_order == 2) {
            zc = g;
            break;
        }
    if (zc == k) throw validation_error("table_psl2: central involution class not found");

    // central sign of each character
    std::vector<int> omega(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (t.value(i, zc) == t.value(i, 0))
            omega[i] = 1;
        else if (t.value(i, zc) == -t.value(i, 0))
            omega[i] = -1;
        else
            throw validation_error("table_psl2: non-scalar value on the central class");
    }

    // partner[g] = the class of z * g, recognised by chi(zg) = omega_chi * chi(g)
    std::vector<std::size_t> partner(k, k);
    for (std::size_t g = 0; g < k; ++g) {
        for (std::size_t h = 0; h < k; ++h) {
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i) {
                CycInt want = (omega[i] == 1) ? t.value(i, g) : -t.value(i, g);
                ok = (t.value(i, h) == want);
            }
            if (ok) {
                if (partner[g] != k)
                    throw validation_error("table_psl2: ambiguous central pairing");
                partner[g] = h;
            }
        }
        if (partner[g] == k)
            throw validation_error("table_psl2: no partner class under the central involution");
    }

    std::vector<std::size_t> reps;
    for (std::size_t g = 0; g < k; ++g)
        if (partner[g] >= g) reps.push_back(g);

    std::vector<ClassInfo> classes;
    for (std::size_t g : reps) {
        const ClassInfo& c = t.classes()[g];
        ClassInfo nc;
        nc.name = c.name;
        if (partner[g] == g) {
            if (mpz_odd_p(c.size.get_mpz_t()))
                throw validation_error("table_psl2: self-paired class of odd size");
            nc.size = c.size / 2;
        } else {
            if (t.classes()[partner[g]].size != c.size)
                throw validation_error("table_psl2: paired classes of different sizes");
            nc.size = c.size;
        }
        // SL2 over an odd field has a unique involution, so an element of even
        // order powers onto the centre and its image order halves
        nc.element_order = (c.element_order % 2 == 0) ? c.element_order / 2 : c.element_order;
        classes.push_back(std::move(nc));
    }
    const std::uint32_t N = lcm_orders(classes);

    std::vector<std::string> names;
    std::vector<std::vector<CycInt>> rows;
    for (std::size_t i = 0; i < k; ++i) {
        if (omega[i] != 1) continue;
        names.push_back(t.character_names()[i]);
        std::vector<CycInt> r;
        r.reserve(reps.size());
        for (std::size_t g : reps) r.push_back(t.value(i, g).descended(N));
        rows.push_back(std::move(r));
    }

    return CharTable::make("PSL2(" + std::to_string(q) + ")", t.order() / 2, N,
                           std::move(classes), std::move(names), std::move(rows));
}

CharTable table_gl2(std::uint32_t q) {
    const PrimePower pp = PrimePower::of(q);
    if (q > 17)
        throw invalid_parameter_error("table_gl2: q exceeds the supported cap 17");
    const std::uint32_t p = pp.p;
    const std::uint32_t q1 = q - 1;           // order of the multiplicative group
    const std::uint32_t q21 = q * q - 1;      // order of the quadratic extension's group
    const Int order = Int(q21) * (Int(q) * Int(q) - q);

    // Classes, in terms of a generator h of the quadratic extension's
    // multiplicative group and g = h^{q+1} generating the base field's.
    // kind 0: central g^i; kind 1: non-semisimple with eigenvalue g^i;
    // kind 2: split semisimple diag(g^i, g^j), i < j; kind 3: nonsplit
    // semisimple with eigenvalue h^m, m taken modulo m -> m*q.
    struct Cls {
        int kind;
        std::uint32_t i = 0, j = 0;
    };
    std::vector<Cls> shape;
    std::vector<ClassInfo> classes;
    auto ord_base = [&](std::uint32_t i) -> std::uint64_t { return q1 / std::gcd(i, q1); };
    for (std::uint32_t i = 0; i < q1; ++i) {
        shape.push_back({0, i, 0});
        classes.push_back({"z" + std::to_string(i), 1, ord_base(i)});
    }
    for (std::uint32_t i = 0; i < q1; ++i) {
        shape.push_back({1, i, 0});
        classes.push_back({"u" + std::to_string(i), Int(q21), p * ord_base(i)});
    }
    for (std::uint32_t i = 0; i < q1; ++i)
        for (std::uint32_t j = i + 1; j < q1; ++j) {
            shape.push_back({2, i, j});
            classes.push_back({"s" + std::to_string(i) + "_" + std::to_string(j),
                               Int(q) * (q + 1), std::lcm(ord_base(i), ord_base(j))});
        }
    std::vector<std::uint32_t> nonsplit_reps;
    {
        std::set<std::uint32_t> seen;
        for (std::uint32_t m = 1; m < q21; ++m) {
            if (m % (q + 1) == 0) continue;  // h^m already lies in the base field
            std::uint32_t key = std::min(m, static_cast<std::uint32_t>(
                                                (static_cast<std::uint64_t>(m) * q) % q21));
            if (!seen.insert(key).second) continue;
            if (key != m) continue;
            nonsplit_reps.push_back(m);
            shape.push_back({3, m, 0});
            classes.push_back({"n" + std::to_string(m), Int(q) * (q - 1),
                               q21 / std::gcd(m, q21)});
        }
    }
    const std::uint32_t N = lcm_orders(classes);

    auto zq = [&](long long e) { return CycInt::root(q1, e); };
    auto zq2 = [&](long long e) { return CycInt::root(q21, e); };

    std::vector<std::string> names;
    std::vector<std::vector<CycInt>> rows;
    std::map<std::string, Int> annotations;

    // one-dimensional characters alpha^k(det) and their Steinberg twists
    for (std::uint32_t k = 0; k < q1; ++k) {
        std::vector<CycInt> lin, st;
        for (const Cls& c : shape) {
            CycInt det_val;
            switch (c.kind) {
                case 0:
                case 1: det_val = zq(2ll * k * c.i); break;
                case 2: det_val = zq(static_cast<long long>(k) * (c.i + c.j)); break;
                default: det_val = zq(static_cast<long long>(k) * c.i); break;
            }
            lin.push_back(det_val);
            switch (c.kind) {
                case 0: st.push_back(CycInt(long(q)) * det_val); break;
                case 1: st.push_back(CycInt(0)); break;
                case 2: st.push_back(det_val); break;
                default: st.push_back(-det_val); break;
            }
        }
        names.push_back("lin" + std::to_string(k));
        rows.push_back(std::move(lin));
        annotations[names.back()] = order;
        names.push_back("st" + std::to_string(k));
        rows.push_back(std::move(st));
        annotations[names.back()] = order;
    }
    // principal series attached to an unordered pair of distinct characters
    for (std::uint32_t k = 0; k < q1; ++k)
        for (std::uint32_t l = k + 1; l < q1; ++l) {
            std::vector<CycInt> r;
            for (const Cls& c : shape) {
                switch (c.kind) {
                    case 0:
                        r.push_back(CycInt(long(q) + 1) * zq(static_cast<long long>(k + l) * c.i));
                        break;
                    case 1: r.push_back(zq(static_cast<long long>(k + l) * c.i)); break;
                    case 2:
                        r.push_back(zq(static_cast<long long>(k) * c.i +
                                       static_cast<long long>(l) * c.j) +
                                    zq(static_cast<long long>(k) * c.j +
                                       static_cast<long long>(l) * c.i));
                        break;
                    default: r.push_back(CycInt(0)); break;
                }
            }
            names.push_back("pi" + std::to_string(k) + "_" + std::to_string(l));
            rows.push_back(std::move(r));
            annotations[names.back()] = Int(q1) * Int(q1);
        }
    // discrete series attached to a character of the nonsplit torus
    for (std::uint32_t m : nonsplit_reps) {
        std::vector<CycInt> r;
        for (const Cls& c : shape) {
            switch (c.kind) {
                case 0:
                    r.push_back(CycInt(long(q) - 1) *
                                zq2(static_cast<long long>(m) * c.i * (q + 1)));
                    break;
                case 1: r.push_back(-zq2(static_cast<long long>(m) * c.i * (q + 1))); break;
                case 2: r.push_back(CycInt(0)); break;
                default:
                    r.push_back(-(zq2(static_cast<long long>(m) * c.i) +
                                  zq2(static_cast<long long>(m) * c.i * q)));
                    break;
            }
        }
        names.push_back("ds" + std::to_string(m));
        rows.push_back(std::move(r));
        annotations[names.back()] = Int(q21);
    }

    return CharTable::make("GL2(" + std::to_string(q) + ")", order, N, std::move(classes),
                           std::move(names), std::move(rows), std::move(annotations));
}

nlohmann::json save_table(const CharTable& t) {
    nlohmann::json j;
    j["group"] = t.group();
    j["order"] = t.order().get_str();
    j["exponent"] = t.exponent();
    nlohmann::json cls = nlohmann::json::array();
    for (const auto& c : t.classes()) {
        nlohmann::json e;
        e["name"] = c.name;
        e["size"] = c.size.get_str();
        e["element_order"] = c.element_order;
        cls.push_back(std::move(e));
    }
    j["classes"] = std::move(cls);
    nlohmann::json chars = nlohmann::json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        nlohmann::json e;
        e["name"] = t.character_names()[i];
        nlohmann::json vals = nlohmann::json::array();
        for (std::size_t g = 0; g < t.size(); ++g) vals.push_back(cyc_to_json(t.value(i, g)));
        e["values"] = std::move(vals);
        chars.push_back(std::move(e));
    }
    j["characters"] = std::move(chars);
    if (!t.annotations().empty()) {
        nlohmann::json ann;
        for (const auto& [name, cent] : t.annotations())
            ann[name] = nlohmann::json{{"centralizer_order", cent.get_str()}};
        j["annotations"] = std::move(ann);
    }
    return j;
}

namespace {

Int int_from_json(const nlohmann::json& j, const std::string& what) {
    if (j.is_string()) {
        Int v;
        if (mpz_set_str(v.get_mpz_t(), j.get<std::string>().c_str(), 10) != 0)
            throw validation_error("character table file: " + what +
                                   " is not a decimal integer");
        return v;
    }
    if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    throw validation_error("character table file: " + what + " must be an integer or string");
}

std::uint64_t u64_from_json(const nlohmann::json& j, const std::string& what) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
        std::int64_t v = j.get<std::int64_t>();
        if (v >= 0) return static_cast<std::uint64_t>(v);
    }
    throw validation_error("character table file: " + what +
                           " must be a nonnegative integer");
}

}  // namespace

CharTable load_table(const nlohmann::json& j) {
    if (!j.is_object()) throw validation_error("character table file: not a JSON object");
    static const std::set<std::string> allowed = {"group",      "order",      "exponent",
                                                  "classes",    "characters", "annotations"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw validation_error("character table file: unknown key " + it.key());
    for (const char* key : {"group", "order", "exponent", "classes", "characters"})
        if (!j.contains(key))
            throw validation_error("character table file: missing key " + std::string(key));

    if (!j["group"].is_string())
        throw validation_error("character table file: group must be a string");
    std::string group = j["group"].get<std::string>();
    Int order = int_from_json(j["order"], "order");
    std::uint64_t expo = u64_from_json(j["exponent"], "exponent");
    if (expo == 0 || expo > 0x7fffffffULL)
        throw validation_error("character table file: exponent out of range");

    if (!j["classes"].is_array())
        throw validation_error("character table file: classes must be an array");
    std::vector<ClassInfo> classes;
    for (const auto& e : j["classes"]) {
        if (!e.is_object() || !e.contains("name") || !e.contains("size") ||
            !e.contains("element_order") || e.size() != 3 || !e["name"].is_string())
            throw validation_error("character table file: malformed class entry");
        ClassInfo c;
        c.name = e["name"].get<std::string>();
        c.size = int_from_json(e["size"], "class size");
        c.element_order = u64_from_json(e["element_order"], "element order");
        classes.push_back(std::move(c));
    }

    if (!j["characters"].is_array())
        throw validation_error("character table file: characters must be an array");
    std::vector<std::string> names;
    std::vector<std::vector<CycInt>> values;
    for (const auto& e : j["characters"]) {
        if (!e.is_object() || !e.contains("name") || !e.contains("values") || e.size() != 2 ||
            !e["name"].is_string() || !e["values"].is_array())
            throw validation_error("character table file: malformed character entry");
        names.push_back(e["name"].get<std::string>());
        std::vector<CycInt> row;
        for (const auto& v : e["values"]) row.push_back(cyc_from_json(v));
        values.push_back(std::move(row));
    }

    std::map<std::string, Int> annotations;
    if (j.contains("annotations")) {
        if (!j["annotations"].is_object())
            throw validation_error("character table file: annotations must be an object");
        for (auto it = j["annotations"].begin(); it != j["annotations"].end(); ++it) {
            const nlohmann::json& e = it.value();
            if (!e.is_object() || !e.contains("centralizer_order") || e.size() != 1)
                throw validation_error("character table file: malformed annotation for " +
                                       it.key());
            annotations[it.key()] = int_from_json(e["centralizer_order"], "centralizer order");
        }
    }

    return CharTable::make(std::move(group), std::move(order),
                           static_cast<std::uint32_t>(expo), std::move(classes),
                           std::move(names), std::move(values), std::move(annotations));
}

SparsityReport sparsity(const CharTable& t) {
    const std::size_t k = t.size();
    SparsityReport r;
    r.total_entries = static_cast<std::uint64_t>(k) * k;
    r.zeros_per_character.assign(k, 0);
    r.zeros_per_class.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t g = 0; g < k; ++g) {
            if (t.value(i, g).is_zero()) {
                ++r.zeros_per_character[i];
                ++r.zeros_per_class[g];
            } else {
                ++r.nonzero_entries;
            }
        }
    r.sigma = Rat(Int(r.nonzero_entries), Int(r.total_entries));
    r.sigma.canonicalize();
    return r;
}

std::vector<BurnsideViolation> burnside_audit(const CharTable& t) {
    std::vector<BurnsideViolation> out;
    const std::size_t k = t.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Int deg = t.degree(i);
        for (std::size_t g = 0; g < k; ++g) {
            const CycInt& v = t.value(i, g);
            if (v.is_zero()) continue;
            Int d = burnside_d(deg, t.classes()[g].size);
            if (!v.divisible_by_int(d)) out.push_back({i, g, std::move(d)});
        }
    }
    return out;
}

GallagherAuditReport gallagher_audit(const CharTable& t) {
    GallagherAuditReport r;
    const std::size_t k = t.size();
    bool have_min = false;
    for (std::size_t i = 0; i < k; ++i) {
        const Int deg = t.degree(i);
        for (std::size_t g = 0; g < k; ++g) {
            const CycInt& v = t.value(i, g);
            if (v.is_zero()) continue;
            ++r.nonzero_entries;
            GallagherResult base = v.gallagher_check();
            r.all_pass = r.all_pass && base.passes;
            if (!have_min || base.value < r.min_value) {
                r.min_value = base.value;
                have_min = true;
            }
            Int d = burnside_d(deg, t.classes()[g].size);
            if (d > 1 && v.divisible_by_int(d)) {
                ++r.divisor_entries;
                r.divisor_pass = r.divisor_pass && v.gallagher_check_divisor(d).passes;
            }
        }
    }
    return r;
}

bool second_orthogonality_check(const CharTable& t) {
    const std::size_t k = t.size();
    for (std::size_t g = 0; g < k; ++g) {
        for (std::size_t h = g; h < k; ++h) {
            CycInt sum;
            for (std::size_t i = 0; i < k; ++i) sum += t.value(i, g) * t.value(i, h).conj();
            CycInt want = (g == h) ? CycInt(t.order() / t.classes()[g].size) : CycInt(0);
            if (sum != want) return false;
        }
    }
    return true;
}

OrdDegreeReport ord_degree_audit(const CharTable& t, std::uint32_t ell) {
    const Int ell_i(ell);
    if (ell < 2 || mpz_probab_prime_p(ell_i.get_mpz_t(), 30) == 0)
        throw invalid_parameter_error("ord_degree_audit: ell must be prime");
    const std::string& label = t.group();
    const std::size_t open = label.find('(');
    const std::size_t close = label.find(')', open);
    std::uint32_t q = 0;
    if (open != std::string::npos && close != std::string::npos && close > open + 1) {
        try {
            q = static_cast<std::uint32_t>(
                std::stoul(label.substr(open + 1, close - open - 1)));
        } catch (...) {
            q = 0;
        }
    }
    if (q == 0)
        throw precondition_error("ord_degree_audit: group label does not expose the field size");
    if (q % ell == 0)
        throw precondition_error("ord_degree_audit: ell divides the field size");

    OrdDegreeReport r;
    const std::uint32_t ord_group = ord_of(t.order(), ell_i);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string& name = t.character_names()[i];
        auto it = t.annotations().find(name);
        if (it == t.annotations().end()) continue;
        OrdDegreeEntry e;
        e.character = name;
        if (mpz_divisible_p(it->second.get_mpz_t(), ell_i.get_mpz_t())) {
            e.checked = false;
        } else {
            e.checked = true;
            e.ord_degree = ord_of(t.degree(i), ell_i);
            e.ord_group = ord_group;
            if (e.ord_degree != e.ord_group) r.violations.push_back(name);
        }
        r.entries.push_back(std::move(e));
    }
    return r;
}

}  // namespace charsparse
