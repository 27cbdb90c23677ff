#include "charsparse/bruteforce.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <deque>
#include <map>

#include "charsparse/errors.hpp"
#include "charsparse/grouparith.hpp"

namespace charsparse {

namespace {

// dense polynomial over a small field, low-first coefficient indices
using PolyIdx = std::vector<std::uint32_t>;

PolyIdx poly_add(const Field& F, const PolyIdx& a, const PolyIdx& b) {
    PolyIdx r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint32_t x = i < a.size() ? a[i] : 0;
        std::uint32_t y = i < b.size() ? b[i] : 0;
        r[i] = F.add_idx(x, y);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

PolyIdx poly_mul(const Field& F, const PolyIdx& a, const PolyIdx& b) {
    if (a.empty() || b.empty()) return {};
    PolyIdx r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] = F.add_idx(r[i + j], F.mul_idx(a[i], b[j]));
        }
    }
    return r;
}

PolyIdx poly_neg(const Field& F, PolyIdx a) {
    for (auto& c : a) c = F.neg_idx(c);
    return a;
}

// determinant of a k x k matrix of polynomials by Laplace expansion along
// the first row; k <= 4 keeps this tiny
PolyIdx poly_det(const Field& F, const std::vector<std::vector<PolyIdx>>& m) {
    std::size_t k = m.size();
    if (k == 1) return m[0][0];
    PolyIdx acc;
    for (std::size_t j = 0; j < k; ++j) {
        if (m[0][j].empty()) continue;
        std::vector<std::vector<PolyIdx>> minor(k - 1);
        for (std::size_t r = 1; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c)
                if (c != j) minor[r - 1].push_back(m[r][c]);
        PolyIdx term = poly_mul(F, m[0][j], poly_det(F, minor));
        if (j % 2 == 1) term = poly_neg(F, term);
        acc = poly_add(F, acc, term);
    }
    return acc;
}

std::uint16_t conj_entry(const Field& F, std::uint32_t base_q, std::uint16_t idx) {
    return static_cast<std::uint16_t>(
        F.frobenius(F.element(idx), base_q).idx);
}

}  // namespace

std::string mat_case_name(MatCase c) {
    switch (c) {
        case MatCase::GL: return "GL";
        case MatCase::SL: return "SL";
        case MatCase::SU: return "SU";
        case MatCase::Sp: return "Sp";
    }
    throw invalid_parameter_error("mat_case_name: unknown case");
}

MatCase mat_case_from_string(const std::string& s) {
    std::string t;
    for (char ch : s) t.push_back(static_cast<char>(std::tolower(ch)));
    if (t == "gl") return MatCase::GL;
    if (t == "sl") return MatCase::SL;
    if (t == "su") return MatCase::SU;
    if (t == "sp") return MatCase::Sp;
    throw invalid_parameter_error("unknown matrix group case: " + s);
}

std::uint64_t MatGroup::key(const Mat& a) const {
    std::uint64_t k = 0;
    for (std::uint32_t i = 0; i < n_ * n_; ++i)
        k |= static_cast<std::uint64_t>(a.e[i]) << (bits_ * i);
    return k;
}

Mat MatGroup::identity() const {
    Mat m;
    m.n = n_;
    for (std::uint32_t i = 0; i < n_; ++i)
        m.at(i, i) = static_cast<std::uint16_t>(fld_->one().idx);
    return m;
}

Mat MatGroup::mul(const Mat& a, const Mat& b) const {
    Mat r;
    r.n = n_;
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j) {
            std::uint32_t s = 0;
            for (std::uint32_t k = 0; k < n_; ++k)
                s = fld_->add_idx(s, fld_->mul_idx(a.at(i, k), b.at(k, j)));
            r.at(i, j) = static_cast<std::uint16_t>(s);
        }
    return r;
}

Mat MatGroup::inverse(const Mat& a) const {
    // Gauss-Jordan on [a | I]
    std::array<std::array<std::uint32_t, 8>, 4> w{};
    for (std::uint32_t i = 0; i < n_; ++i) {
        for (std::uint32_t j = 0; j < n_; ++j) w[i][j] = a.at(i, j);
        for (std::uint32_t j = 0; j < n_; ++j)
            w[i][n_ + j] = (i == j) ? fld_->one().idx : 0;
    }
    for (std::uint32_t col = 0; col < n_; ++col) {
        std::uint32_t piv = col;
        while (piv < n_ && w[piv][col] == 0) ++piv;
        if (piv == n_) throw domain_error("MatGroup: matrix is singular");
        std::swap(w[piv], w[col]);
        std::uint32_t inv = fld_->inv_idx(w[col][col]);
        for (std::uint32_t j = 0; j < 2 * n_; ++j)
            w[col][j] = fld_->mul_idx(w[col][j], inv);
        for (std::uint32_t r = 0; r < n_; ++r) {
            if (r == col || w[r][col] == 0) continue;
            std::uint32_t f = w[r][col];
            for (std::uint32_t j = 0; j < 2 * n_; ++j)
                w[r][j] = fld_->sub_idx(w[r][j], fld_->mul_idx(f, w[col][j]));
        }
    }
    Mat r;
    r.n = n_;
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j)
            r.at(i, j) = static_cast<std::uint16_t>(w[i][n_ + j]);
    return r;
}

FieldElem MatGroup::det(const Mat& a) const {
    std::array<std::array<std::uint32_t, 4>, 4> w{};
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j) w[i][j] = a.at(i, j);
    std::uint32_t d = fld_->one().idx;
    bool negate = false;
    for (std::uint32_t col = 0; col < n_; ++col) {
        std::uint32_t piv = col;
        while (piv < n_ && w[piv][col] == 0) ++piv;
        if (piv == n_) return fld_->zero();
        if (piv != col) {
            std::swap(w[piv], w[col]);
            negate = !negate;
        }
        d = fld_->mul_idx(d, w[col][col]);
        std::uint32_t inv = fld_->inv_idx(w[col][col]);
        for (std::uint32_t r = col + 1; r < n_; ++r) {
            if (w[r][col] == 0) continue;
            std::uint32_t f = fld_->mul_idx(w[r][col], inv);
            for (std::uint32_t j = col; j < n_; ++j)
                w[r][j] = fld_->sub_idx(w[r][j], fld_->mul_idx(f, w[col][j]));
        }
    }
    if (negate) d = fld_->neg_idx(d);
    return fld_->element(d);
}

std::uint64_t MatGroup::element_order(const Mat& a) const {
    Mat id = identity();
    Mat x = a;
    std::uint64_t ord = 1;
    while (x != id) {
        x = mul(x, a);
        ++ord;
        if (ord > order())
            throw validation_error("MatGroup: element order exceeds the group order");
    }
    return ord;
}

MonicPoly MatGroup::charpoly(const Mat& a) const {
    // det(x I - a) by polynomial Laplace expansion
    const std::uint32_t one = fld_->one().idx;
    std::vector<std::vector<PolyIdx>> m(n_, std::vector<PolyIdx>(n_));
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j) {
            PolyIdx p{fld_->neg_idx(a.at(i, j))};
            if (i == j) p.push_back(one);
            while (!p.empty() && p.back() == 0) p.pop_back();
            m[i][j] = std::move(p);
        }
    PolyIdx d = poly_det(*fld_, m);
    if (d.size() != n_ + 1 || d.back() != one)
        throw validation_error("MatGroup: characteristic polynomial is not monic");
    d.pop_back();
    return monic(*fld_, std::move(d));
}

bool MatGroup::is_semisimple(const Mat& a) const {
    return element_order(a) % fld_->p() != 0;
}

bool MatGroup::is_unipotent(const Mat& a) const {
    std::uint64_t ord = element_order(a);
    std::uint64_t rest = ord;
    while (rest % fld_->p() == 0) rest /= fld_->p();
    bool order_p_power = (rest == 1);

    MonicPoly cp = charpoly(a);
    MonicPoly target = monic_one(*fld_);
    for (std::uint32_t i = 0; i < n_; ++i)
        target = charsparse::mul(target, monic_linear(*fld_, fld_->one()));
    bool charpoly_unip = (cp == target);

    if (order_p_power != charpoly_unip)
        throw validation_error("MatGroup: unipotence tests disagree");
    return order_p_power;
}

bool MatGroup::contains(const Mat& a) const {
    return index_.find(key(a)) != index_.end();
}

std::size_t MatGroup::index_of(const Mat& a) const {
    auto it = index_.find(key(a));
    if (it == index_.end())
        throw invalid_parameter_error("MatGroup: matrix is not a group element");
    return it->second;
}

MatGroup MatGroup::build(MatCase cas, std::uint32_t n, std::uint32_t q,
                         std::uint64_t order_cap) {
    if (n < 1 || n > 4)
        throw invalid_parameter_error("MatGroup: n must be between 1 and 4");
    if (cas == MatCase::Sp && (n % 2 != 0))
        throw invalid_parameter_error("MatGroup: Sp needs even n");
    if (cas == MatCase::SU && n < 2)
        throw invalid_parameter_error("MatGroup: SU needs n >= 2");
    PrimePower pp = PrimePower::of(q);

    // closed-form order, checked before any enumeration
    Int expected;
    switch (cas) {
        case MatCase::GL: expected = gl_order(n, q); break;
        case MatCase::SL: expected = gl_order(n, q) / (q - 1); break;
        case MatCase::SU: expected = u_order(n, q) / (q + 1); break;
        case MatCase::Sp:
            expected = group_order(group_spec(GroupCase::C, n / 2, pp), OrderVariant::Sp);
            break;
    }
    if (expected > Int(static_cast<unsigned long>(order_cap)))
        throw budget_error("MatGroup: group order " + expected.get_str() +
                           " exceeds the cap; this oracle is for tiny groups only");

    MatGroup G;
    G.cas_ = cas;
    G.n_ = n;
    G.base_q_ = q;
    std::uint32_t fq = (cas == MatCase::SU) ? q * q : q;
    G.fld_ = &field_make(fq);
    G.bits_ = static_cast<std::uint32_t>(std::bit_width(fq - 1u));
    if (G.bits_ * n * n > 64)
        throw unsupported_error("MatGroup: entry field too large for the matrix encoding");

    double space = std::pow(static_cast<double>(fq), static_cast<double>(n) * n);
    if (space > (1ULL << 27))
        throw unsupported_error("MatGroup: ambient matrix space too large to filter");

    const Field& F = *G.fld_;
    const std::uint32_t one = F.one().idx;

    // invariant form
    G.form_.n = n;
    if (cas == MatCase::Sp) {
        for (std::uint32_t i = 0; i < n / 2; ++i) {
            G.form_.at(i, n / 2 + i) = static_cast<std::uint16_t>(one);
            G.form_.at(n / 2 + i, i) = static_cast<std::uint16_t>(F.neg_idx(one));
        }
    } else {
        for (std::uint32_t i = 0; i < n; ++i)
            G.form_.at(i, i) = static_cast<std::uint16_t>(one);
    }

    // filter the ambient space
    Mat cand;
    cand.n = n;
    const std::uint32_t cells = n * n;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < cells; ++i) total *= fq;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t v = it;
        for (std::uint32_t i = 0; i < cells; ++i) {
            cand.e[i] = static_cast<std::uint16_t>(v % fq);
            v /= fq;
        }
        bool ok = false;
        switch (cas) {
            case MatCase::GL:
                ok = !G.det(cand).is_zero();
                break;
            case MatCase::SL:
                ok = (G.det(cand).idx == one);
                break;
            case MatCase::SU: {
                // conj(g)^T g == I, det g == 1
                ok = true;
                for (std::uint32_t i = 0; i < n && ok; ++i)
                    for (std::uint32_t j = 0; j < n && ok; ++j) {
                        std::uint32_t s = 0;
                        for (std::uint32_t k = 0; k < n; ++k)
                            s = F.add_idx(s, F.mul_idx(conj_entry(F, q, cand.at(k, i)),
                                                       cand.at(k, j)));
                        ok = (s == ((i == j) ? one : 0u));
                    }
                ok = ok && (G.det(cand).idx == one);
                break;
            }
            case MatCase::Sp: {
                // g^T J g == J
                ok = true;
                for (std::uint32_t i = 0; i < n && ok; ++i)
                    for (std::uint32_t j = 0; j < n && ok; ++j) {
                        std::uint32_t s = 0;
                        for (std::uint32_t k = 0; k < n; ++k) {
                            std::uint32_t jk = 0;
                            for (std::uint32_t l = 0; l < n; ++l)
                                jk = F.add_idx(jk,
                                               F.mul_idx(G.form_.at(k, l), cand.at(l, j)));
                            s = F.add_idx(s, F.mul_idx(cand.at(k, i), jk));
                        }
                        ok = (s == G.form_.at(i, j));
                    }
                break;
            }
        }
        if (ok) {
            G.index_.emplace(G.key(cand), static_cast<std::uint32_t>(G.elems_.size()));
            G.elems_.push_back(cand);
        }
    }

    if (Int(static_cast<unsigned long>(G.elems_.size())) != expected)
        throw validation_error("MatGroup: enumerated order disagrees with the formula");

    // closure spot-check: products and inverses stay inside
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    std::uint64_t m = G.elems_.size();
    for (int i = 0; i < 64; ++i) {
        const Mat& a = G.elems_[next() % m];
        const Mat& b = G.elems_[next() % m];
        if (!G.contains(G.mul(a, b)) || !G.contains(G.inverse(a)))
            throw validation_error("MatGroup: closure spot-check failed");
    }
    return G;
}

namespace {

// a small verified generating set: grow by closing until the subgroup is G
std::vector<Mat> generating_set(const MatGroup& G) {
    std::vector<Mat> gens;
    std::vector<bool> in_closure(G.order(), false);
    std::size_t closure_size = 0;

    auto close = [&]() {
        std::fill(in_closure.begin(), in_closure.end(), false);
        std::deque<std::size_t> frontier;
        std::size_t id_idx = G.index_of(G.identity());
        in_closure[id_idx] = true;
        closure_size = 1;
        frontier.push_back(id_idx);
        while (!frontier.empty()) {
            std::size_t i = frontier.front();
            frontier.pop_front();
            for (const Mat& g : gens) {
                std::size_t j = G.index_of(G.mul(G.elements()[i], g));
                if (!in_closure[j]) {
                    in_closure[j] = true;
                    ++closure_size;
                    frontier.push_back(j);
                }
            }
        }
    };

    close();
    while (closure_size < G.order()) {
        for (std::size_t i = 0; i < G.order(); ++i) {
            if (!in_closure[i]) {
                gens.push_back(G.elements()[i]);
                break;
            }
        }
        close();
    }
    return gens;
}

}  // namespace

std::vector<ConjClass> conjugacy_classes(const MatGroup& G) {
    std::vector<Mat> gens = generating_set(G);
    std::vector<Mat> gen_invs;
    gen_invs.reserve(gens.size());
    for (const Mat& g : gens) gen_invs.push_back(G.inverse(g));

    std::vector<bool> seen(G.order(), false);
    std::vector<ConjClass> classes;
    std::uint64_t covered = 0;
    for (std::size_t start = 0; start < G.order(); ++start) {
        if (seen[start]) continue;
        ConjClass cls;
        cls.rep = G.elements()[start];
        std::deque<std::size_t> frontier{start};
        seen[start] = true;
        cls.size = 1;
        while (!frontier.empty()) {
            std::size_t i = frontier.front();
            frontier.pop_front();
            for (std::size_t k = 0; k < gens.size(); ++k) {
                Mat conj = G.mul(gens[k], G.mul(G.elements()[i], gen_invs[k]));
                std::size_t j = G.index_of(conj);
                if (!seen[j]) {
                    seen[j] = true;
                    ++cls.size;
                    frontier.push_back(j);
                }
            }
        }
        if (G.order() % cls.size != 0)
            throw validation_error("conjugacy_classes: class size does not divide the order");
        cls.centralizer = G.order() / cls.size;
        if (centralizer_order(G, cls.rep) != cls.centralizer)
            throw validation_error("conjugacy_classes: centralizer scan disagrees with orbit-stabilizer");
        covered += cls.size;
        classes.push_back(std::move(cls));
    }
    if (covered != G.order())
        throw validation_error("conjugacy_classes: classes do not partition the group");
    return classes;
}

std::uint64_t centralizer_order(const MatGroup& G, const Mat& g) {
    if (!G.contains(g))
        throw invalid_parameter_error("centralizer_order: matrix is not a group element");
    std::uint64_t count = 0;
    for (const Mat& h : G.elements())
        if (G.mul(h, g) == G.mul(g, h)) ++count;
    return count;
}

std::uint32_t unipotent_class_count(const MatGroup& G) {
    std::uint32_t count = 0;
    for (const ConjClass& cls : conjugacy_classes(G))
        if (G.is_unipotent(cls.rep)) ++count;
    return count;
}

FiberReport charpoly_fiber_report(const MatGroup& G) {
    FamilySpec family =
        [&]() {
            PrimePower pp = PrimePower::of(G.base_q());
            switch (G.mat_case()) {
                case MatCase::SL:
                case MatCase::GL: return family_spec(FamilyKind::L, G.n(), pp);
                case MatCase::SU: return family_spec(FamilyKind::U, G.n(), pp);
                case MatCase::Sp: return family_spec(FamilyKind::O, G.n(), pp);
            }
            throw invalid_parameter_error("charpoly_fiber_report: unknown case");
        }();

    std::map<std::vector<std::uint32_t>, CharpolyFiber> fibers;
    for (const ConjClass& cls : conjugacy_classes(G)) {
        MonicPoly cp = G.charpoly(cls.rep);
        auto [it, inserted] = fibers.try_emplace(cp.low);
        CharpolyFiber& f = it->second;
        if (inserted) {
            f.poly = cp;
            FamilySpec spec = family;
            if (G.mat_case() == MatCase::GL) {
                // constant term is determined per element for GL
                spec = family_spec(FamilyKind::L, G.n(), PrimePower::of(G.base_q()),
                                   cp.coeff_idx(0));
            }
            f.in_family = family_membership(cp, spec);
        }
        ++f.classes;
        if (G.is_semisimple(cls.rep)) ++f.semisimple;
    }

    FiberReport report;
    report.family_ok = true;
    for (auto& [low, fiber] : fibers) {
        report.max_semisimple = std::max(report.max_semisimple, fiber.semisimple);
        report.family_ok = report.family_ok && fiber.in_family;
        report.fibers.push_back(std::move(fiber));
    }
    std::sort(report.fibers.begin(), report.fibers.end(),
              [](const CharpolyFiber& a, const CharpolyFiber& b) {
                  return poly_less(a.poly, b.poly);
              });
    report.semisimple_bound_ok = (report.max_semisimple <= 4);
    return report;
}

}  // namespace charsparse
