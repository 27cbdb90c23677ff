#include "charsparse/ff.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace charsparse {

namespace {

constexpr std::uint32_t kMaxFieldSize = 1u << 16;

// -- dense F_p[x] helpers used only while constructing a field --------------

using PVec = std::vector<std::uint32_t>;  // coefficients, low order first

void ptrim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pmod(PVec a, const PVec& m, std::uint32_t p) {
    // m monic
    while (a.size() >= m.size() && !a.empty()) {
        std::uint32_t c = a.back();
        if (c != 0) {
            std::size_t shift = a.size() - m.size();
            for (std::size_t i = 0; i + 1 < m.size(); ++i) {
                std::uint64_t t = (a[shift + i] + static_cast<std::uint64_t>(c) * (p - m[i])) % p;
                a[shift + i] = static_cast<std::uint32_t>(t);
            }
        }
        a.pop_back();
        ptrim(a);
    }
    return a;
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return pmod(std::move(r), m, p);
}

PVec ppowmod(PVec base, std::uint64_t e, const PVec& m, std::uint32_t p) {
    PVec r{1};
    base = pmod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) r = pmulmod(r, base, m, p);
        base = pmulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

PVec pgcd(PVec a, PVec b, std::uint32_t p) {
    auto inv_mod_p = [p](std::uint32_t v) {
        std::uint32_t r = 1;
        std::uint64_t base = v % p, e = p - 2;
        while (e > 0) {
            if (e & 1) r = static_cast<std::uint32_t>(r * base % p);
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // make b monic, reduce a mod b
        std::uint32_t lc = b.back();
        if (lc != 1) {
            std::uint32_t il = inv_mod_p(lc);
            for (auto& c : b) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * il % p);
        }
        a = pmod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

std::vector<std::uint32_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(static_cast<std::uint32_t>(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
    return out;
}

bool is_irreducible(const PVec& f_low, std::uint32_t p, std::uint32_t k) {
    PVec f = f_low;
    f.resize(k + 1, 0);
    f[k] = 1;
    // x^(p^j) mod f for j = 1..k
    PVec x{0, 1};
    PVec t = x;
    std::vector<PVec> frob_powers(k + 1);
    frob_powers[0] = x;
    for (std::uint32_t j = 1; j <= k; ++j) {
        t = ppowmod(t, p, f, p);
        frob_powers[j] = t;
    }
    // x^(p^k) == x mod f
    PVec diff = frob_powers[k];
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    ptrim(diff);
    if (!diff.empty()) return false;
    // gcd(x^(p^(k/r)) - x, f) == 1 for prime r | k
    for (std::uint32_t r : prime_factors_u64(k)) {
        PVec d = frob_powers[k / r];
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        ptrim(d);
        PVec g = pgcd(f, d, p);
        if (!(g.size() == 1 && g[0] != 0)) return false;
    }
    return true;
}

}  // namespace

PrimePower PrimePower::of(std::uint32_t q) {
    if (q < 2 || q > kMaxFieldSize)
        throw invalid_parameter_error("field size must be a prime power in [2, 2^16], got " + std::to_string(q));
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;
    std::uint32_t k = 0, m = q;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1)
        throw invalid_parameter_error(std::to_string(q) + " is not a prime power");
    return PrimePower{p, k, q};
}

PrimePower PrimePower::make(std::uint32_t p, std::uint32_t k) {
    if (k == 0) throw invalid_parameter_error("prime power exponent must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxFieldSize) throw invalid_parameter_error("prime power exceeds 2^16");
    }
    PrimePower pp = of(static_cast<std::uint32_t>(q));
    if (pp.p != p) throw invalid_parameter_error(std::to_string(p) + " is not prime");
    return pp;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (fld != o.fld && (fld == nullptr || o.fld == nullptr || fld->q() != o.fld->q()))
        throw invalid_parameter_error("comparing elements of different fields");
    return idx == o.idx;
}

bool FieldElem::operator<(const FieldElem& o) const { return idx < o.idx; }

FieldElem FieldElem::operator+(const FieldElem& o) const { return fld->add(*this, o); }
FieldElem FieldElem::operator-(const FieldElem& o) const { return {fld, fld->sub_idx(idx, o.idx)}; }
FieldElem FieldElem::operator-() const { return {fld, fld->neg_idx(idx)}; }
FieldElem FieldElem::operator*(const FieldElem& o) const { return fld->mul(*this, o); }
FieldElem FieldElem::operator/(const FieldElem& o) const { return {fld, fld->mul_idx(idx, fld->inv_idx(o.idx))}; }

Field::Field(PrimePower pp) : pp_(pp) {
    const std::uint32_t p = pp_.p, k = pp_.k, q = pp_.q;
    if (k == 1) {
        mod_low_ = {0};
    } else {
        // candidates in increasing index order = lexicographic by
        // (c_{k-1}, ..., c_0)
        bool found = false;
        for (std::uint32_t cand = 0; cand < q; ++cand) {
            PVec low(k);
            std::uint32_t t = cand;
            for (std::uint32_t i = 0; i < k; ++i) {
                low[i] = t % p;
                t /= p;
            }
            if (low[0] == 0) continue;  // constant 0 => divisible by x
            if (is_irreducible(low, p, k)) {
                mod_low_ = low;
                found = true;
                break;
            }
        }
        if (!found) throw error("internal: no irreducible modulus found");
    }

    PVec modulus = mod_low_;
    modulus.resize(k + 1, 0);
    modulus[k] = 1;

    auto decode = [&](std::uint32_t idx) {
        PVec v(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            v[i] = idx % p;
            idx /= p;
        }
        ptrim(v);
        return v;
    };
    auto encode = [&](const PVec& v) {
        std::uint32_t idx = 0, mult = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            idx += (i < v.size() ? v[i] : 0) * mult;
            mult *= p;
        }
        return idx;
    };

    one_idx_ = 1;
    // find the smallest-index primitive element
    auto factors = prime_factors_u64(q - 1);
    auto order_full = [&](std::uint32_t idx) {
        PVec a = decode(idx);
        for (auto r : factors) {
            PVec t = ppowmod(a, (q - 1) / r, modulus, p);
            if (t.size() == 1 && t[0] == 1) return false;
        }
        return true;
    };
    gen_idx_ = 1;
    if (q > 2) {
        for (std::uint32_t idx = 2; idx < q; ++idx) {
            if (order_full(idx)) {
                gen_idx_ = idx;
                break;
            }
        }
    }

    expt_.resize(q - 1);
    logt_.assign(q, 0);
    PVec g = decode(gen_idx_);
    PVec cur{1};
    for (std::uint32_t i = 0; i < q - 1; ++i) {
        std::uint32_t idx = encode(cur);
        expt_[i] = idx;
        logt_[idx] = i;
        cur = pmulmod(cur, g, modulus, p);
    }
    if (!(cur.size() == 1 && cur[0] == 1)) throw error("internal: generator order mismatch");
}

void Field::check(std::uint32_t idx) const {
    if (idx >= pp_.q) throw invalid_parameter_error("field element index out of range");
}

FieldElem Field::element(std::uint32_t idx) const {
    check(idx);
    return {this, idx};
}

FieldElem Field::from_int(long v) const {
    long m = v % static_cast<long>(pp_.p);
    if (m < 0) m += pp_.p;
    return {this, static_cast<std::uint32_t>(m)};
}

std::vector<std::uint32_t> Field::coords(FieldElem a) const {
    check(a.idx);
    std::vector<std::uint32_t> v(pp_.k);
    std::uint32_t t = a.idx;
    for (std::uint32_t i = 0; i < pp_.k; ++i) {
        v[i] = t % pp_.p;
        t /= pp_.p;
    }
    return v;
}

std::uint32_t Field::add_idx(std::uint32_t a, std::uint32_t b) const {
    check(a);
    check(b);
    if (pp_.p == 2) return a ^ b;
    if (pp_.k == 1) return (a + b) % pp_.p;
    std::uint32_t r = 0, mult = 1;
    for (std::uint32_t i = 0; i < pp_.k; ++i) {
        r += ((a + b) % pp_.p) * mult;
        a /= pp_.p;
        b /= pp_.p;
        mult *= pp_.p;
    }
    return r;
}

std::uint32_t Field::neg_idx(std::uint32_t a) const {
    check(a);
    if (pp_.p == 2) return a;
    if (pp_.k == 1) return (pp_.p - a) % pp_.p;
    std::uint32_t r = 0, mult = 1;
    for (std::uint32_t i = 0; i < pp_.k; ++i) {
        r += ((pp_.p - a % pp_.p) % pp_.p) * mult;
        a /= pp_.p;
        mult *= pp_.p;
    }
    return r;
}

std::uint32_t Field::sub_idx(std::uint32_t a, std::uint32_t b) const { return add_idx(a, neg_idx(b)); }

std::uint32_t Field::mul_idx(std::uint32_t a, std::uint32_t b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) return 0;
    std::uint64_t s = static_cast<std::uint64_t>(logt_[a]) + logt_[b];
    return expt_[s % (pp_.q - 1)];
}

std::uint32_t Field::inv_idx(std::uint32_t a) const {
    check(a);
    if (a == 0) throw domain_error("inverse of zero");
    return expt_[(pp_.q - 1 - logt_[a]) % (pp_.q - 1)];
}

FieldElem Field::pow(FieldElem a, long long e) const {
    check(a.idx);
    if (a.idx == 0) {
        if (e < 0) throw domain_error("negative power of zero");
        return e == 0 ? one() : zero();
    }
    long long m = pp_.q - 1;
    long long r = e % m;
    if (r < 0) r += m;
    std::uint64_t s = static_cast<std::uint64_t>(logt_[a.idx]) * static_cast<std::uint64_t>(r);
    return {this, expt_[s % (pp_.q - 1)]};
}

FieldElem Field::frobenius(FieldElem a, std::uint32_t base_q) const {
    if (static_cast<std::uint64_t>(base_q) * base_q != pp_.q)
        throw invalid_parameter_error("frobenius wants the quadratic extension of the given base");
    return pow(a, base_q);
}

std::uint32_t Field::mult_order(FieldElem a) const {
    check(a.idx);
    if (a.idx == 0) throw domain_error("multiplicative order of zero");
    std::uint32_t n = pp_.q - 1;
    if (n == 0) return 1;
    return n / std::gcd(n, logt_[a.idx]);
}

std::uint32_t Field::log(FieldElem a) const {
    check(a.idx);
    if (a.idx == 0) throw domain_error("discrete log of zero");
    return logt_[a.idx];
}

const Field& field_make(PrimePower pp) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(pp.q);
    if (it == cache.end()) it = cache.emplace(pp.q, std::make_unique<Field>(pp)).first;
    return *it->second;
}

const Field& field_make(std::uint32_t q) { return field_make(PrimePower::of(q)); }

std::vector<std::uint32_t> subfield_embedding(const Field& sub, const Field& sup) {
    if (sub.p() != sup.p() || sup.degree() % sub.degree() != 0)
        throw invalid_parameter_error("no embedding: target is not an extension of the source");
    const std::uint32_t p = sub.p();
    if (sub.q() == 2 || sub.degree() == 1) {
        // prime subfield: constants map to constants
        std::vector<std::uint32_t> map(sub.q());
        for (std::uint32_t i = 0; i < sub.q(); ++i) map[i] = i;
        return map;
    }
    // Minimal polynomial of sub's generator g over F_p: prod over the
    // Frobenius orbit (x - g^{p^j}).  Coefficients land in the prime
    // subfield, i.e. at indices < p in both representations.
    FieldElem g = sub.generator();
    std::vector<FieldElem> mu{sub.one()};  // low-first, monic
    FieldElem conj = g;
    for (std::uint32_t j = 0; j < sub.degree(); ++j) {
        std::vector<FieldElem> next(mu.size() + 1, sub.zero());
        for (std::size_t i = 0; i < mu.size(); ++i) {
            next[i + 1] = next[i + 1] + mu[i];
            next[i] = next[i] - mu[i] * conj;
        }
        mu = std::move(next);
        conj = sub.pow(conj, p);
    }
    for (auto& c : mu)
        if (c.idx >= p) throw validation_error("minimal polynomial escaped the prime subfield");
    // Smallest-index root of mu in sup fixes the embedding.
    std::uint32_t h_idx = 0;
    bool found = false;
    for (std::uint32_t cand = 1; cand < sup.q() && !found; ++cand) {
        FieldElem x = sup.element(cand), acc = sup.zero();
        for (std::size_t i = mu.size(); i-- > 0;) acc = acc * x + sup.element(mu[i].idx);
        if (acc.is_zero()) {
            h_idx = cand;
            found = true;
        }
    }
    if (!found) throw validation_error("no root of the generator's minimal polynomial in the target");
    std::vector<std::uint32_t> map(sub.q());
    map[0] = 0;
    FieldElem h = sup.element(h_idx), acc = sup.one();
    for (std::uint32_t j = 0; j + 1 < sub.q(); ++j) {
        map[sub.gen_pow(j).idx] = acc.idx;
        acc = acc * h;
    }
    return map;
}

}  // namespace charsparse
