#include "charsparse/cyclo.hpp"

#include <cstdlib>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

#include "charsparse/errors.hpp"

namespace charsparse {

namespace {

struct PrimePowerFactor {
    std::uint64_t p = 0;    // prime
    std::uint64_t pe = 0;   // p^a, the full power dividing N
    std::uint64_t pe1 = 0;  // p^{a-1}
    std::uint64_t phi = 0;  // pe - pe1
    std::uint64_t M = 0;    // N / pe
    std::uint64_t v = 0;    // M^{-1} mod pe
};

struct ConductorInfo {
    std::uint32_t N = 1;
    std::vector<PrimePowerFactor> factors;
};

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
    // extended Euclid; requires gcd(a, n) = 1, n >= 2
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(n), new_r = static_cast<long long>(a % n);
    while (new_r != 0) {
        long long quot = r / new_r;
        long long tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw precondition_error("inv_mod: arguments are not coprime");
    if (t < 0) t += static_cast<long long>(n);
    return static_cast<std::uint64_t>(t);
}

const ConductorInfo& conductor_info(std::uint32_t N) {
    static std::mutex mu;
    static std::map<std::uint32_t, ConductorInfo> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;

    ConductorInfo info;
    info.N = N;
    std::uint64_t rest = N;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        std::uint64_t pe = 1;
        while (rest % p == 0) {
            rest /= p;
            pe *= p;
        }
        PrimePowerFactor f;
        f.p = p;
        f.pe = pe;
        f.pe1 = pe / p;
        f.phi = f.pe - f.pe1;
        info.factors.push_back(f);
    }
    if (rest > 1) {
        PrimePowerFactor f;
        f.p = rest;
        f.pe = rest;
        f.pe1 = 1;
        f.phi = rest - 1;
        info.factors.push_back(f);
    }
    for (auto& f : info.factors) {
        f.M = N / f.pe;
        f.v = (f.pe == 1) ? 0 : inv_mod(f.M % f.pe, f.pe);
    }
    return cache.emplace(N, std::move(info)).first->second;
}

// Rewrites one power of zeta_N into canonical-basis terms and accumulates
// coeff * zeta_N^e into out.  At each prime power p^a || N whose digit sits
// in the top band [phi(p^a), p^a), the identity
// 1 + x^{p^{a-1}} + ... + x^{(p-1) p^{a-1}} = 0 at x = zeta_{p^a} trades the
// top digit for minus the sum over the lower bands.
void accumulate_power(const ConductorInfo& info, std::uint64_t e, const Int& coeff,
                      std::map<std::uint32_t, Int>& out) {
    std::uint64_t base = 0;
    std::vector<const PrimePowerFactor*> tops;
    std::vector<std::uint64_t> top_t;
    for (const auto& f : info.factors) {
        std::uint64_t d = (e % f.pe) * f.v % f.pe;
        if (d < f.phi) {
            base = (base + f.M * d) % info.N;
        } else {
            tops.push_back(&f);
            top_t.push_back(d - f.phi);  // d mod p^{a-1}, since d div p^{a-1} = p-1
        }
    }
    Int signed_coeff = (tops.size() % 2 == 0) ? coeff : Int(-coeff);
    std::vector<std::uint64_t> j(tops.size(), 0);
    while (true) {
        std::uint64_t exp = base;
        for (std::size_t i = 0; i < tops.size(); ++i)
            exp = (exp + tops[i]->M * (top_t[i] + j[i] * tops[i]->pe1)) % info.N;
        Int& slot = out[static_cast<std::uint32_t>(exp)];
        slot += signed_coeff;
        if (slot == 0) out.erase(static_cast<std::uint32_t>(exp));
        // odometer over j_i in [0, p_i - 1)
        std::size_t i = 0;
        while (i < tops.size()) {
            if (++j[i] < tops[i]->p - 1) break;
            j[i] = 0;
            ++i;
        }
        if (i == tops.size()) break;
    }
}

std::map<std::uint32_t, Int> normalize(std::uint32_t N,
                                       const std::map<std::uint64_t, Int>& raw) {
    const ConductorInfo& info = conductor_info(N);
    std::map<std::uint32_t, Int> out;
    for (const auto& [e, c] : raw) {
        if (c == 0) continue;
        accumulate_power(info, e % N, c, out);
    }
    return out;
}

std::uint32_t lcm_conductor(std::uint32_t a, std::uint32_t b) {
    std::uint64_t l = std::lcm<std::uint64_t>(a, b);
    if (l > 0x7fffffffULL)
        throw unsupported_error("conductor lcm exceeds the supported range");
    return static_cast<std::uint32_t>(l);
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw invalid_parameter_error("euler_phi: n must be positive");
    std::uint64_t result = n;
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        result -= result / p;
    }
    if (rest > 1) result -= result / rest;
    return result;
}

int moebius(std::uint64_t n) {
    if (n == 0) throw invalid_parameter_error("moebius: n must be positive");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

CycInt::CycInt(Int value) {
    if (value != 0) coords_.emplace(0u, std::move(value));
}

CycInt CycInt::make(std::uint32_t N,
                    const std::vector<std::pair<Int, long long>>& terms) {
    if (N == 0) throw invalid_parameter_error("CycInt: conductor must be positive");
    std::map<std::uint64_t, Int> raw;
    for (const auto& [coeff, exponent] : terms) {
        long long r = exponent % static_cast<long long>(N);
        if (r < 0) r += static_cast<long long>(N);
        raw[static_cast<std::uint64_t>(r)] += coeff;
    }
    CycInt out;
    out.N_ = N;
    out.coords_ = normalize(N, raw);
    return out;
}

CycInt CycInt::root(std::uint32_t N, long long exponent) {
    return make(N, {{Int(1), exponent}});
}

bool CycInt::is_integer() const {
    return coords_.empty() || (coords_.size() == 1 && coords_.begin()->first == 0);
}

Int CycInt::as_integer() const {
    if (coords_.empty()) return 0;
    if (!is_integer())
        throw domain_error("CycInt: value is not a rational integer");
    return coords_.begin()->second;
}

CycInt CycInt::operator-() const {
    CycInt out = *this;
    for (auto& [e, c] : out.coords_) c = -c;
    return out;
}

CycInt CycInt::lifted(std::uint32_t M) const {
    if (M == 0) throw invalid_parameter_error("CycInt: conductor must be positive");
    if (M == N_) return *this;
    if (M % N_ != 0)
        throw invalid_parameter_error("CycInt: lift target is not a multiple of the conductor");
    std::uint64_t k = M / N_;
    std::map<std::uint64_t, Int> raw;
    for (const auto& [e, c] : coords_) raw[e * k] = c;
    CycInt out;
    out.N_ = M;
    out.coords_ = normalize(M, raw);
    return out;
}

CycInt CycInt::descended(std::uint32_t M) const {
    if (M == 0) throw invalid_parameter_error("CycInt: conductor must be positive");
    if (M == N_) return *this;
    if (N_ % M != 0)
        throw invalid_parameter_error("CycInt: descent target does not divide the conductor");
    // The canonical coordinates of an element of Z[zeta_M] inside Z[zeta_N]
    // sit exactly on the exponents (N/M) * e with e a basis exponent for M,
    // so membership in the subring is a per-exponent divisibility check.
    std::uint32_t k = N_ / M;
    CycInt out;
    out.N_ = M;
    for (const auto& [e, c] : coords_) {
        if (e % k != 0)
            throw domain_error("CycInt: value does not lie in the requested subring");
        out.coords_.emplace(e / k, c);
    }
    return out;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    std::uint32_t L = lcm_conductor(N_, o.N_);
    if (N_ != L) *this = lifted(L);
    const CycInt rhs = (o.N_ == L) ? o : o.lifted(L);
    for (const auto& [e, c] : rhs.coords_) {
        Int& slot = coords_[e];
        slot += c;
        if (slot == 0) coords_.erase(e);
    }
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) { return *this += -o; }

CycInt operator*(const CycInt& a, const CycInt& b) {
    std::uint32_t L = lcm_conductor(a.N_, b.N_);
    std::uint64_t ka = L / a.N_, kb = L / b.N_;
    std::map<std::uint64_t, Int> raw;
    for (const auto& [ea, ca] : a.coords_)
        for (const auto& [eb, cb] : b.coords_)
            raw[(ea * ka + eb * kb) % L] += ca * cb;
    CycInt out;
    out.N_ = L;
    out.coords_ = normalize(L, raw);
    return out;
}

CycInt& CycInt::operator*=(const CycInt& o) { return *this = *this * o; }

bool operator==(const CycInt& a, const CycInt& b) {
    std::uint32_t L = lcm_conductor(a.N_, b.N_);
    CycInt ta, tb;
    if (a.N_ != L) ta = a.lifted(L);
    if (b.N_ != L) tb = b.lifted(L);
    const std::map<std::uint32_t, Int>& ca = (a.N_ == L) ? a.coords_ : ta.coords_;
    const std::map<std::uint32_t, Int>& cb = (b.N_ == L) ? b.coords_ : tb.coords_;
    return ca == cb;
}

CycInt CycInt::conj() const {
    std::map<std::uint64_t, Int> raw;
    for (const auto& [e, c] : coords_) raw[(N_ - e) % N_] = c;
    CycInt out;
    out.N_ = N_;
    out.coords_ = normalize(N_, raw);
    return out;
}

CycInt CycInt::galois(long long a) const {
    long long r = a % static_cast<long long>(N_);
    if (r < 0) r += static_cast<long long>(N_);
    std::uint64_t am = static_cast<std::uint64_t>(r);
    if (std::gcd<std::uint64_t>(am, N_) != 1)
        throw invalid_parameter_error("CycInt: Galois exponent must be coprime to the conductor");
    std::map<std::uint64_t, Int> raw;
    for (const auto& [e, c] : coords_) raw[e * am % N_] += c;
    CycInt out;
    out.N_ = N_;
    out.coords_ = normalize(N_, raw);
    return out;
}

Rat CycInt::normalized_trace() const {
    // T is Q-linear and T(zeta_N^e) = mu(m)/phi(m) with m = N / gcd(N, e):
    // zeta_N^e is a primitive m-th root, its conjugates over Q(zeta_N) repeat
    // each primitive m-th root phi(N)/phi(m) times, and the primitive m-th
    // roots sum to mu(m).
    Rat total = 0;
    for (const auto& [e, c] : coords_) {
        std::uint64_t m = N_ / std::gcd<std::uint64_t>(e, N_);
        int mu = moebius(m);
        if (mu == 0) continue;
        Rat term(c * mu);
        term /= Int(static_cast<unsigned long>(euler_phi(m)));
        total += term;
    }
    return total;
}

bool CycInt::divisible_by_int(const Int& d) const {
    if (d < 1) throw precondition_error("CycInt: divisor must be positive");
    for (const auto& [e, c] : coords_)
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) return false;
    return true;
}

CycInt CycInt::div_exact_int(const Int& d) const {
    if (!divisible_by_int(d))
        throw domain_error("CycInt: value is not divisible by the integer");
    CycInt out = *this;
    for (auto& [e, c] : out.coords_) c /= d;
    return out;
}

GallagherResult CycInt::gallagher_check() const {
    GallagherResult r;
    r.value = (*this * conj()).normalized_trace();
    r.passes = is_zero() || r.value >= 1;
    return r;
}

GallagherResult CycInt::gallagher_check_divisor(const Int& d) const {
    if (d < 1) throw precondition_error("CycInt: divisor must be positive");
    if (!is_zero() && !divisible_by_int(d))
        throw precondition_error("CycInt: divisor does not divide the value");
    GallagherResult r;
    r.value = (*this * conj()).normalized_trace();
    r.passes = is_zero() || r.value >= Rat(d * d);
    return r;
}

nlohmann::json cyc_to_json(const CycInt& a) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : a.coords())
        terms.push_back({c.get_str(), e});
    return {{"N", a.conductor()}, {"terms", std::move(terms)}};
}

CycInt cyc_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("N") || !j.contains("terms"))
        throw validation_error("CycInt: malformed serialization");
    if (!j["N"].is_number_integer())
        throw validation_error("CycInt: conductor must be a positive integer");
    std::int64_t N = 0;
    if (j["N"].is_number_unsigned()) {
        std::uint64_t u = j["N"].get<std::uint64_t>();
        if (u > 0x7fffffffULL) throw validation_error("CycInt: conductor out of range");
        N = static_cast<std::int64_t>(u);
    } else {
        N = j["N"].get<std::int64_t>();
    }
    if (N <= 0 || N > 0x7fffffffLL)
        throw validation_error("CycInt: conductor out of range");
    if (!j["terms"].is_array())
        throw validation_error("CycInt: terms must be an array");
    std::vector<std::pair<Int, long long>> terms;
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 2 || !t[1].is_number_integer())
            throw validation_error("CycInt: malformed term");
        Int coeff;
        if (t[0].is_string()) {
            try {
                coeff = Int(t[0].get<std::string>());
            } catch (const std::invalid_argument&) {
                throw validation_error("CycInt: malformed coefficient");
            }
        } else if (t[0].is_number_integer()) {
            coeff = Int(t[0].get<long>());
        } else {
            throw validation_error("CycInt: malformed coefficient");
        }
        terms.emplace_back(std::move(coeff), t[1].get<long long>());
    }
    return CycInt::make(static_cast<std::uint32_t>(N), terms);
}

}  // namespace charsparse
