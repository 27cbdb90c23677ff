#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "charsparse/families.hpp"
#include "charsparse/ff.hpp"
#include "charsparse/numeric.hpp"
#include "charsparse/poly.hpp"

namespace charsparse {

// classical-group cases: dimension n for the A cases, rank r otherwise
enum class GroupCase { A_linear, A_unitary, B, C, D_plus, D_minus };

struct GroupSpec {
    GroupCase cas = GroupCase::A_linear;
    std::uint32_t n_or_r = 2;
    PrimePower q;
};

GroupSpec group_spec(GroupCase cas, std::uint32_t n_or_r, PrimePower q);

// order of the center of the simply connected form over F_q
Int center_order(const GroupSpec& spec);

// which polynomial family parametrizes the semisimple classes of the dual
// side, and whether an (x-1) factor is stripped first
struct DualFamily {
    FamilyKind family;
    bool strip_linear_factor;
};
DualFamily dual_family(GroupCase cas);

enum class OrderVariant { GL, U, SL, SU, Sp, SO, Omega, adjoint, simply_connected, simple };

Int group_order(const GroupSpec& spec, OrderVariant variant);

// |GL_n(F_Q)| and |U_n(F_Q0)| (the latter sitting inside GL_n(F_{Q0^2}))
Int gl_order(std::uint32_t n, const Int& Q);
Int u_order(std::uint32_t n, const Int& Q0);

// largest divisor of N coprime to the characteristic of q
Int prime_to_q_part(const Int& N, PrimePower q);

// prime factorization by trial division plus Pollard rho; budget caps the
// number of rho iterations per cofactor
std::map<Int, std::uint32_t> factor_integer(const Int& n, std::uint64_t budget = 20000000);

struct ZsigmondyResult {
    Int q;
    std::uint32_t m = 0;
    std::set<Int> primes;  // primes with ord_ell(q) exactly m
};

ZsigmondyResult zsigmondy(PrimePower q, std::uint32_t m, std::uint64_t budget = 20000000);

// (ell | q^k - 1, ell | q^k + 1), checked against the order-m characterization
std::pair<bool, bool> which_z_check(const Int& ell, PrimePower q, std::uint32_t m,
                                    std::uint32_t k);

// centralizer order of a semisimple element of GL_n(F_q) with the given
// factored characteristic polynomial
Int centralizer_order_gl(const Factorization& f, PrimePower q);

// unitary analogue: f is over F_{q^2}; self-paired factors give unitary
// blocks, swapped pairs give general linear blocks over the doubled field
Int centralizer_order_u(const Factorization& f, PrimePower base_q);

// maximal-torus order for a squarefree characteristic polynomial, by case;
// result is checked against the alpha(P) q^r ceiling
Int torus_centralizer_order(GroupCase cas, const Factorization& f, PrimePower base_q);

enum class JustOneMode { linear, unitary };

// gcd(ell, centralizer order) == 1 under the order-separation preconditions
bool just_one_check(const MonicPoly& P, std::uint32_t m, const Int& ell, JustOneMode mode);

// chi(1) / gcd(chi(1), class size)
Int burnside_d(const Int& char_degree, const Int& class_size);

// (G'/H') * pi(1), with H' required to divide G'
Int jordan_degree(const Int& G_prime_part, const Int& H_prime_part, const Int& pi_degree);

// exponent of the prime ell in N
std::uint32_t ord_of(const Int& N, const Int& ell);

}  // namespace charsparse
