#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "charsparse/families.hpp"
#include "charsparse/ff.hpp"
#include "charsparse/numeric.hpp"
#include "charsparse/poly.hpp"

namespace charsparse {

enum class MatCase { GL, SL, SU, Sp };

std::string mat_case_name(MatCase c);
MatCase mat_case_from_string(const std::string& s);

// Square matrix with entries stored row-major as field element indices.
struct Mat {
    std::uint32_t n = 0;
    std::array<std::uint16_t, 16> e{};

    std::uint16_t& at(std::uint32_t r, std::uint32_t c) { return e[r * n + c]; }
    std::uint16_t at(std::uint32_t r, std::uint32_t c) const { return e[r * n + c]; }
    bool operator==(const Mat& o) const { return n == o.n && e == o.e; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
};

// A tiny classical matrix group held in full: GL_n(F_q), SL_n(F_q),
// SU_n(F_q) (inside GL_n(F_{q^2}), identity hermitian form), or Sp_n(F_q)
// (standard alternating form), n <= 4.  Built by enumerating the ambient
// matrix space over the entries field and filtering on the defining
// conditions; the element count is checked against the closed-form order.
class MatGroup {
public:
    static MatGroup build(MatCase cas, std::uint32_t n, std::uint32_t q,
                          std::uint64_t order_cap = 2'000'000);

    MatCase mat_case() const { return cas_; }
    std::uint32_t n() const { return n_; }
    // the defining parameter; entries live in F_q, or F_{q^2} for SU
    std::uint32_t base_q() const { return base_q_; }
    const Field& field() const { return *fld_; }
    std::uint64_t order() const { return elems_.size(); }
    const std::vector<Mat>& elements() const { return elems_; }
    // the invariant form: identity for SU's hermitian form, the standard
    // alternating matrix for Sp, identity (unused) for GL/SL
    const Mat& form() const { return form_; }

    Mat identity() const;
    Mat mul(const Mat& a, const Mat& b) const;
    Mat inverse(const Mat& a) const;
    FieldElem det(const Mat& a) const;
    std::uint64_t element_order(const Mat& a) const;
    MonicPoly charpoly(const Mat& a) const;

    // order coprime to the characteristic
    bool is_semisimple(const Mat& a) const;
    // p-power order; cross-checked against charpoly == (x-1)^n
    bool is_unipotent(const Mat& a) const;

    bool contains(const Mat& a) const;
    std::size_t index_of(const Mat& a) const;

private:
    MatCase cas_ = MatCase::GL;
    std::uint32_t n_ = 0;
    std::uint32_t base_q_ = 0;
    const Field* fld_ = nullptr;
    Mat form_;
    std::uint32_t bits_ = 0;
    std::vector<Mat> elems_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;

    std::uint64_t key(const Mat& a) const;
};

struct ConjClass {
    Mat rep;                          // least-index element of the class
    std::uint64_t size = 0;
    std::uint64_t centralizer = 0;    // |G| / size, verified by direct scan
};

// Exact partition of G into conjugacy classes, ordered by the index of each
// class's first element.  Orbits are grown breadth-first under conjugation
// by a verified generating set; sizes are cross-checked by orbit-stabilizer.
std::vector<ConjClass> conjugacy_classes(const MatGroup& G);

// |{h in G : hg = gh}| by direct scan
std::uint64_t centralizer_order(const MatGroup& G, const Mat& g);

// number of conjugacy classes of p-power-order elements
std::uint32_t unipotent_class_count(const MatGroup& G);

struct CharpolyFiber {
    MonicPoly poly;
    std::uint32_t classes = 0;      // conjugacy classes with this charpoly
    std::uint32_t semisimple = 0;   // semisimple classes among them
    bool in_family = false;         // membership in the family for the case
};

struct FiberReport {
    std::vector<CharpolyFiber> fibers;    // sorted by poly_less
    std::uint32_t max_semisimple = 0;
    bool semisimple_bound_ok = false;     // every fiber has <= 4 semisimple classes
    bool family_ok = false;               // every charpoly lies in its family
};

// Groups conjugacy classes by characteristic polynomial and checks the
// at-most-4-semisimple-classes bound plus family membership (SL -> L_n(q),
// SU -> U_n(q), Sp -> O_n(q), GL -> L_n(q) with the matching constant term).
FiberReport charpoly_fiber_report(const MatGroup& G);

}  // namespace charsparse
