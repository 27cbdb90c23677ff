#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "charsparse/cyclo.hpp"
#include "charsparse/numeric.hpp"

namespace charsparse {

// One conjugacy class: display name, number of elements, common element order.
struct ClassInfo {
    std::string name;
    Int size;
    std::uint64_t element_order = 1;

    friend bool operator==(const ClassInfo& a, const ClassInfo& b) {
        return a.name == b.name && a.size == b.size && a.element_order == b.element_order;
    }
};

// How much checking CharTable::make performs.  `full` additionally verifies
// exact first-kind orthogonality of the rows; `structural` skips that and is
// meant for building deliberately broken tables in diagnostic tooling.
enum class TableChecks { full, structural };

// A complete complex character table with exact cyclotomic entries.
//
// Rows are characters, columns are conjugacy classes.  Column 0 is the class
// of the identity (so column 0 holds the character degrees) and row 0 is the
// trivial character.  Every entry is stored at the group exponent N, which is
// a valid conductor for all values.  Construction validates the structural
// invariants and, by default, exact row orthogonality, so an instance that
// exists is internally consistent.
class CharTable {
public:
    static CharTable make(std::string group_label,
                          Int order,
                          std::uint32_t exponent,
                          std::vector<ClassInfo> classes,
                          std::vector<std::string> character_names,
                          std::vector<std::vector<CycInt>> values,
                          std::map<std::string, Int> annotations = {},
                          TableChecks checks = TableChecks::full);

    const std::string& group() const { return group_; }
    const Int& order() const { return order_; }
    std::uint32_t exponent() const { return exponent_; }
    // number of characters == number of classes
    std::size_t size() const { return classes_.size(); }
    const std::vector<ClassInfo>& classes() const { return classes_; }
    const std::vector<std::string>& character_names() const { return names_; }
    const CycInt& value(std::size_t character, std::size_t cls) const;
    // the degree chi(1), a positive rational integer
    Int degree(std::size_t character) const;
    // optional per-character data: name -> centralizer order of the
    // associated semisimple conjugacy class (present on the GL2 tables)
    const std::map<std::string, Int>& annotations() const { return annotations_; }

    friend bool operator==(const CharTable& a, const CharTable& b);
    friend bool operator!=(const CharTable& a, const CharTable& b) { return !(a == b); }

private:
    CharTable() = default;
    std::string group_;
    Int order_;
    std::uint32_t exponent_ = 1;
    std::vector<ClassInfo> classes_;
    std::vector<std::string> names_;
    std::vector<std::vector<CycInt>> values_;
    std::map<std::string, Int> annotations_;
};

// The character table of SL2(F_q).  Supported q: odd prime powers 5..256 and
// even prime powers 4..256; anything else raises invalid_parameter_error.
CharTable table_sl2(std::uint32_t q);

// The character table of PSL2(F_q), derived from the SL2 table by keeping the
// rows with trivial central character and fusing classes that the central
// involution identifies.  For even q the two groups coincide.
CharTable table_psl2(std::uint32_t q);

// The character table of GL2(F_q) for prime powers 2 <= q <= 17, with
// per-character centralizer-order annotations.
CharTable table_gl2(std::uint32_t q);

// JSON round trip.  The schema is
//   {"group": label, "order": decimal string, "exponent": n,
//    "classes": [{"element_order": n, "name": s, "size": n}, ...],
//    "characters": [{"name": s, "values": [cyclotomic, ...]}, ...],
//    "annotations": {name: {"centralizer_order": decimal string}, ...}}
// with "annotations" omitted when empty.  load_table re-runs the full
// validation, so a table read back from disk carries the same guarantees as
// a freshly built one; the error message names the first violated invariant.
nlohmann::json save_table(const CharTable& t);
CharTable load_table(const nlohmann::json& j);

// Zero-entry statistics.  sigma is the fraction of nonzero entries.
struct SparsityReport {
    std::uint64_t total_entries = 0;
    std::uint64_t nonzero_entries = 0;
    Rat sigma;
    std::vector<std::uint64_t> zeros_per_character;
    std::vector<std::uint64_t> zeros_per_class;
};
SparsityReport sparsity(const CharTable& t);

// One entry failing the divisibility test chi(g) in d * Z[zeta], where
// d = degree / gcd(degree, class size).
struct BurnsideViolation {
    std::size_t character = 0;
    std::size_t cls = 0;
    Int divisor;
};
// Checks every nonzero entry; a genuine character table yields no violations.
std::vector<BurnsideViolation> burnside_audit(const CharTable& t);

// Averaged-norm audit over all nonzero entries: every entry must satisfy
// T(x * conj(x)) >= 1, and entries divisible by their Burnside divisor d
// must satisfy T >= d^2.  min_value is the smallest observed T.
struct GallagherAuditReport {
    std::uint64_t nonzero_entries = 0;
    std::uint64_t divisor_entries = 0;
    bool all_pass = true;
    bool divisor_pass = true;
    Rat min_value;
};
GallagherAuditReport gallagher_audit(const CharTable& t);

// Exact orthogonality of the second kind: for classes g, h the sum over all
// characters of chi(g) * conj(chi(h)) equals |C_G(g)| when g == h and 0
// otherwise.  Returns true iff every pair checks out.
bool second_orthogonality_check(const CharTable& t);

// For each annotated character: when ell does not divide the annotated
// centralizer order, the ell-adic valuation of the degree must equal the
// ell-adic valuation of the group order.
struct OrdDegreeEntry {
    std::string character;
    bool checked = false;  // false when ell divides the centralizer order
    std::uint32_t ord_degree = 0;
    std::uint32_t ord_group = 0;
};
struct OrdDegreeReport {
    std::vector<OrdDegreeEntry> entries;
    std::vector<std::string> violations;
};
// Requires ell prime and coprime to the q parsed from the group label.
OrdDegreeReport ord_degree_audit(const CharTable& t, std::uint32_t ell);

}  // namespace charsparse
