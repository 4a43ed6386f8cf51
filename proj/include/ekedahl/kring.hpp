// Symbolic arithmetic in the Grothendieck ring of varieties, its localization
// at the Lefschetz class and the classes L^n - 1, and the dimension-filtered
// completion with precision tracking.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ekedahl/ints.hpp"
#include "ekedahl/vartab.hpp"

namespace ekedahl::kring {

// Filtration degree: an integer or minus infinity.
class Fil {
public:
    constexpr Fil() = default;  // minus infinity
    static constexpr Fil ninf() { return {}; }
    static constexpr Fil of(long v) {
        Fil f;
        f.finite_ = true;
        f.v_ = v;
        return f;
    }

    bool is_ninf() const { return !finite_; }
    long value() const;  // finite only

    bool operator==(const Fil& o) const = default;
    bool operator<(const Fil& o) const {
        if (!finite_) return o.finite_;
        return o.finite_ && v_ < o.v_;
    }
    bool operator<=(const Fil& o) const { return *this < o || *this == o; }

    // addition with -inf absorbing
    Fil operator+(const Fil& o) const {
        if (!finite_ || !o.finite_) return ninf();
        return of(v_ + o.v_);
    }
    static Fil max(const Fil& a, const Fil& b) { return a < b ? b : a; }

    std::string str() const;

private:
    bool finite_ = false;
    long v_ = 0;
};

// A variety symbol: opaque generator with a dimension, smooth/proper flag and
// an optional cohomology table. Products record their factor lists so tables
// can be derived Kunneth-style. Identity is by name.
struct SymbolData {
    std::string name;
    int dimension = 0;
    bool smooth_proper = false;
    std::optional<vartab::CohomologyTable> table;
    std::vector<std::shared_ptr<const SymbolData>> factors;  // >= 2 entries on products
};
using Symbol = std::shared_ptr<const SymbolData>;

Symbol make_symbol(std::string name, int dimension, bool smooth_proper,
                   std::optional<vartab::CohomologyTable> table = std::nullopt);
Symbol product_symbol(const Symbol& a, const Symbol& b);

// (symbol or unit, Lefschetz exponent); unit terms have sym == nullptr.
struct TermKey {
    Symbol sym;
    long exp = 0;
    long virtual_dim() const { return (sym ? sym->dimension : 0) + exp; }
};
struct TermKeyLess {
    bool operator()(const TermKey& a, const TermKey& b) const;
};
using TermMap = std::map<TermKey, Int, TermKeyLess>;

// Finite sum of terms plus an unknown tail in Fil^tau; tau == -inf is exact.
// No stored term has virtual dimension at or below tau.
class KElement {
public:
    KElement() = default;  // exact zero

    static KElement zero() { return {}; }
    static KElement one() { return constant(1); }
    static KElement constant(Int c);
    static KElement lefschetz(long e = 1, Int coeff = 1);
    static KElement of_symbol(Symbol s, long e = 0, Int coeff = 1);

    const TermMap& terms() const { return terms_; }
    Fil precision() const { return tau_; }
    bool exact() const { return tau_.is_ninf(); }
    bool is_zero() const { return terms_.empty(); }
    Fil fil_degree() const;  // max term virtual dimension; -inf when no terms

    KElement truncated(Fil tau) const;

    KElement operator+(const KElement& o) const;
    KElement operator-(const KElement& o) const;
    KElement operator-() const;
    KElement operator*(const KElement& o) const { return mul(o); }
    KElement mul(const KElement& o) const;
    KElement scaled(const Int& c) const;

    bool operator==(const KElement& o) const;

    // grammar-compatible rendering; reparses to an equal element
    std::string str() const;

    friend KElement k_normalize(std::vector<std::pair<TermKey, Int>> terms, Fil tau);

private:
    TermMap terms_;
    Fil tau_;
};

KElement k_normalize(std::vector<std::pair<TermKey, Int>> terms, Fil tau);

inline KElement k_mul(const KElement& a, const KElement& b) { return a.mul(b); }

// Inverse of +-L^a * prod_j (L^(n_j) - 1), expanded to precision tau via
// geometric series. NotAUnit when the pattern match fails.
KElement k_invert_unit(const KElement& x, long tau);

// {P^n} = 1 + L + ... + L^n
KElement projective_space_class(int n);

// {GL_n} = prod_i (L^n - L^i), exact
KElement class_gl(int n);

// {BW} = w^-1 at precision tau; quotient, when given, multiplies in {W/H}.
KElement class_b_subgroup(const KElement& w_class, const std::optional<KElement>& quotient_class,
                          long tau);

// ({[V^m/G]}, {[P(V)/G]}) = (L^(nm) * bg, (1 + ... + L^(n-1)) * bg)
std::pair<KElement, KElement> quotient_stack_classes(const KElement& bg, int n, int m);

// Stabilized limit of a sequence whose consecutive differences drop strictly
// in filtration degree; the result carries the last difference's degree as
// its precision.
KElement limit_of_sequence(const std::vector<KElement>& seq);

// a == b modulo Fil^t; both sides must be known at least to precision t.
bool equal_mod_fil(const KElement& a, const KElement& b, long t);

}  // namespace ekedahl::kring
