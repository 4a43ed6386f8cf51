// Finitely generated abelian groups in invariant-factor form, presentations
// and their canonicalization, and the group L0(Ab) of formal classes.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "ekedahl/ints.hpp"
#include "ekedahl/linalg.hpp"

namespace ekedahl::abelian {

// Canonical form: free rank plus invariant factors d1 | d2 | ..., each >= 2.
struct FGAbelian {
    int rank = 0;
    std::vector<Int> invariant_factors;

    bool trivial() const { return rank == 0 && invariant_factors.empty(); }
    bool finite() const { return rank == 0; }
    Int order() const;  // finite groups only
    bool operator==(const FGAbelian& o) const = default;
    std::string str() const;  // e.g. "Z^2 + Z/2 + Z/6"
};

FGAbelian fg_make(int rank, std::vector<Int> factors);  // validates the divisibility chain
FGAbelian fg_direct_sum(const FGAbelian& a, const FGAbelian& b);

// Generators with integer relator columns: the group Z^generators / col-span.
struct PresentedAbelian {
    int generators = 0;
    linalg::Dense relations;  // generators x k; empty k means free

    static PresentedAbelian free_group(int n) { return {n, linalg::Dense(n, 0)}; }
    static PresentedAbelian of(const FGAbelian& a);
};

FGAbelian canonicalize(const PresentedAbelian& p, linalg::Exec exec = linalg::Exec::parallel);

// Kernel of the homomorphism dom -> cod induced by `map` on generators.
// Checks that map carries dom relations into the relation span of cod.
// A nonzero conductor asserts that conductor*Z^gens lies in both relation
// spans (true whenever the groups are annihilated by it); it bounds the
// intermediate arithmetic.
FGAbelian kernel_of_presented_hom(const PresentedAbelian& dom, const PresentedAbelian& cod,
                                  const linalg::Dense& map,
                                  linalg::Exec exec = linalg::Exec::parallel,
                                  const Int& conductor = 0);

// Maps between presented groups are matrices on generators; equality holds
// when corresponding columns differ by codomain relations.
bool presented_hom_equal(const PresentedAbelian& cod, const linalg::Dense& f, const linalg::Dense& g);

FGAbelian pontryagin_dual(const FGAbelian& a);  // finite input required

// --- L0(Ab) ---------------------------------------------------------------

// Basis label: {Z} or {Z/p^a}.
struct L0Label {
    bool is_z = true;
    Int p = 0;
    int a = 0;
    Int q() const;  // p^a
};

// Z sorts before all torsion labels; torsion labels by (p, a).
bool operator<(const L0Label& x, const L0Label& y);
bool operator==(const L0Label& x, const L0Label& y);

// Integer combination of basis labels; no zero coefficients stored.
class L0AbElement {
public:
    L0AbElement() = default;

    static L0AbElement zero() { return {}; }
    static L0AbElement z_class(Int coeff = 1);

    void add(const L0Label& label, const Int& coeff);
    bool is_zero() const { return coeff_.empty(); }
    Int z_coefficient() const;
    const std::map<L0Label, Int>& coefficients() const { return coeff_; }

    L0AbElement& operator+=(const L0AbElement& o);
    L0AbElement& operator-=(const L0AbElement& o);
    L0AbElement operator+(const L0AbElement& o) const;
    L0AbElement operator-(const L0AbElement& o) const;
    L0AbElement operator*(const Int& k) const;
    bool operator==(const L0AbElement& o) const = default;

    // Rendering grammar used in all outputs: "Z + Z/2 + Z/3", "2Z - Z/4", "0".
    std::string str() const;
    static L0AbElement parse(const std::string& text);

private:
    std::map<L0Label, Int> coeff_;
};

// rank*{Z} plus the prime-power components of each invariant factor.
L0AbElement l0_class_of(const FGAbelian& a);

}  // namespace ekedahl::abelian
