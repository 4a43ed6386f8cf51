// Integral cohomology tables of smooth proper varieties and the blow-up /
// Leray-Hirsch calculus on them, plus the degree-k map from precision-tracked
// ring elements into L0(Ab).
#pragma once

#include <map>
#include <utility>

#include "ekedahl/abelian.hpp"

namespace ekedahl::kring {
class KElement;
}

namespace ekedahl::vartab {

// Per-degree integral cohomology; degrees outside [0, 2*dimension] absent.
struct CohomologyTable {
    int dimension = 0;
    std::map<int, abelian::FGAbelian> groups;

    // trivial group for absent degrees
    abelian::FGAbelian at(int degree) const {
        auto it = groups.find(degree);
        return it == groups.end() ? abelian::FGAbelian{} : it->second;
    }
    void set(int degree, abelian::FGAbelian g) {
        if (!g.trivial()) groups[degree] = std::move(g);
    }
    bool torsion_free() const;
    bool operator==(const CohomologyTable& o) const = default;
};

void validate_table(const CohomologyTable& t);  // degree range, factor chains

CohomologyTable table_point();
CohomologyTable table_projective_space(int n);

// Blow-up of x along a center with cohomology y of codimension d, and the
// exceptional divisor: both out of the shifted-sum formulas.
std::pair<CohomologyTable, CohomologyTable> table_blowup(const CohomologyTable& x,
                                                         const CohomologyTable& y, int codim);

// Kunneth in the torsion-free case; HasTorsion otherwise.
CohomologyTable table_product_torsion_free(const CohomologyTable& a, const CohomologyTable& b);

// H^k of a precision-tracked class: sum over terms c * {X} * L^e of
// c * {H^(k-2e)(X)}. Requires k > 2*tau; tails of filtration degree tau
// cannot carry cohomology above degree 2*tau.
abelian::L0AbElement h_k(const kring::KElement& x, long k);

}  // namespace ekedahl::vartab
