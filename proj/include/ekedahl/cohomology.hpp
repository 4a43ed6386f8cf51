// H^2(G, C^*) through the normalized bar complex with Z/|G| coefficients and
// a Bockstein correction, restriction maps, and the Bogomolov multiplier as
// an intersection of restriction kernels over maximal abelian subgroups.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "ekedahl/abelian.hpp"
#include "ekedahl/group.hpp"
#include "ekedahl/ints.hpp"
#include "ekedahl/linalg.hpp"

namespace ekedahl::cohom {

// Default cap for cohomology-scale computations (the degree-2 coboundary
// matrix of an order-64 group is already 3969 x 250047).
inline constexpr int kDefaultCohomologyCap = 64;

// Indexing of normalized cochain bases: tuples of non-identity elements.
struct CochainIndex {
    std::vector<int> elems;  // non-identity group elements, ascending
    std::vector<int> pos;    // group element -> basis slot, -1 for identity
    int n1 = 0;              // |G| - 1

    explicit CochainIndex(const groups::FiniteGroup& g);
    int pair(int a, int b) const { return pos[a] * n1 + pos[b]; }
    int triple(int a, int b, int c) const { return (pos[a] * n1 + pos[b]) * n1 + pos[c]; }
};

// Matrix of the normalized coboundary delta^k : C^k -> C^(k+1), k in {1,2},
// rows indexed by the codomain basis, entries reduced into [0, m).
linalg::Sparse coboundary_matrix(const groups::FiniteGroup& g, int degree, const Int& m);

// Integral boundary matrices of the normalized bar complex (homology side),
// degree in {2,3}; rows indexed by C_(degree-1).
linalg::Sparse boundary_matrix(const groups::FiniteGroup& g, int degree);

// Connecting 2-cocycle of a homomorphism chi : G -> Z/m, as the carry cochain
// (chi(a) + chi(b) - chi(ab)) / m. chi is given by one value per group
// element and is checked.
std::vector<Int> bockstein_cocycle(const groups::FiniteGroup& g, const std::vector<Int>& chi,
                                   const Int& m);

// H^2(G, Z/m) / im(Bockstein over all characters), presented with one
// generator per basis vector of the mod-m 2-cocycle lattice.
struct H2Presentation {
    std::string fingerprint;
    Int modulus;
    int pairs = 0;                           // (|G|-1)^2
    abelian::PresentedAbelian presentation;  // generators match cocycles' columns
    linalg::LatticeBasis cocycles;           // basis of { x : d2 x = 0 mod m }

    // representative 2-cochain of generator j, reduced into [0, m)
    std::vector<Int> representative(int j) const;
};

H2Presentation h2_units_mod(const groups::FiniteGroup& g, const Int& m,
                            linalg::Exec exec = linalg::Exec::parallel);

// m = |G|; this models H^2(G, C^*).
H2Presentation h2_units(const groups::FiniteGroup& g, int cap = kDefaultCohomologyCap,
                        linalg::Exec exec = linalg::Exec::parallel);

abelian::FGAbelian h2_canonical(const H2Presentation& h,
                                linalg::Exec exec = linalg::Exec::parallel);

// Induced map on presented groups for the restriction H^2(G) -> H^2(A).
// Both presentations must use the same modulus.
linalg::Dense restriction_matrix(const groups::FiniteGroup& g, const groups::Subgroup& sub,
                                 const H2Presentation& hg, const H2Presentation& ha);

// Memoizes h2 presentations by (table fingerprint, modulus). Not shared
// between threads; each pipeline run owns one.
class H2Cache {
public:
    const H2Presentation& get(const groups::FiniteGroup& g, const Int& m, linalg::Exec exec);

private:
    std::map<std::pair<std::string, Int>, H2Presentation> store_;
};

struct BogomolovOptions {
    int cap = kDefaultCohomologyCap;
    linalg::Exec exec = linalg::Exec::parallel;
    H2Cache* cache = nullptr;  // optional external memo
};

// Intersection over the maximal abelian subgroups A of
// ker(H^2(G, C^*) -> H^2(A, C^*)); always finite.
abelian::FGAbelian bogomolov_multiplier(const groups::FiniteGroup& g,
                                        const BogomolovOptions& opts = {});

// Same intersection over an explicit list of abelian subgroups; the
// maximal-vs-all equivalence property test runs through this.
abelian::FGAbelian bogomolov_over_subgroups(const groups::FiniteGroup& g,
                                            const std::vector<groups::Subgroup>& subs,
                                            const BogomolovOptions& opts = {});

}  // namespace ekedahl::cohom
