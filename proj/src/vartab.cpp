#include "ekedahl/vartab.hpp"

#include "ekedahl/errors.hpp"
#include "ekedahl/kring.hpp"

namespace ekedahl::vartab {

using abelian::FGAbelian;
using abelian::L0AbElement;

bool CohomologyTable::torsion_free() const {
    for (const auto& [d, g] : groups)
        if (!g.invariant_factors.empty()) return false;
    return true;
}

void validate_table(const CohomologyTable& t) {
    if (t.dimension < 0) fail(Err::ValidationFailed, "negative dimension");
    for (const auto& [d, g] : t.groups) {
        if (d < 0 || d > 2 * t.dimension)
            fail(Err::ValidationFailed,
                 "cohomology degree " + std::to_string(d) + " outside [0, 2*dim]");
        abelian::fg_make(g.rank, g.invariant_factors);  // re-check the chain
    }
}

CohomologyTable table_point() {
    CohomologyTable t;
    t.dimension = 0;
    t.set(0, abelian::fg_make(1, {}));
    return t;
}

CohomologyTable table_projective_space(int n) {
    if (n < 0) fail(Err::ValidationFailed, "projective space dimension must be >= 0");
    CohomologyTable t;
    t.dimension = n;
    for (int k = 0; k <= n; ++k) t.set(2 * k, abelian::fg_make(1, {}));
    return t;
}

std::pair<CohomologyTable, CohomologyTable> table_blowup(const CohomologyTable& x,
                                                         const CohomologyTable& y, int codim) {
    if (codim < 1) fail(Err::DimensionMismatch, "blow-up codimension must be >= 1");
    if (y.dimension + codim != x.dimension)
        fail(Err::DimensionMismatch, "center dimension + codimension != ambient dimension");

    CohomologyTable bl;
    bl.dimension = x.dimension;
    for (int k = 0; k <= 2 * bl.dimension; ++k) {
        FGAbelian acc = x.at(k);
        for (int i = 1; i <= codim - 1; ++i) acc = abelian::fg_direct_sum(acc, y.at(k - 2 * i));
        bl.set(k, std::move(acc));
    }

    CohomologyTable e;
    e.dimension = x.dimension - 1;
    for (int k = 0; k <= 2 * e.dimension; ++k) {
        FGAbelian acc;
        for (int i = 0; i <= codim - 1; ++i) acc = abelian::fg_direct_sum(acc, y.at(k - 2 * i));
        e.set(k, std::move(acc));
    }
    return {std::move(bl), std::move(e)};
}

CohomologyTable table_product_torsion_free(const CohomologyTable& a, const CohomologyTable& b) {
    if (!a.torsion_free() || !b.torsion_free())
        fail(Err::HasTorsion,
             "Kunneth shortcut needs torsion-free factors; supply the product table directly");
    CohomologyTable t;
    t.dimension = a.dimension + b.dimension;
    for (int k = 0; k <= 2 * t.dimension; ++k) {
        int rank = 0;
        for (const auto& [i, gi] : a.groups) {
            auto it = b.groups.find(k - i);
            if (it != b.groups.end()) rank += gi.rank * it->second.rank;
        }
        if (rank > 0) t.set(k, abelian::fg_make(rank, {}));
    }
    return t;
}

namespace {

// table of a symbol: its own, or Kunneth over the factors
CohomologyTable symbol_table(const kring::Symbol& s) {
    if (!s->smooth_proper)
        fail(Err::MissingTable, "symbol '" + s->name + "' is not marked smooth and proper");
    if (s->table) return *s->table;
    if (s->factors.size() >= 2) {
        CohomologyTable acc = table_point();
        for (const auto& f : s->factors) acc = table_product_torsion_free(acc, symbol_table(f));
        return acc;
    }
    fail(Err::MissingTable, "symbol '" + s->name + "' has no cohomology table");
}

}  // namespace

L0AbElement h_k(const kring::KElement& x, long k) {
    const kring::Fil tau = x.precision();
    if (!tau.is_ninf() && k <= 2 * tau.value())
        fail(Err::InsufficientPrecision,
             "H^" + std::to_string(k) + " is not determined at precision Fil(" +
                 std::to_string(tau.value()) + "); need k > 2*tau");
    L0AbElement out;
    for (const auto& [key, coeff] : x.terms()) {
        const long degree = k - 2 * key.exp;
        if (degree < 0) continue;
        CohomologyTable table = key.sym ? symbol_table(key.sym) : table_point();
        if (degree > 2 * table.dimension) continue;
        out += abelian::l0_class_of(table.at(static_cast<int>(degree))) * coeff;
    }
    return out;
}

}  // namespace ekedahl::vartab
