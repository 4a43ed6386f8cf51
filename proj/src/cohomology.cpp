#include "ekedahl/cohomology.hpp"

#include <algorithm>

#include "ekedahl/errors.hpp"

namespace ekedahl::cohom {

using groups::FiniteGroup;
using groups::Subgroup;
using linalg::Dense;
using linalg::Sparse;
using linalg::SpVec;

CochainIndex::CochainIndex(const FiniteGroup& g) {
    pos.assign(g.order(), -1);
    for (int i = 0; i < g.order(); ++i) {
        if (i == g.identity()) continue;
        pos[i] = static_cast<int>(elems.size());
        elems.push_back(i);
    }
    n1 = static_cast<int>(elems.size());
}

namespace {

Int reduce_mod(const Int& v, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());  // result in [0, m)
    return r;
}

// accumulate +/-1 terms of one alternating sum, then reduce into [0, m);
// m == 0 means integral entries (homology side).
SpVec finish_row(std::vector<std::pair<int, int>>& terms, const Int& m) {
    std::sort(terms.begin(), terms.end());
    SpVec row;
    for (size_t i = 0; i < terms.size();) {
        size_t j = i;
        long coef = 0;
        while (j < terms.size() && terms[j].first == terms[i].first) coef += terms[j++].second;
        if (coef != 0) {
            Int v = m == 0 ? Int(coef) : reduce_mod(Int(coef), m);
            if (sign(v) != 0) row.emplace_back(terms[i].first, std::move(v));
        }
        i = j;
    }
    return row;
}

}  // namespace

Sparse coboundary_matrix(const FiniteGroup& g, int degree, const Int& m) {
    if (degree != 1 && degree != 2) fail(Err::Internal, "coboundary degree must be 1 or 2");
    if (m < 2) fail(Err::Internal, "coboundary modulus must be >= 2");
    CochainIndex ix(g);
    const int n1 = ix.n1;
    const int e = g.identity();

    if (degree == 1) {
        // (df)(a,b) = f(b) - f(ab) + f(a)
        Sparse out(n1 * n1, n1);
#pragma omp parallel for schedule(static)
        for (int r = 0; r < n1 * n1; ++r) {
            const int a = ix.elems[r / n1], b = ix.elems[r % n1];
            std::vector<std::pair<int, int>> terms;
            terms.emplace_back(ix.pos[b], 1);
            const int ab = g.mul(a, b);
            if (ab != e) terms.emplace_back(ix.pos[ab], -1);
            terms.emplace_back(ix.pos[a], 1);
            out.row[r] = finish_row(terms, m);
        }
        return out;
    }

    // (dc)(a,b,c) = c(b,c) - c(ab,c) + c(a,bc) - c(a,b)
    Sparse out(n1 * n1 * n1, n1 * n1);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n1 * n1 * n1; ++r) {
        const int a = ix.elems[r / (n1 * n1)], b = ix.elems[(r / n1) % n1], c = ix.elems[r % n1];
        std::vector<std::pair<int, int>> terms;
        terms.emplace_back(ix.pair(b, c), 1);
        const int ab = g.mul(a, b), bc = g.mul(b, c);
        if (ab != e) terms.emplace_back(ix.pair(ab, c), -1);
        if (bc != e) terms.emplace_back(ix.pair(a, bc), 1);
        terms.emplace_back(ix.pair(a, b), -1);
        out.row[r] = finish_row(terms, m);
    }
    return out;
}

Sparse boundary_matrix(const FiniteGroup& g, int degree) {
    if (degree != 2 && degree != 3) fail(Err::Internal, "boundary degree must be 2 or 3");
    CochainIndex ix(g);
    const int n1 = ix.n1;
    const int e = g.identity();
    const Int integral = 0;

    if (degree == 2) {
        // d(a,b) = (b) - (ab) + (a), rows indexed by C_1
        Sparse cols(n1 * n1, n1);  // transposed build, then flip
        Sparse out(n1, n1 * n1);
        for (int col = 0; col < n1 * n1; ++col) {
            const int a = ix.elems[col / n1], b = ix.elems[col % n1];
            std::vector<std::pair<int, int>> terms;
            terms.emplace_back(ix.pos[b], 1);
            const int ab = g.mul(a, b);
            if (ab != e) terms.emplace_back(ix.pos[ab], -1);
            terms.emplace_back(ix.pos[a], 1);
            for (auto& [r, v] : finish_row(terms, integral)) out.row[r].emplace_back(col, v);
        }
        return out;
    }

    // d(a,b,c) = (b,c) - (ab,c) + (a,bc) - (a,b), rows indexed by C_2
    Sparse out(n1 * n1, n1 * n1 * n1);
    for (int col = 0; col < n1 * n1 * n1; ++col) {
        const int a = ix.elems[col / (n1 * n1)], b = ix.elems[(col / n1) % n1],
                  c = ix.elems[col % n1];
        std::vector<std::pair<int, int>> terms;
        terms.emplace_back(ix.pair(b, c), 1);
        const int ab = g.mul(a, b), bc = g.mul(b, c);
        if (ab != e) terms.emplace_back(ix.pair(ab, c), -1);
        if (bc != e) terms.emplace_back(ix.pair(a, bc), 1);
        terms.emplace_back(ix.pair(a, b), -1);
        for (auto& [r, v] : finish_row(terms, integral)) out.row[r].emplace_back(col, v);
    }
    return out;
}

std::vector<Int> bockstein_cocycle(const FiniteGroup& g, const std::vector<Int>& chi, const Int& m) {
    const int n = g.order();
    if (static_cast<int>(chi.size()) != n)
        fail(Err::NotAHomomorphism, "character value list has wrong length");
    std::vector<Int> hat(n);
    for (int i = 0; i < n; ++i) hat[i] = reduce_mod(chi[i], m);
    if (sign(hat[g.identity()]) != 0)
        fail(Err::NotAHomomorphism, "character does not vanish on the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!divides(m, hat[a] + hat[b] - hat[g.mul(a, b)]))
                fail(Err::NotAHomomorphism, "values are not additive at (" + std::to_string(a) +
                                                ", " + std::to_string(b) + ")");
    CochainIndex ix(g);
    std::vector<Int> out(static_cast<size_t>(ix.n1) * ix.n1);
    for (int i = 0; i < ix.n1; ++i)
        for (int j = 0; j < ix.n1; ++j) {
            const int a = ix.elems[i], b = ix.elems[j];
            Int carry = divexact(hat[a] + hat[b] - hat[g.mul(a, b)], m);
            out[ix.pair(a, b)] = reduce_mod(carry, m);
        }
    return out;
}

std::vector<Int> H2Presentation::representative(int j) const {
    std::vector<Int> v(pairs);
    for (const auto& [i, val] : cocycles.col(j)) v[i] = val;
    for (auto& x : v) x = reduce_mod(x, modulus);
    return v;
}

H2Presentation h2_units_mod(const FiniteGroup& g, const Int& m, linalg::Exec exec) {
    const int n = g.order();
    CochainIndex ix(g);
    const int d1 = ix.n1, d2 = d1 * d1;

    H2Presentation h;
    h.fingerprint = g.fingerprint();
    h.modulus = m;
    h.pairs = d2;

    if (n == 1) {
        h.cocycles = linalg::LatticeBasis(0);
        h.presentation = abelian::PresentedAbelian::free_group(0);
        return h;
    }

    Sparse d2mat = coboundary_matrix(g, 2, m);
    h.cocycles = linalg::lattice_from(d2, linalg::kernel_mod(d2mat, m, exec), m);

    // relation vectors: m*e_i, coboundaries of 1-cochains, Bockstein cocycles
    Sparse d1mat = coboundary_matrix(g, 1, m);
    std::vector<std::vector<Int>> rels;
    for (int i = 0; i < d2; ++i) {
        std::vector<Int> v(d2);
        v[i] = m;
        rels.push_back(std::move(v));
    }
    for (int c = 0; c < d1; ++c) {
        std::vector<Int> v(d2);
        for (int r = 0; r < d1mat.rows; ++r)
            for (const auto& [cc, val] : d1mat.row[r])
                if (cc == c) v[r] = val;
        rels.push_back(std::move(v));
    }
    for (const SpVec& hom : linalg::kernel_mod(d1mat, m, exec)) {
        std::vector<Int> chi(n);
        auto dense = linalg::sp_to_dense(hom, d1);
        for (int i = 0; i < d1; ++i) chi[ix.elems[i]] = dense[i];
        rels.push_back(bockstein_cocycle(g, chi, m));
    }

    const int gens = h.cocycles.size();
    Dense rel(gens, static_cast<int>(rels.size()));
    for (size_t c = 0; c < rels.size(); ++c) {
        std::vector<Int> coeff;
        if (!h.cocycles.try_solve(linalg::sp_from_dense(rels[c]), coeff))
            fail(Err::Internal, "relation vector is not a mod-m cocycle");
        for (int r = 0; r < gens; ++r) rel.at(r, static_cast<int>(c)) = coeff[r];
    }
    h.presentation = abelian::PresentedAbelian{gens, std::move(rel)};
    return h;
}

H2Presentation h2_units(const FiniteGroup& g, int cap, linalg::Exec exec) {
    if (g.order() > cap)
        fail(Err::CapExceeded, "group order " + std::to_string(g.order()) +
                                   " exceeds the cohomology cap " + std::to_string(cap) +
                                   " (raise it explicitly to proceed)");
    return h2_units_mod(g, Int(g.order()), exec);
}

abelian::FGAbelian h2_canonical(const H2Presentation& h, linalg::Exec exec) {
    return abelian::canonicalize(h.presentation, exec);
}

Dense restriction_matrix(const FiniteGroup& g, const Subgroup& sub, const H2Presentation& hg,
                         const H2Presentation& ha) {
    if (hg.modulus != ha.modulus)
        fail(Err::ValidationFailed, "restriction requires matching moduli");
    FiniteGroup a = groups::subgroup_as_group(g, sub);
    if (a.fingerprint() != ha.fingerprint)
        fail(Err::ValidationFailed, "subgroup presentation does not match the given subgroup");
    CochainIndex gx(g);
    CochainIndex ax(a);

    Dense out(ha.presentation.generators, hg.presentation.generators);
    for (int j = 0; j < hg.presentation.generators; ++j) {
        std::vector<Int> rep = hg.representative(j);
        std::vector<Int> restricted(static_cast<size_t>(ax.n1) * ax.n1);
        for (int i = 0; i < ax.n1; ++i)
            for (int k = 0; k < ax.n1; ++k) {
                const int pa = sub.members[ax.elems[i]], pb = sub.members[ax.elems[k]];
                restricted[ax.pair(ax.elems[i], ax.elems[k])] = rep[gx.pair(pa, pb)];
            }
        std::vector<Int> coeff;
        if (!ha.cocycles.try_solve(linalg::sp_from_dense(restricted), coeff))
            fail(Err::ExpressFailed, "restricted cocycle not expressible in the subgroup lattice");
        for (int r = 0; r < ha.presentation.generators; ++r) out.at(r, j) = coeff[r];
    }
    return out;
}

const H2Presentation& H2Cache::get(const FiniteGroup& g, const Int& m, linalg::Exec exec) {
    auto key = std::make_pair(g.fingerprint(), m);
    auto it = store_.find(key);
    if (it == store_.end()) it = store_.emplace(key, h2_units_mod(g, m, exec)).first;
    return it->second;
}

abelian::FGAbelian bogomolov_over_subgroups(const FiniteGroup& g,
                                            const std::vector<Subgroup>& subs,
                                            const BogomolovOptions& opts) {
    if (g.order() > opts.cap)
        fail(Err::CapExceeded, "group order " + std::to_string(g.order()) +
                                   " exceeds the cohomology cap " + std::to_string(opts.cap) +
                                   " (raise it explicitly to proceed)");
    const Int m = g.order();
    H2Cache local;
    H2Cache& cache = opts.cache ? *opts.cache : local;
    const H2Presentation& hg = cache.get(g, m, opts.exec);

    // stacked restriction map into the direct sum of the subgroup H^2's
    std::vector<const H2Presentation*> has;
    std::vector<Dense> blocks;
    int total_gens = 0, total_rels = 0;
    for (const Subgroup& sub : subs) {
        FiniteGroup a = groups::subgroup_as_group(g, sub);
        const H2Presentation& ha = cache.get(a, m, opts.exec);
        blocks.push_back(restriction_matrix(g, sub, hg, ha));
        has.push_back(&ha);
        total_gens += ha.presentation.generators;
        total_rels += ha.presentation.relations.cols;
    }

    Dense f(total_gens, hg.presentation.generators);
    abelian::PresentedAbelian cod{total_gens, Dense(total_gens, total_rels)};
    int row0 = 0, rel0 = 0;
    for (size_t i = 0; i < blocks.size(); ++i) {
        const Dense& b = blocks[i];
        for (int r = 0; r < b.rows; ++r)
            for (int c = 0; c < b.cols; ++c) f.at(row0 + r, c) = b.at(r, c);
        const Dense& rel = has[i]->presentation.relations;
        for (int r = 0; r < rel.rows; ++r)
            for (int c = 0; c < rel.cols; ++c) cod.relations.at(row0 + r, rel0 + c) = rel.at(r, c);
        row0 += b.rows;
        rel0 += rel.cols;
    }

    abelian::FGAbelian b0 = abelian::kernel_of_presented_hom(hg.presentation, cod, f, opts.exec, m);
    if (b0.rank != 0) fail(Err::Internal, "Bogomolov multiplier came out infinite");
    return b0;
}

abelian::FGAbelian bogomolov_multiplier(const FiniteGroup& g, const BogomolovOptions& opts) {
    return bogomolov_over_subgroups(g, groups::maximal_abelian_subgroups(g), opts);
}

}  // namespace ekedahl::cohom
