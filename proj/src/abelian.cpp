#include "ekedahl/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ekedahl/errors.hpp"

namespace ekedahl::abelian {

using linalg::Dense;
using linalg::SpVec;

Int FGAbelian::order() const {
    if (rank != 0) fail(Err::NotFinite, "order of an infinite group");
    Int o = 1;
    for (const Int& d : invariant_factors) o *= d;
    return o;
}

std::string FGAbelian::str() const {
    if (trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank == 1) {
        os << "Z";
        first = false;
    } else if (rank > 1) {
        os << "Z^" << rank;
        first = false;
    }
    for (const Int& d : invariant_factors) {
        if (!first) os << " + ";
        os << "Z/" << to_string(d);
        first = false;
    }
    return os.str();
}

FGAbelian fg_make(int rank, std::vector<Int> factors) {
    if (rank < 0) fail(Err::ValidationFailed, "negative rank");
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 2) fail(Err::ValidationFailed, "invariant factor < 2");
        if (i > 0 && !divides(factors[i - 1], factors[i]))
            fail(Err::ValidationFailed, "invariant factors violate the divisibility chain");
    }
    return {rank, std::move(factors)};
}

FGAbelian fg_direct_sum(const FGAbelian& a, const FGAbelian& b) {
    // merge prime-power multisets, then rebuild the divisibility chain
    std::map<Int, std::vector<int>> exps;  // prime -> exponents, unsorted
    auto collect = [&](const FGAbelian& g) {
        for (const Int& d : g.invariant_factors)
            for (const auto& [p, e] : factorize(d)) exps[p].push_back(e);
    };
    collect(a);
    collect(b);
    size_t layers = 0;
    for (auto& [p, es] : exps) {
        std::sort(es.begin(), es.end(), std::greater<int>());
        layers = std::max(layers, es.size());
    }
    std::vector<Int> factors;
    for (size_t j = 0; j < layers; ++j) {
        Int d = 1;
        for (const auto& [p, es] : exps)
            if (j < es.size()) {
                Int pw;
                mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), es[j]);
                d *= pw;
            }
        factors.push_back(d);
    }
    std::reverse(factors.begin(), factors.end());
    return {a.rank + b.rank, std::move(factors)};
}

PresentedAbelian PresentedAbelian::of(const FGAbelian& a) {
    const int k = static_cast<int>(a.invariant_factors.size());
    PresentedAbelian p{a.rank + k, Dense(a.rank + k, k)};
    for (int i = 0; i < k; ++i) p.relations.at(i, i) = a.invariant_factors[i];
    return p;
}

FGAbelian canonicalize(const PresentedAbelian& p, linalg::Exec exec) {
    if (p.generators == 0) return {};
    auto snf = linalg::smith_normal_form(p.relations, {.exec = exec});
    std::vector<Int> factors;
    for (const Int& d : snf.diag)
        if (d >= 2) factors.push_back(d);
    return {p.generators - snf.rank, std::move(factors)};
}

namespace {

std::vector<Int> column_of(const Dense& m, int c) {
    std::vector<Int> col(m.rows);
    for (int r = 0; r < m.rows; ++r) col[r] = m.at(r, c);
    return col;
}

linalg::LatticeBasis relation_lattice(const PresentedAbelian& p, const Int& conductor = 0) {
    std::vector<SpVec> gens;
    gens.reserve(p.relations.cols);
    for (int c = 0; c < p.relations.cols; ++c) gens.push_back(linalg::sp_from_dense(column_of(p.relations, c)));
    return linalg::lattice_from(p.generators, gens, conductor);
}

}  // namespace

FGAbelian kernel_of_presented_hom(const PresentedAbelian& dom, const PresentedAbelian& cod,
                                  const Dense& map, linalg::Exec exec, const Int& conductor) {
    if (map.rows != cod.generators || map.cols != dom.generators)
        fail(Err::ValidationFailed, "map shape does not match the presentations");

    linalg::LatticeBasis rcod = relation_lattice(cod, conductor);
    for (int c = 0; c < dom.relations.cols; ++c) {
        auto img = linalg::mat_vec(map, column_of(dom.relations, c));
        if (!rcod.contains(linalg::sp_from_dense(img)))
            fail(Err::NotAHomomorphism,
                 "relation " + std::to_string(c) + " is not carried into the codomain relations");
    }

    // L' = { x : map x in span(cod relations) }
    linalg::Sparse fmat(cod.generators, dom.generators);
    for (int r = 0; r < cod.generators; ++r)
        for (int c = 0; c < dom.generators; ++c)
            if (sign(map.at(r, c)) != 0) fmat.row[r].emplace_back(c, map.at(r, c));
    std::vector<SpVec> span_cols;
    span_cols.reserve(cod.relations.cols);
    for (int c = 0; c < cod.relations.cols; ++c)
        span_cols.push_back(linalg::sp_from_dense(column_of(cod.relations, c)));
    auto xparts = linalg::kernel_into_span(fmat, span_cols, conductor);
    linalg::LatticeBasis lat = linalg::lattice_from(dom.generators, xparts, conductor);
    if (lat.size() == 0) return {};

    Dense rel(lat.size(), dom.relations.cols);
    for (int c = 0; c < dom.relations.cols; ++c) {
        std::vector<Int> coeff;
        if (!lat.try_solve(linalg::sp_from_dense(column_of(dom.relations, c)), coeff))
            fail(Err::Internal, "domain relation escaped the kernel lattice");
        for (int r = 0; r < lat.size(); ++r) rel.at(r, c) = coeff[r];
    }
    return canonicalize({lat.size(), std::move(rel)}, exec);
}

bool presented_hom_equal(const PresentedAbelian& cod, const Dense& f, const Dense& g) {
    if (f.rows != g.rows || f.cols != g.cols || f.rows != cod.generators) return false;
    linalg::LatticeBasis rcod = relation_lattice(cod);
    for (int c = 0; c < f.cols; ++c) {
        std::vector<Int> diff(f.rows);
        for (int r = 0; r < f.rows; ++r) diff[r] = f.at(r, c) - g.at(r, c);
        if (!rcod.contains(linalg::sp_from_dense(diff))) return false;
    }
    return true;
}

FGAbelian pontryagin_dual(const FGAbelian& a) {
    if (a.rank != 0) fail(Err::NotFinite, "pontryagin dual requires a finite group");
    return a;  // finite abelian groups are non-canonically self-dual
}

// --- L0(Ab) ---------------------------------------------------------------

Int L0Label::q() const {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), a);
    return pw;
}

namespace {
// Z sorts before all torsion labels; torsion labels by (p, a).
int label_cmp(const L0Label& x, const L0Label& y) {
    if (x.is_z != y.is_z) return x.is_z ? -1 : 1;
    if (x.is_z) return 0;
    if (x.p != y.p) return x.p < y.p ? -1 : 1;
    return x.a - y.a;
}
}  // namespace

bool operator<(const L0Label& x, const L0Label& y) { return label_cmp(x, y) < 0; }
bool operator==(const L0Label& x, const L0Label& y) { return label_cmp(x, y) == 0; }

L0AbElement L0AbElement::z_class(Int coeff) {
    L0AbElement e;
    e.add(L0Label{true, 0, 0}, coeff);
    return e;
}

void L0AbElement::add(const L0Label& label, const Int& coeff) {
    if (sign(coeff) == 0) return;
    auto it = coeff_.find(label);
    if (it == coeff_.end()) {
        coeff_.emplace(label, coeff);
    } else {
        it->second += coeff;
        if (sign(it->second) == 0) coeff_.erase(it);
    }
}

Int L0AbElement::z_coefficient() const {
    auto it = coeff_.find(L0Label{true, 0, 0});
    return it == coeff_.end() ? Int(0) : it->second;
}

L0AbElement& L0AbElement::operator+=(const L0AbElement& o) {
    for (const auto& [l, c] : o.coeff_) add(l, c);
    return *this;
}

L0AbElement& L0AbElement::operator-=(const L0AbElement& o) {
    for (const auto& [l, c] : o.coeff_) add(l, -c);
    return *this;
}

L0AbElement L0AbElement::operator+(const L0AbElement& o) const {
    L0AbElement r = *this;
    r += o;
    return r;
}

L0AbElement L0AbElement::operator-(const L0AbElement& o) const {
    L0AbElement r = *this;
    r -= o;
    return r;
}

L0AbElement L0AbElement::operator*(const Int& k) const {
    L0AbElement r;
    if (sign(k) == 0) return r;
    for (const auto& [l, c] : coeff_) r.add(l, c * k);
    return r;
}

std::string L0AbElement::str() const {
    if (coeff_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : coeff_) {
        Int mag = int_abs(c);
        if (first) {
            if (sign(c) < 0) os << "-";
        } else {
            os << (sign(c) < 0 ? " - " : " + ");
        }
        if (mag != 1) os << to_string(mag);
        os << (l.is_z ? "Z" : "Z/" + to_string(l.q()));
        first = false;
    }
    return os.str();
}

L0AbElement L0AbElement::parse(const std::string& text) {
    L0AbElement out;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i < text.size() && text[i] == '0') {
        ++i;
        skip_ws();
        if (i == text.size()) return out;
        fail(Err::SyntaxError, "unexpected text after 0 in L0 expression");
    }
    bool first = true;
    while (i < text.size()) {
        skip_ws();
        Int s = 1;
        if (text[i] == '+' || text[i] == '-') {
            s = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            fail(Err::SyntaxError, "expected + or - in L0 expression at position " + std::to_string(i));
        }
        Int mag = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            mag = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                mag = mag * 10 + (text[i++] - '0');
        }
        if (i >= text.size() || text[i] != 'Z')
            fail(Err::SyntaxError, "expected Z token in L0 expression at position " + std::to_string(i));
        ++i;
        if (i < text.size() && text[i] == '/') {
            ++i;
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                fail(Err::SyntaxError, "expected prime power after Z/");
            Int q = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                q = q * 10 + (text[i++] - '0');
            auto f = factorize(q);
            if (f.size() != 1)
                fail(Err::SyntaxError, "Z/" + to_string(q) + " is not a prime power label");
            out.add(L0Label{false, f[0].first, f[0].second}, s * mag);
        } else {
            out.add(L0Label{true, 0, 0}, s * mag);
        }
        first = false;
        skip_ws();
    }
    return out;
}

L0AbElement l0_class_of(const FGAbelian& a) {
    L0AbElement e;
    if (a.rank > 0) e.add(L0Label{true, 0, 0}, Int(a.rank));
    for (const Int& d : a.invariant_factors)
        for (const auto& [p, exp] : factorize(d)) e.add(L0Label{false, p, exp}, 1);
    return e;
}

}  // namespace ekedahl::abelian
