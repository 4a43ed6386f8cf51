#include "ekedahl/linalg.hpp"

#include <algorithm>
#include <cassert>

#include "ekedahl/errors.hpp"

namespace ekedahl::linalg {

Dense Dense::identity(int n) {
    Dense d(n, n);
    for (int i = 0; i < n; ++i) d.at(i, i) = 1;
    return d;
}

Dense mat_mul(const Dense& x, const Dense& y, Exec exec) {
    assert(x.cols == y.rows);
    Dense r(x.rows, y.cols);
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic) if (par)
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const Int& xv = x.at(i, k);
            if (sign(xv) == 0) continue;
            for (int j = 0; j < y.cols; ++j) {
                const Int& yv = y.at(k, j);
                if (sign(yv) != 0) r.at(i, j) += xv * yv;
            }
        }
    }
    return r;
}

std::vector<Int> mat_vec(const Dense& m, const std::vector<Int>& x) {
    assert(static_cast<int>(x.size()) == m.cols);
    std::vector<Int> r(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (sign(m.at(i, j)) != 0 && sign(x[j]) != 0) r[i] += m.at(i, j) * x[j];
    return r;
}

// Fraction-free Gauss-Bareiss determinant.
Int det(Dense m) {
    if (m.rows != m.cols) fail(Err::Internal, "det: matrix not square");
    const int n = m.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sgn_flip = 1;
    for (int t = 0; t < n - 1; ++t) {
        if (sign(m.at(t, t)) == 0) {
            int p = -1;
            for (int r = t + 1; r < n; ++r)
                if (sign(m.at(r, t)) != 0) { p = r; break; }
            if (p < 0) return 0;
            for (int c = t; c < n; ++c) std::swap(m.at(t, c), m.at(p, c));
            sgn_flip = -sgn_flip;
        }
        for (int r = t + 1; r < n; ++r) {
            for (int c = t + 1; c < n; ++c)
                m.at(r, c) = divexact(m.at(t, t) * m.at(r, c) - m.at(r, t) * m.at(t, c), prev);
            m.at(r, t) = 0;
        }
        prev = m.at(t, t);
    }
    return sgn_flip * m.at(n - 1, n - 1);
}

SpVec sp_axpy(const SpVec& x, const Int& c, const SpVec& y) {
    if (sign(c) == 0) return x;
    SpVec r;
    r.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            r.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            r.emplace_back(y[j].first, c * y[j].second);
            ++j;
        } else {
            Int v = x[i].second + c * y[j].second;
            if (sign(v) != 0) r.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return r;
}

SpVec sp_from_dense(const std::vector<Int>& v) {
    SpVec r;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (sign(v[i]) != 0) r.emplace_back(i, v[i]);
    return r;
}

std::vector<Int> sp_to_dense(const SpVec& v, int dim) {
    std::vector<Int> r(dim);
    for (const auto& [i, val] : v) r[i] = val;
    return r;
}

Sparse sparse_from_dense(const Dense& d) {
    Sparse s(d.rows, d.cols);
    for (int r = 0; r < d.rows; ++r)
        for (int c = 0; c < d.cols; ++c)
            if (sign(d.at(r, c)) != 0) s.row[r].emplace_back(c, d.at(r, c));
    return s;
}

Dense dense_from_sparse(const Sparse& s) {
    Dense d(s.rows, s.cols);
    for (int r = 0; r < s.rows; ++r)
        for (const auto& [c, v] : s.row[r]) d.at(r, c) = v;
    return d;
}

std::vector<Int> sparse_apply(const Sparse& m, const std::vector<Int>& x) {
    assert(static_cast<int>(x.size()) == m.cols);
    std::vector<Int> r(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [c, v] : m.row[i])
            if (sign(x[c]) != 0) r[i] += v * x[c];
    return r;
}

namespace {

// abs-value comparison without temporaries
int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

struct SnfWork {
    Dense m;
    Dense u, v;
    bool want_u, want_v;
    bool par;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
        if (want_u)
            for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
        if (want_v)
            for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    }
    void negate_row(int i) {
        for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
        if (want_u)
            for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    }
    // row_r -= q * row_t, starting at column c0 of m
    void row_sub(int r, const Int& q, int t, int c0) {
        for (int c = c0; c < m.cols; ++c)
            if (sign(m.at(t, c)) != 0) m.at(r, c) -= q * m.at(t, c);
        if (want_u)
            for (int c = 0; c < u.cols; ++c)
                if (sign(u.at(t, c)) != 0) u.at(r, c) -= q * u.at(t, c);
    }
    // col_c -= q * col_t, starting at row r0 of m
    void col_sub(int c, const Int& q, int t, int r0) {
        for (int r = r0; r < m.rows; ++r)
            if (sign(m.at(r, t)) != 0) m.at(r, c) -= q * m.at(r, t);
        if (want_v)
            for (int r = 0; r < v.rows; ++r)
                if (sign(v.at(r, t)) != 0) v.at(r, c) -= q * v.at(r, t);
    }
};

}  // namespace

Snf smith_normal_form(Dense input, const SnfOptions& opt) {
    const int rows = input.rows, cols = input.cols;
    SnfWork w{std::move(input),
              opt.want_u ? Dense::identity(rows) : Dense(),
              opt.want_v ? Dense::identity(cols) : Dense(),
              opt.want_u,
              opt.want_v,
              opt.exec == Exec::parallel};
    Dense& m = w.m;
    const int nd = std::min(rows, cols);

    int t = 0;
    while (t < nd) {
        // initial pivot: entry of least absolute value in the trailing block;
        // a unit entry ends the scan immediately (the usual case here)
        int pr = -1, pc = -1;
        for (int r = t; r < rows && !(pr >= 0 && cmpabs(m.at(pr, pc), Int(1)) == 0); ++r)
            for (int c = t; c < cols; ++c) {
                if (sign(m.at(r, c)) == 0) continue;
                if (pr < 0 || cmpabs(m.at(r, c), m.at(pr, pc)) < 0) {
                    pr = r;
                    pc = c;
                    if (cmpabs(m.at(r, c), Int(1)) == 0) break;
                }
            }
        if (pr < 0) break;  // trailing block is zero
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        for (;;) {
            // clear column t
            bool col_clear = true;
            for (;;) {
                std::vector<int> targets;
                for (int r = t + 1; r < rows; ++r)
                    if (sign(m.at(r, t)) != 0) targets.push_back(r);
                if (targets.empty()) break;
                std::vector<Int> qs(targets.size());
                for (size_t i = 0; i < targets.size(); ++i)
                    qs[i] = ndiv_q(m.at(targets[i], t), m.at(t, t));
#pragma omp parallel for schedule(dynamic) if (w.par)
                for (long i = 0; i < static_cast<long>(targets.size()); ++i)
                    if (sign(qs[i]) != 0) w.row_sub(targets[i], qs[i], t, t);
                // remainders are strictly smaller than the pivot; promote the least
                int best = t;
                for (int r = t + 1; r < rows; ++r)
                    if (sign(m.at(r, t)) != 0 && cmpabs(m.at(r, t), m.at(best, t)) < 0) best = r;
                if (best == t) {
                    bool done = true;
                    for (int r = t + 1; r < rows; ++r)
                        if (sign(m.at(r, t)) != 0) { done = false; break; }
                    if (done) break;
                } else {
                    w.swap_rows(t, best);
                }
            }
            // clear row t
            for (;;) {
                std::vector<int> targets;
                for (int c = t + 1; c < cols; ++c)
                    if (sign(m.at(t, c)) != 0) targets.push_back(c);
                if (targets.empty()) break;
                std::vector<Int> qs(targets.size());
                for (size_t i = 0; i < targets.size(); ++i)
                    qs[i] = ndiv_q(m.at(t, targets[i]), m.at(t, t));
#pragma omp parallel for schedule(dynamic) if (w.par)
                for (long i = 0; i < static_cast<long>(targets.size()); ++i)
                    if (sign(qs[i]) != 0) w.col_sub(targets[i], qs[i], t, t);
                int best = -1;
                for (int c = t + 1; c < cols; ++c)
                    if (sign(m.at(t, c)) != 0 && (best < 0 || cmpabs(m.at(t, c), m.at(t, best)) < 0))
                        best = c;
                if (best < 0) break;
                if (cmpabs(m.at(t, best), m.at(t, t)) < 0) w.swap_cols(t, best);
            }
            // column ops may have refilled column t
            for (int r = t + 1; r < rows; ++r)
                if (sign(m.at(r, t)) != 0) { col_clear = false; break; }
            if (!col_clear) continue;

            // divisibility: d_t must divide the whole trailing block
            int br = -1, bc = -1;
            for (int r = t + 1; r < rows && br < 0; ++r)
                for (int c = t + 1; c < cols; ++c)
                    if (!divides(m.at(t, t), m.at(r, c))) { br = r; bc = c; break; }
            if (br < 0) break;
            w.row_sub(t, Int(-1), br, t + 1);  // row_t += row_br (columns > t; col t of br is 0)
            if (w.want_u)
                ;  // row_sub already updated u
        }
        if (sign(m.at(t, t)) < 0) w.negate_row(t);
        ++t;
    }

    Snf out;
    out.diag.resize(nd);
    for (int i = 0; i < nd; ++i) out.diag[i] = m.at(i, i);
    out.rank = t;
    if (opt.want_u) out.u = std::move(w.u);
    if (opt.want_v) out.v = std::move(w.v);
    return out;
}

Sparse hermite_row_reduce(Sparse m, Exec exec) {
    const bool par = exec == Exec::parallel;
    std::vector<char> alive(m.rows, 1);
    std::vector<int> pivot_rows;

    auto value_at = [&](int r, int c) -> const Int* {
        const SpVec& row = m.row[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const std::pair<int, Int>& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) return &it->second;
        return nullptr;
    };

    for (int c = 0; c < m.cols; ++c) {
        std::vector<int> idx;
        for (int r = 0; r < m.rows; ++r)
            if (alive[r] && value_at(r, c)) idx.push_back(r);
        if (idx.empty()) continue;

        while (idx.size() > 1) {
            size_t p = 0;
            for (size_t i = 1; i < idx.size(); ++i)
                if (cmpabs(*value_at(idx[i], c), *value_at(idx[p], c)) < 0) p = i;
            const int prow = idx[p];
            const Int pval = *value_at(prow, c);
#pragma omp parallel for schedule(dynamic) if (par)
            for (long i = 0; i < static_cast<long>(idx.size()); ++i) {
                if (idx[i] == prow) continue;
                Int q = ndiv_q(*value_at(idx[i], c), pval);
                if (sign(q) != 0) m.row[idx[i]] = sp_axpy(m.row[idx[i]], -q, m.row[prow]);
            }
            std::vector<int> next;
            for (int r : idx)
                if (value_at(r, c)) next.push_back(r);
            idx.swap(next);
        }
        alive[idx[0]] = 0;
        pivot_rows.push_back(idx[0]);
    }

    Sparse out(static_cast<int>(pivot_rows.size()), m.cols);
    for (size_t i = 0; i < pivot_rows.size(); ++i) out.row[i] = std::move(m.row[pivot_rows[i]]);
    return out;
}

LatticeBasis::LatticeBasis(int dim, Int conductor) : dim_(dim), conductor_(std::move(conductor)) {
    if (sign(conductor_) != 0) {
        cols_.reserve(dim);
        leads_.reserve(dim);
        for (int i = 0; i < dim; ++i) {
            cols_.push_back({{i, conductor_}});
            leads_.push_back(i);
        }
    }
}

namespace {
// symmetric residue in (-q/2, q/2]
Int smod(const Int& v, const Int& q) {
    Int r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
    Int r2 = r * 2;
    if (r2 > q) r -= q;
    return r;
}
}  // namespace

void LatticeBasis::insert(SpVec g) {
    auto reduce_tail = [this](SpVec& v, size_t from) {
        if (sign(conductor_) == 0) return;
        SpVec out;
        out.reserve(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            if (i < from) {
                out.push_back(std::move(v[i]));
                continue;
            }
            Int r = smod(v[i].second, conductor_);
            if (sign(r) != 0) out.emplace_back(v[i].first, std::move(r));
        }
        v = std::move(out);
    };
    reduce_tail(g, 0);
    while (!g.empty()) {
        const int lead = g.front().first;
        auto it = std::lower_bound(leads_.begin(), leads_.end(), lead);
        if (it == leads_.end() || *it != lead) {
            if (sign(g.front().second) < 0)
                for (auto& [i, v] : g) v = -v;
            const auto pos = it - leads_.begin();
            leads_.insert(it, lead);
            cols_.insert(cols_.begin() + pos, std::move(g));
            return;
        }
        const auto j = it - leads_.begin();
        SpVec& c = cols_[j];
        const Int a = c.front().second;
        const Int b = g.front().second;
        if (divides(a, b)) {
            g = sp_axpy(g, -divexact(b, a), c);
            reduce_tail(g, 0);
            continue;
        }
        // unimodular 2x2 transform: [x y; -b/d a/d] sends (c,g) to (newc,newg)
        Int x, y;
        const Int d = int_gcdext(a, b, x, y);
        auto scaled = [](const SpVec& v, const Int& k) {
            SpVec r;
            if (sign(k) == 0) return r;
            r.reserve(v.size());
            for (const auto& [i, val] : v) r.emplace_back(i, k * val);
            return r;
        };
        SpVec newc = sp_axpy(scaled(c, x), y, g);
        SpVec newg = sp_axpy(scaled(g, divexact(a, d)), -divexact(b, d), c);
        reduce_tail(newc, 1);  // keep the lead entry exact
        reduce_tail(newg, 0);
        c = std::move(newc);
        g = std::move(newg);
    }
}

// Reduce entries sitting at later pivot rows; standard Hermite normalization,
// keeps basis entries from ballooning.
void LatticeBasis::size_reduce() {
    for (int j = static_cast<int>(cols_.size()) - 2; j >= 0; --j) {
        for (size_t i = j + 1; i < cols_.size(); ++i) {
            auto it = std::lower_bound(cols_[j].begin(), cols_[j].end(), leads_[i],
                                       [](const std::pair<int, Int>& e, int row) { return e.first < row; });
            if (it == cols_[j].end() || it->first != leads_[i]) continue;
            Int q = ndiv_q(it->second, cols_[i].front().second);
            if (sign(q) != 0) cols_[j] = sp_axpy(cols_[j], -q, cols_[i]);
        }
    }
}

bool LatticeBasis::try_solve(const SpVec& g, std::vector<Int>& coeff) const {
    coeff.assign(cols_.size(), Int(0));
    SpVec rem = g;
    for (size_t j = 0; j < cols_.size() && !rem.empty(); ++j) {
        if (rem.front().first < leads_[j]) return false;  // no column covers this row
        auto it = std::lower_bound(rem.begin(), rem.end(), leads_[j],
                                   [](const std::pair<int, Int>& e, int col) { return e.first < col; });
        if (it == rem.end() || it->first != leads_[j]) continue;
        const Int& pivot = cols_[j].front().second;
        if (!divides(pivot, it->second)) return false;
        Int q = divexact(it->second, pivot);
        rem = sp_axpy(rem, -q, cols_[j]);
        coeff[j] = std::move(q);
    }
    return rem.empty();
}

bool LatticeBasis::contains(const SpVec& g) const {
    std::vector<Int> c;
    return try_solve(g, c);
}

LatticeBasis lattice_from(int dim, const std::vector<SpVec>& gens, Int conductor) {
    LatticeBasis b(dim, std::move(conductor));
    for (const auto& g : gens) b.insert(g);
    b.size_reduce();
    return b;
}

namespace {

// Column echelonization of [M | extra | q*I] with the x-part of each tracked
// column combination recorded. Columns whose top reduces to zero yield
// generators of { x : M x in span(extra) (+ q*Z^rows) }. The extra and q*e_i
// columns carry no x-part, so their coefficients never enter the output.
//
// With a conductor q, both tops and x-parts are kept reduced symmetrically
// modulo q: a top changes by multiples of the untracked q*e_row columns, an
// x-part by multiples of q*e_i, which are emitted as generators alongside.
// This keeps every intermediate entry at q or below.
struct AugCol {
    SpVec top;  // remaining image coordinates
    SpVec x;    // combination of original columns (first `cols` coordinates)
};

void reduce_mod_sym(SpVec& v, const Int& q) {
    if (sign(q) == 0) return;
    SpVec out;
    out.reserve(v.size());
    for (auto& [i, val] : v) {
        Int r;
        mpz_mod(r.get_mpz_t(), val.get_mpz_t(), q.get_mpz_t());
        Int r2 = r * 2;
        if (r2 > q) r -= q;
        if (sign(r) != 0) out.emplace_back(i, std::move(r));
    }
    v = std::move(out);
}

std::vector<SpVec> kernel_generators(const Sparse& m, const Int& q,
                                     const std::vector<SpVec>& extra) {
    std::vector<AugCol> pending;
    {
        std::vector<SpVec> cols(m.cols);
        for (int r = 0; r < m.rows; ++r)
            for (const auto& [c, v] : m.row[r]) cols[c].emplace_back(r, v);
        for (int c = 0; c < m.cols; ++c) {
            reduce_mod_sym(cols[c], q);
            pending.push_back({std::move(cols[c]), {{c, Int(1)}}});
        }
    }
    for (const SpVec& e : extra) {
        SpVec top = e;
        reduce_mod_sym(top, q);
        pending.push_back({std::move(top), {}});
    }
    if (sign(q) != 0)
        for (int r = 0; r < m.rows; ++r) pending.push_back({{{r, q}}, {}});

    std::vector<AugCol> established(m.rows);  // slot per lead row
    std::vector<char> used(m.rows, 0);
    std::vector<SpVec> gens;

    auto scaled = [](const SpVec& v, const Int& k) {
        SpVec r;
        if (sign(k) == 0) return r;
        r.reserve(v.size());
        for (const auto& [i, val] : v) r.emplace_back(i, k * val);
        return r;
    };

    for (AugCol& colref : pending) {
        AugCol col = std::move(colref);
        while (!col.top.empty()) {
            const int lead = col.top.front().first;
            if (!used[lead]) {
                used[lead] = 1;
                established[lead] = std::move(col);
                col = {};
                break;
            }
            AugCol& est = established[lead];
            const Int a = est.top.front().second;
            const Int b = col.top.front().second;
            if (divides(a, b)) {
                const Int f = -divexact(b, a);
                col.top = sp_axpy(col.top, f, est.top);
                col.x = sp_axpy(col.x, f, est.x);
            } else {
                Int s, t;
                const Int d = int_gcdext(a, b, s, t);
                const Int alpha = divexact(a, d), beta = divexact(b, d);
                AugCol newest{sp_axpy(scaled(est.top, s), t, col.top),
                              sp_axpy(scaled(est.x, s), t, col.x)};
                AugCol newcol{sp_axpy(scaled(col.top, alpha), -beta, est.top),
                              sp_axpy(scaled(col.x, alpha), -beta, est.x)};
                reduce_mod_sym(newest.top, q);  // keeps the lead: gcd d divides q's residues
                reduce_mod_sym(newest.x, q);
                est = std::move(newest);
                col = std::move(newcol);
            }
            reduce_mod_sym(col.top, q);
            reduce_mod_sym(col.x, q);
        }
        if (col.top.empty() && !col.x.empty()) gens.push_back(std::move(col.x));
    }
    if (sign(q) != 0)
        for (int c = 0; c < m.cols; ++c) gens.push_back({{c, q}});
    return gens;
}

}  // namespace

std::vector<SpVec> kernel(const Sparse& m, Exec exec) {
    (void)exec;  // the echelon walk is inherently sequential
    return kernel_generators(m, Int(0), {});
}

std::vector<SpVec> kernel_mod(const Sparse& m, const Int& q, Exec exec) {
    (void)exec;
    if (q < 1) fail(Err::Internal, "kernel_mod: modulus must be >= 1");
    return kernel_generators(m, q, {});
}

std::vector<SpVec> kernel_into_span(const Sparse& m, const std::vector<SpVec>& span_cols,
                                    const Int& conductor) {
    return kernel_generators(m, conductor, span_cols);
}

namespace ref {

// Bezout-transform based elimination; one clean pass per entry.
Snf smith_normal_form(Dense m, bool want_u, bool want_v) {
    const int rows = m.rows, cols = m.cols;
    Dense u = want_u ? Dense::identity(rows) : Dense();
    Dense v = want_v ? Dense::identity(cols) : Dense();
    const int nd = std::min(rows, cols);

    auto kill_row_entry = [&](int t, int r) {
        // zero m(r,t) with a unimodular transform of rows t and r
        Int x, y;
        const Int g = int_gcdext(m.at(t, t), m.at(r, t), x, y);
        const Int alpha = divexact(m.at(t, t), g), beta = divexact(m.at(r, t), g);
        for (int c = 0; c < cols; ++c) {
            Int a = m.at(t, c), b = m.at(r, c);
            m.at(t, c) = x * a + y * b;
            m.at(r, c) = -beta * a + alpha * b;
        }
        if (want_u)
            for (int c = 0; c < rows; ++c) {
                Int a = u.at(t, c), b = u.at(r, c);
                u.at(t, c) = x * a + y * b;
                u.at(r, c) = -beta * a + alpha * b;
            }
    };
    auto kill_col_entry = [&](int t, int c) {
        Int x, y;
        const Int g = int_gcdext(m.at(t, t), m.at(t, c), x, y);
        const Int alpha = divexact(m.at(t, t), g), beta = divexact(m.at(t, c), g);
        for (int r = 0; r < rows; ++r) {
            Int a = m.at(r, t), b = m.at(r, c);
            m.at(r, t) = x * a + y * b;
            m.at(r, c) = -beta * a + alpha * b;
        }
        if (want_v)
            for (int r = 0; r < cols; ++r) {
                Int a = v.at(r, t), b = v.at(r, c);
                v.at(r, t) = x * a + y * b;
                v.at(r, c) = -beta * a + alpha * b;
            }
    };

    int t = 0;
    while (t < nd) {
        int pr = -1, pc = -1;
        for (int r = t; r < rows && pr < 0; ++r)
            for (int c = t; c < cols; ++c)
                if (sign(m.at(r, c)) != 0) { pr = r; pc = c; break; }
        if (pr < 0) break;
        if (pr != t)
            for (int c = 0; c < cols; ++c) std::swap(m.at(t, c), m.at(pr, c));
        if (want_u && pr != t)
            for (int c = 0; c < rows; ++c) std::swap(u.at(t, c), u.at(pr, c));
        if (pc != t)
            for (int r = 0; r < rows; ++r) std::swap(m.at(r, t), m.at(r, pc));
        if (want_v && pc != t)
            for (int r = 0; r < cols; ++r) std::swap(v.at(r, t), v.at(r, pc));

        for (;;) {
            for (int r = t + 1; r < rows; ++r)
                if (sign(m.at(r, t)) != 0) kill_row_entry(t, r);
            bool row_dirty = false;
            for (int c = t + 1; c < cols; ++c)
                if (sign(m.at(t, c)) != 0) { kill_col_entry(t, c); row_dirty = true; }
            bool col_dirty = false;
            for (int r = t + 1; r < rows; ++r)
                if (sign(m.at(r, t)) != 0) { col_dirty = true; break; }
            if (col_dirty) continue;
            (void)row_dirty;

            int br = -1, bc = -1;
            for (int r = t + 1; r < rows && br < 0; ++r)
                for (int c = t + 1; c < cols; ++c)
                    if (!divides(m.at(t, t), m.at(r, c))) { br = r; bc = c; break; }
            if (br < 0) break;
            (void)bc;
            for (int c = 0; c < cols; ++c) m.at(t, c) += m.at(br, c);
            if (want_u)
                for (int c = 0; c < rows; ++c) u.at(t, c) += u.at(br, c);
        }
        if (sign(m.at(t, t)) < 0) {
            for (int c = 0; c < cols; ++c) m.at(t, c) = -m.at(t, c);
            if (want_u)
                for (int c = 0; c < rows; ++c) u.at(t, c) = -u.at(t, c);
        }
        ++t;
    }

    Snf out;
    out.diag.resize(nd);
    for (int i = 0; i < nd; ++i) out.diag[i] = m.at(i, i);
    out.rank = t;
    if (want_u) out.u = std::move(u);
    if (want_v) out.v = std::move(v);
    return out;
}

}  // namespace ref

}  // namespace ekedahl::linalg
