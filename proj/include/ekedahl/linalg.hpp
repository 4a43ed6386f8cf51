// Exact integer linear algebra: Smith normal form, kernel lattices and
// Hermite-style eliminations. The update loops are the hot kernels of the
// whole toolkit; they run under OpenMP by default and every routine accepts
// exec=Exec::serial for the reference path.
#pragma once

#include <utility>
#include <vector>

#include "ekedahl/ints.hpp"

namespace ekedahl::linalg {

enum class Exec { serial, parallel };

// Row-major dense matrix.
struct Dense {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    Dense() = default;
    Dense(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Dense identity(int n);
    bool operator==(const Dense& o) const = default;
};

Dense mat_mul(const Dense& x, const Dense& y, Exec exec = Exec::parallel);
std::vector<Int> mat_vec(const Dense& m, const std::vector<Int>& x);
Int det(Dense m);  // fraction-free Gauss-Bareiss; used to check unimodularity

// Sparse vector: (index, value) pairs sorted by index, values nonzero.
using SpVec = std::vector<std::pair<int, Int>>;

SpVec sp_axpy(const SpVec& x, const Int& c, const SpVec& y);  // x + c*y
SpVec sp_from_dense(const std::vector<Int>& v);
std::vector<Int> sp_to_dense(const SpVec& v, int dim);

// Sparse matrix as a list of sparse rows.
struct Sparse {
    int rows = 0;
    int cols = 0;
    std::vector<SpVec> row;

    Sparse() = default;
    Sparse(int r, int c) : rows(r), cols(c), row(r) {}
};

Sparse sparse_from_dense(const Dense& d);
Dense dense_from_sparse(const Sparse& s);
std::vector<Int> sparse_apply(const Sparse& m, const std::vector<Int>& x);

struct SnfOptions {
    bool want_u = false;
    bool want_v = false;
    Exec exec = Exec::parallel;
};

// u * input * v = diag(d), d[0] | d[1] | ..., all d >= 0.
struct Snf {
    std::vector<Int> diag;  // length min(rows, cols)
    int rank = 0;           // number of nonzero diagonal entries
    Dense u, v;             // filled only when requested
};

Snf smith_normal_form(Dense m, const SnfOptions& opt = {});

// Unimodular row reduction to row-echelon form; zero rows are dropped.
// Row operations only, so both {x : Mx = 0} and {x : Mx = 0 mod q} are
// preserved. The workhorse preprocessing step for tall coboundary matrices.
Sparse hermite_row_reduce(Sparse m, Exec exec = Exec::parallel);

// Echelonized basis of a sublattice of Z^dim. Columns are sorted by lead
// (first nonzero) row; leads are strictly increasing, which makes membership
// tests exact forward substitutions.
//
// A nonzero conductor q asserts that the lattice contains q*Z^dim; the basis
// is then seeded with the q*identity columns and entries are kept reduced
// modulo q. The reduction of entries below a lead is span-preserving: solving
// q*e_r forward only ever involves columns whose lead is >= r, and those are
// exactly the columns such a reduction leaves untouched.
class LatticeBasis {
public:
    explicit LatticeBasis(int dim = 0, Int conductor = 0);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(cols_.size()); }
    const SpVec& col(int j) const { return cols_[j]; }
    const std::vector<int>& leads() const { return leads_; }
    const Int& conductor() const { return conductor_; }

    void insert(SpVec g);

    // Hermite-style normalization of entries at later pivot rows.
    void size_reduce();

    // Coefficients c with sum_j c[j] * col(j) == g, if g lies in the lattice.
    bool try_solve(const SpVec& g, std::vector<Int>& coeff) const;
    bool contains(const SpVec& g) const;

private:
    int dim_;
    Int conductor_;
    std::vector<SpVec> cols_;
    std::vector<int> leads_;
};

LatticeBasis lattice_from(int dim, const std::vector<SpVec>& gens, Int conductor = 0);

// Basis of { x in Z^cols : M x = 0 }.
std::vector<SpVec> kernel(const Sparse& m, Exec exec = Exec::parallel);

// Generators of the full-rank lattice { x in Z^cols : M x = 0 (mod q) }, q >= 1.
std::vector<SpVec> kernel_mod(const Sparse& m, const Int& q, Exec exec = Exec::parallel);

// Generators of { x : M x in span(span_cols) }; a nonzero conductor q asserts
// q*Z^rows lies in the span and q*Z^cols in the result, and bounds the
// intermediate arithmetic accordingly.
std::vector<SpVec> kernel_into_span(const Sparse& m, const std::vector<SpVec>& span_cols,
                                    const Int& conductor = 0);

namespace ref {
// Textbook serial Smith normal form, kept as the reference implementation
// the OpenMP kernels are tested against.
Snf smith_normal_form(Dense m, bool want_u = false, bool want_v = false);
}  // namespace ref

}  // namespace ekedahl::linalg
