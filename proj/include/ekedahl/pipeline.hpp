// Ekedahl invariants e_i(G): theorem constants, e_2 through the Bogomolov
// pipeline, evaluation of user-supplied resolution data, the stabilization
// bound, the triviality catalog, and the window solver.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekedahl/abelian.hpp"
#include "ekedahl/cohomology.hpp"
#include "ekedahl/group.hpp"
#include "ekedahl/vartab.hpp"

namespace ekedahl::pipeline {

// A decomposition {V^m/G} = {X} + sum_j n_j {X_j} into smooth proper classes:
// the main table is X (dimension m*n), the extras are strictly smaller.
struct ResolutionData {
    int rep_dimension = 0;  // n
    int copies = 0;         // m
    vartab::CohomologyTable main;
    std::vector<std::pair<Int, vartab::CohomologyTable>> extras;
};

void validate_resolution(const ResolutionData& data);

// Least m with floor(m/n) > i/2, i.e. n * (floor(i/2) + 1): past it the error
// classes of the limit argument sit too deep in the filtration to reach H^-i.
int m_bound(int i, int n);

// m_bound(i, n) - m when the supplied data is below the bound, else 0.
int stabilization_gap(const ResolutionData& data, int i);

// e_i = {H^(2mn-i)(X)} + sum_j n_j {H^(2mn-i)(X_j)}
abelian::L0AbElement ekedahl_from_resolution(const ResolutionData& data, int i);

enum class Provenance { TheoremConstant, BogomolovCorollary, ResolutionFormula, Catalog, WindowSolver };
const char* provenance_name(Provenance p);

// Unknown is a first-class outcome: value absent, note may explain.
struct InvariantResult {
    std::optional<abelian::L0AbElement> value;
    Provenance provenance = Provenance::TheoremConstant;
    std::string note;
};

struct CatalogEntry {
    int item = 0;  // 1..5 from the state-of-the-art list; 6 = Heisenberg-5 theorem
    std::string statement;
};

// certificate present only for proven-trivial families; annotation records
// conjectural notes that never count as results
struct CatalogInfo {
    std::optional<CatalogEntry> certificate;
    std::string annotation;
};

// Matches by constructor provenance, never by isomorphism testing. The
// assume_gl3 flag is the user's assertion of a GL_3(C) embedding.
CatalogInfo catalog_lookup(const groups::FiniteGroup& g, bool assume_gl3 = false);

struct EkedahlOptions {
    int cap = cohom::kDefaultCohomologyCap;
    linalg::Exec exec = linalg::Exec::parallel;
    bool assume_gl3 = false;
    cohom::H2Cache* cache = nullptr;
};

InvariantResult ekedahl_invariant(const groups::FiniteGroup& g, int i,
                                  const std::optional<ResolutionData>& data = std::nullopt,
                                  const EkedahlOptions& opts = {});

// Unique solution of the window equations
//   e_k + e_(k+2) + ... + e_(k+2(n-1)) = sums(k)
// under e_i = 0 for i < 0; verifies e_0 = {Z}, e_1 = 0 and all residual
// windows. Missing keys mean zero; the result maps i to nonzero e_i only.
std::map<int, abelian::L0AbElement> solve_from_projective_sums(
    const std::map<int, abelian::L0AbElement>& sums, int n);

}  // namespace ekedahl::pipeline
