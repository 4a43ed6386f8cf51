// Finite groups as validated multiplication tables, plus the subgroup
// machinery needed by the Bogomolov kernel intersection.
#pragma once

#include <string>
#include <vector>

namespace ekedahl::groups {

// Cap on constructed group orders; permutation closures and builtin
// constructors refuse to go past it unless the caller raises it.
inline constexpr int kDefaultOrderCap = 4096;

class FiniteGroup {
public:
    // Validating constructor: table must be a Latin square with a two-sided
    // identity and associative products. Errors name the offending row/triple.
    static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                  std::vector<std::string> names = {});

    // Closure of one-line permutations under composition, breadth-first from
    // the identity with generators in input order.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators, int degree,
                                         int cap = kDefaultOrderCap);

    int order() const { return order_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
    int inverse(int a) const { return inverse_[a]; }
    int identity() const { return identity_; }
    bool abelian() const { return abelian_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<int>& table() const { return table_; }

    // sha256 of the canonical table serialization; names do not contribute.
    const std::string& fingerprint() const { return fingerprint_; }

    // Builtin constructor tag ("cyclic 4", "symmetric 3", ...); empty for
    // user-supplied tables. Catalog matching keys on this, never on
    // isomorphism testing.
    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    // Trusted constructor: table must already satisfy the group axioms.
    // Builtins and closures use this; external input goes through from_table.
    static FiniteGroup from_validated(std::vector<int> table, int order, std::vector<std::string> names);

private:
    FiniteGroup() = default;

    int order_ = 0;
    int identity_ = 0;
    bool abelian_ = true;
    std::vector<int> table_;  // row-major order x order
    std::vector<int> inverse_;
    std::vector<std::string> names_;
    std::string fingerprint_;
    std::string provenance_;
};

// Member indices into a parent group, sorted; closed under product and
// inverse, contains the identity.
struct Subgroup {
    std::vector<int> members;
    int order() const { return static_cast<int>(members.size()); }
    bool operator==(const Subgroup& o) const = default;
};

// Builtin catalog. Spec strings: "cyclic n", "dihedral n", "symmetric n",
// "quaternion8", "elementary_abelian p k", "heisenberg p",
// "direct_product(<spec>, <spec>)".
FiniteGroup builtin_group(const std::string& spec, int cap = kDefaultOrderCap);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, int cap = kDefaultOrderCap);

Subgroup centralizer(const FiniteGroup& g, const std::vector<int>& s);
Subgroup subgroup_closure(const FiniteGroup& g, std::vector<int> seed);
bool is_abelian_subset(const FiniteGroup& g, const std::vector<int>& members);

// Abelian subgroups maximal under inclusion; each satisfies
// A == centralizer(G, A). Sorted by (order, member list).
std::vector<Subgroup> maximal_abelian_subgroups(const FiniteGroup& g);

// Every subgroup, by closure-extension breadth-first search. Brute-force
// oracle scale (|G| <= 24 in the tests).
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

// The subgroup as a standalone group; element i corresponds to
// sub.members[i] in the parent. Names are inherited.
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& sub);

}  // namespace ekedahl::groups
