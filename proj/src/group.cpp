#include "ekedahl/group.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_set>

#include "ekedahl/errors.hpp"
#include "ekedahl/ints.hpp"
#include "ekedahl/sha256.hpp"

namespace ekedahl::groups {

namespace {

std::string table_fingerprint(const std::vector<int>& table, int order) {
    std::ostringstream os;
    os << "group-table-v1\n" << order << "\n";
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            if (j) os << ' ';
            os << table[static_cast<size_t>(i) * order + j];
        }
        os << '\n';
    }
    const std::string s = os.str();
    return sha256_hex(s);
}

std::string cycle_notation(const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<char> seen(n, 0);
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (seen[i] || p[i] == i) continue;
        out += '(';
        int j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            if (!first) out += ' ';
            out += std::to_string(j);
            first = false;
            j = p[j];
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

// dynamic bitset helpers for subgroup enumeration
using Bits = std::vector<uint64_t>;

Bits bits_make(int n) { return Bits((n + 63) / 64, 0); }
void bits_set(Bits& b, int i) { b[i >> 6] |= uint64_t(1) << (i & 63); }
bool bits_get(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }

struct BitsHash {
    size_t operator()(const Bits& b) const {
        size_t h = 1469598103934665603ull;
        for (uint64_t w : b) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<int> bits_to_list(const Bits& b, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (bits_get(b, i)) out.push_back(i);
    return out;
}

}  // namespace

FiniteGroup FiniteGroup::from_validated(std::vector<int> table, int order,
                                        std::vector<std::string> names) {
    FiniteGroup g;
    g.order_ = order;
    g.table_ = std::move(table);

    int id = -1;
    for (int e = 0; e < order && id < 0; ++e) {
        bool ok = true;
        for (int j = 0; j < order && ok; ++j)
            ok = g.mul(e, j) == j && g.mul(j, e) == j;
        if (ok) id = e;
    }
    if (id < 0) fail(Err::NoIdentity, "no two-sided identity element");
    g.identity_ = id;

    g.inverse_.assign(order, -1);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (g.mul(a, b) == id) { g.inverse_[a] = b; break; }

    g.abelian_ = true;
    for (int a = 0; a < order && g.abelian_; ++a)
        for (int b = a + 1; b < order; ++b)
            if (g.mul(a, b) != g.mul(b, a)) { g.abelian_ = false; break; }

    if (names.empty()) {
        names.reserve(order);
        for (int i = 0; i < order; ++i) names.push_back("g" + std::to_string(i));
    }
    if (static_cast<int>(names.size()) != order)
        fail(Err::ValidationFailed, "names list length does not match group order");
    g.names_ = std::move(names);
    g.fingerprint_ = table_fingerprint(g.table_, order);
    return g;
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                    std::vector<std::string> names) {
    const int n = static_cast<int>(table.size());
    if (n == 0) fail(Err::NoIdentity, "empty table has no identity");
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[i].size()) != n)
            fail(Err::NotLatinSquare, "row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) {
            const int v = table[i][j];
            if (v < 0 || v >= n)
                fail(Err::NotLatinSquare, "entry out of range at row " + std::to_string(i) +
                                              ", column " + std::to_string(j));
            flat[static_cast<size_t>(i) * n + j] = v;
        }
    }
    // Latin square: rows and columns are permutations
    for (int i = 0; i < n; ++i) {
        std::vector<char> row_seen(n, 0), col_seen(n, 0);
        for (int j = 0; j < n; ++j) {
            if (row_seen[flat[static_cast<size_t>(i) * n + j]]++)
                fail(Err::NotLatinSquare, "repeated entry in row " + std::to_string(i));
            if (col_seen[flat[static_cast<size_t>(j) * n + i]]++)
                fail(Err::NotLatinSquare, "repeated entry in column " + std::to_string(i));
        }
    }
    // associativity; report the lexicographically first violating triple
    std::atomic<long> violation(-1);
#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const int ab = flat[static_cast<size_t>(a) * n + b];
                const int bc = flat[static_cast<size_t>(b) * n + c];
                if (flat[static_cast<size_t>(ab) * n + c] != flat[static_cast<size_t>(a) * n + bc]) {
                    long enc = (static_cast<long>(a) * n + b) * n + c;
                    long cur = violation.load();
                    while ((cur < 0 || enc < cur) && !violation.compare_exchange_weak(cur, enc)) {}
                }
            }
    }
    if (violation.load() >= 0) {
        long enc = violation.load();
        int c = static_cast<int>(enc % n), b = static_cast<int>((enc / n) % n),
            a = static_cast<int>(enc / n / n);
        fail(Err::NotAssociative, "associativity fails at triple (" + std::to_string(a) + ", " +
                                      std::to_string(b) + ", " + std::to_string(c) + ")");
    }
    return from_validated(std::move(flat), n, std::move(names));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators,
                                           int degree, int cap) {
    if (degree < 0) fail(Err::NotAPermutation, "negative degree");
    for (size_t k = 0; k < generators.size(); ++k) {
        const auto& p = generators[k];
        if (static_cast<int>(p.size()) != degree)
            fail(Err::NotAPermutation, "generator " + std::to_string(k) + " has wrong degree");
        std::vector<char> seen(degree, 0);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v]++)
                fail(Err::NotAPermutation, "generator " + std::to_string(k) + " is not a permutation");
        }
    }

    std::vector<int> id(degree);
    for (int i = 0; i < degree; ++i) id[i] = i;
    auto compose = [degree](const std::vector<int>& x, const std::vector<int>& y) {
        std::vector<int> r(degree);
        for (int i = 0; i < degree; ++i) r[i] = x[y[i]];  // (x*y)(i) = x(y(i))
        return r;
    };

    std::vector<std::vector<int>> elems = {id};
    std::map<std::vector<int>, int> index = {{id, 0}};
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& gen : generators) {
            auto next = compose(elems[head], gen);
            if (index.emplace(next, static_cast<int>(elems.size())).second) {
                elems.push_back(std::move(next));
                if (static_cast<int>(elems.size()) > cap)
                    fail(Err::ClosureTooLarge,
                         "permutation closure exceeds order cap " + std::to_string(cap));
            }
        }
    }

    const int n = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[static_cast<size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
    std::vector<std::string> names;
    names.reserve(n);
    for (const auto& p : elems) names.push_back(cycle_notation(p));
    return from_validated(std::move(table), n, std::move(names));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, int cap) {
    const long n = static_cast<long>(g.order()) * h.order();
    if (n > cap) fail(Err::ClosureTooLarge, "direct product exceeds order cap");
    const int ho = h.order();
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < ho; ++b)
            for (int c = 0; c < g.order(); ++c)
                for (int d = 0; d < ho; ++d)
                    table[static_cast<size_t>(a * ho + b) * n + (c * ho + d)] =
                        g.mul(a, c) * ho + h.mul(b, d);
    std::vector<std::string> names;
    names.reserve(n);
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < ho; ++b) names.push_back(g.name(a) + "|" + h.name(b));
    auto gp = FiniteGroup::from_validated(std::move(table), static_cast<int>(n), std::move(names));
    if (!g.provenance().empty() && !h.provenance().empty())
        gp.set_provenance("direct_product(" + g.provenance() + ", " + h.provenance() + ")");
    return gp;
}

namespace {

FiniteGroup make_cyclic(int n) {
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[static_cast<size_t>(i) * n + j] = (i + j) % n;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back(i == 0 ? "e" : (i == 1 ? "c" : "c^" + std::to_string(i)));
    return FiniteGroup::from_validated(std::move(table), n, std::move(names));
}

FiniteGroup make_dihedral(int n) {
    // index i in [0,n): r^i ; index n+i: r^i s
    const int o = 2 * n;
    auto idx = [n](int rot, int ref) { return ((rot % n) + n) % n + (ref ? n : 0); };
    std::vector<int> table(static_cast<size_t>(o) * o);
    for (int a = 0; a < o; ++a)
        for (int b = 0; b < o; ++b) {
            const int ra = a % n, fa = a / n, rb = b % n, fb = b / n;
            const int rot = fa ? ra - rb : ra + rb;
            table[static_cast<size_t>(a) * o + b] = idx(rot, fa ^ fb);
        }
    std::vector<std::string> names;
    for (int f = 0; f < 2; ++f)
        for (int i = 0; i < n; ++i) {
            std::string base = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
            std::string s = f ? (base.empty() ? "s" : base + " s") : (base.empty() ? "e" : base);
            names.push_back(s);
        }
    return FiniteGroup::from_validated(std::move(table), o, std::move(names));
}

FiniteGroup make_symmetric(int n, int cap) {
    long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (fact > cap) fail(Err::BadParams, "symmetric " + std::to_string(n) + " exceeds order cap");
    std::vector<std::vector<int>> elems;
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
        elems.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(elems.size()); ++i) index[elems[i]] = i;
    const int o = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<size_t>(o) * o);
    std::vector<int> tmp(n);
    for (int a = 0; a < o; ++a)
        for (int b = 0; b < o; ++b) {
            for (int i = 0; i < n; ++i) tmp[i] = elems[a][elems[b][i]];
            table[static_cast<size_t>(a) * o + b] = index.at(tmp);
        }
    std::vector<std::string> names;
    for (const auto& e : elems) names.push_back(cycle_notation(e));
    return FiniteGroup::from_validated(std::move(table), o, std::move(names));
}

FiniteGroup make_quaternion8() {
    // index 2u+s : u in {1,i,j,k}, s = 0 plus / 1 minus
    static const int uprod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    // i*j=k, j*i=-k, j*k=i, k*j=-i, k*i=j, i*k=-j, x*x=-1
    static const int sgn[4][4] = {
        {0, 0, 0, 0},  // 1*x
        {0, 1, 0, 1},  // i*1=i, i*i=-1, i*j=k, i*k=-j
        {0, 1, 1, 0},  // j*1=j, j*i=-k, j*j=-1, j*k=i
        {0, 0, 1, 1},  // k*1=k, k*i=j, k*j=-i, k*k=-1
    };
    std::vector<int> table(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int ua = a / 2, sa = a % 2, ub = b / 2, sb = b % 2;
            const int u = uprod[ua][ub];
            const int s = sa ^ sb ^ sgn[ua][ub];
            table[static_cast<size_t>(a) * 8 + b] = 2 * u + s;
        }
    std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    return FiniteGroup::from_validated(std::move(table), 8, std::move(names));
}

FiniteGroup make_elementary_abelian(int p, int k, int cap) {
    if (!is_prime(Int(p)) || k < 1) fail(Err::BadParams, "elementary_abelian needs a prime and k >= 1");
    long n = 1;
    for (int i = 0; i < k; ++i) {
        n *= p;
        if (n > cap) fail(Err::BadParams, "elementary_abelian order exceeds cap");
    }
    const int o = static_cast<int>(n);
    std::vector<int> table(static_cast<size_t>(o) * o);
    for (int a = 0; a < o; ++a)
        for (int b = 0; b < o; ++b) {
            int x = a, y = b, pow = 1, r = 0;
            for (int i = 0; i < k; ++i) {
                r += ((x % p + y % p) % p) * pow;
                x /= p;
                y /= p;
                pow *= p;
            }
            table[static_cast<size_t>(a) * o + b] = r;
        }
    std::vector<std::string> names;
    for (int a = 0; a < o; ++a) {
        std::string s = "[";
        int x = a;
        for (int i = 0; i < k; ++i) {
            if (i) s += ",";
            s += std::to_string(x % p);
            x /= p;
        }
        names.push_back(s + "]");
    }
    return FiniteGroup::from_validated(std::move(table), o, std::move(names));
}

FiniteGroup make_heisenberg(int p, int cap) {
    if (!is_prime(Int(p))) fail(Err::BadParams, "heisenberg needs a prime");
    const long n = static_cast<long>(p) * p * p;
    if (n > cap) fail(Err::BadParams, "heisenberg order exceeds cap");
    const int o = static_cast<int>(n);
    // element (a,b,c) is the unitriangular matrix [[1,a,c],[0,1,b],[0,0,1]];
    // index = a*p^2 + b*p + c
    auto idx = [p](int a, int b, int c) { return (a * p + b) * p + c; };
    std::vector<int> table(static_cast<size_t>(o) * o);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c)
                for (int a2 = 0; a2 < p; ++a2)
                    for (int b2 = 0; b2 < p; ++b2)
                        for (int c2 = 0; c2 < p; ++c2)
                            table[static_cast<size_t>(idx(a, b, c)) * o + idx(a2, b2, c2)] =
                                idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
    std::vector<std::string> names;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c)
                names.push_back("(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
    return FiniteGroup::from_validated(std::move(table), o, std::move(names));
}

std::vector<std::string> split_top_level_args(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

FiniteGroup builtin_group(const std::string& spec0, int cap) {
    const std::string spec = trim(spec0);
    if (spec.rfind("direct_product", 0) == 0) {
        size_t open = spec.find('(');
        if (open == std::string::npos || spec.back() != ')')
            fail(Err::BadParams, "direct_product needs two parenthesized arguments");
        auto args = split_top_level_args(spec.substr(open + 1, spec.size() - open - 2));
        if (args.size() != 2) fail(Err::BadParams, "direct_product takes exactly two arguments");
        FiniteGroup a = builtin_group(trim(args[0]), cap);
        FiniteGroup b = builtin_group(trim(args[1]), cap);
        return direct_product(a, b, cap);
    }
    std::istringstream is(spec);
    std::string name;
    is >> name;
    std::vector<int> params;
    int v;
    while (is >> v) params.push_back(v);
    if (!is.eof()) fail(Err::BadParams, "trailing junk in group spec: " + spec);

    auto need = [&](size_t k) {
        if (params.size() != k)
            fail(Err::BadParams, name + " takes " + std::to_string(k) + " parameter(s)");
    };
    FiniteGroup g = [&]() -> FiniteGroup {
        if (name == "cyclic") {
            need(1);
            if (params[0] < 1 || params[0] > cap) fail(Err::BadParams, "cyclic order out of range");
            return make_cyclic(params[0]);
        }
        if (name == "dihedral") {
            need(1);
            if (params[0] < 1 || 2 * params[0] > cap) fail(Err::BadParams, "dihedral order out of range");
            return make_dihedral(params[0]);
        }
        if (name == "symmetric") {
            need(1);
            if (params[0] < 1) fail(Err::BadParams, "symmetric needs n >= 1");
            return make_symmetric(params[0], cap);
        }
        if (name == "quaternion8") {
            need(0);
            return make_quaternion8();
        }
        if (name == "elementary_abelian") {
            need(2);
            return make_elementary_abelian(params[0], params[1], cap);
        }
        if (name == "heisenberg") {
            need(1);
            return make_heisenberg(params[0], cap);
        }
        fail(Err::UnknownName, "unknown builtin group: " + name);
    }();
    std::string prov = name;
    for (int q : params) prov += " " + std::to_string(q);
    g.set_provenance(prov);
    return g;
}

Subgroup centralizer(const FiniteGroup& g, const std::vector<int>& s) {
    if (s.empty()) fail(Err::BadParams, "centralizer of an empty set");
    Subgroup out;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int y : s)
            if (g.mul(x, y) != g.mul(y, x)) { ok = false; break; }
        if (ok) out.members.push_back(x);
    }
    return out;
}

Subgroup subgroup_closure(const FiniteGroup& g, std::vector<int> seed) {
    Bits have = bits_make(g.order());
    std::vector<int> elems;
    auto add = [&](int x) {
        if (!bits_get(have, x)) {
            bits_set(have, x);
            elems.push_back(x);
        }
    };
    add(g.identity());
    for (int x : seed) add(x);
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            add(g.mul(elems[i], elems[j]));
            add(g.mul(elems[j], elems[i]));
        }
    Subgroup out;
    out.members = std::move(elems);
    std::sort(out.members.begin(), out.members.end());
    return out;
}

bool is_abelian_subset(const FiniteGroup& g, const std::vector<int>& members) {
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            if (g.mul(members[i], members[j]) != g.mul(members[j], members[i])) return false;
    return true;
}

std::vector<Subgroup> maximal_abelian_subgroups(const FiniteGroup& g) {
    const int n = g.order();
    if (g.abelian()) {
        Subgroup whole;
        whole.members.resize(n);
        for (int i = 0; i < n; ++i) whole.members[i] = i;
        return {whole};
    }

    std::unordered_set<Bits, BitsHash> visited;
    std::vector<Subgroup> leaves;

    auto to_bits = [n](const std::vector<int>& m) {
        Bits b = bits_make(n);
        for (int x : m) bits_set(b, x);
        return b;
    };

    // grow abelian subgroups by adjoining commuting elements, depth-first
    std::function<void(const Subgroup&)> grow = [&](const Subgroup& s) {
        Bits key = to_bits(s.members);
        if (!visited.insert(key).second) return;
        Subgroup cent = centralizer(g, s.members);
        bool leaf = true;
        for (int c : cent.members) {
            if (bits_get(key, c)) continue;
            leaf = false;
            std::vector<int> seed = s.members;
            seed.push_back(c);
            grow(subgroup_closure(g, std::move(seed)));
        }
        if (leaf) leaves.push_back(s);
    };

    for (int x = 0; x < n; ++x) grow(subgroup_closure(g, {x}));

    std::sort(leaves.begin(), leaves.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members < b.members;
    });
    leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
    return leaves;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
    const int n = g.order();
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Subgroup> out;
    auto to_bits = [n](const std::vector<int>& m) {
        Bits b = bits_make(n);
        for (int x : m) bits_set(b, x);
        return b;
    };
    std::vector<Subgroup> queue = {subgroup_closure(g, {})};
    seen.insert(to_bits(queue[0].members));
    for (size_t head = 0; head < queue.size(); ++head) {
        Subgroup h = queue[head];
        out.push_back(h);
        for (int x = 0; x < n; ++x) {
            if (std::binary_search(h.members.begin(), h.members.end(), x)) continue;
            std::vector<int> seed = h.members;
            seed.push_back(x);
            Subgroup k = subgroup_closure(g, std::move(seed));
            if (seen.insert(to_bits(k.members)).second) queue.push_back(k);
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members < b.members;
    });
    return out;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& sub) {
    const int n = sub.order();
    std::vector<int> pos(g.order(), -1);
    for (int i = 0; i < n; ++i) pos[sub.members[i]] = i;
    std::vector<int> table(static_cast<size_t>(n) * n);
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) {
        names.push_back(g.name(sub.members[i]));
        for (int j = 0; j < n; ++j) {
            const int p = pos[g.mul(sub.members[i], sub.members[j])];
            if (p < 0) fail(Err::ValidationFailed, "member set is not closed under the parent table");
            table[static_cast<size_t>(i) * n + j] = p;
        }
    }
    return FiniteGroup::from_validated(std::move(table), n, std::move(names));
}

}  // namespace ekedahl::groups
