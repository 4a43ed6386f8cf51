#include "ekedahl/kring.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "ekedahl/errors.hpp"

namespace ekedahl::kring {

long Fil::value() const {
    if (!finite_) fail(Err::Internal, "Fil: value() of -inf");
    return v_;
}

std::string Fil::str() const { return finite_ ? std::to_string(v_) : "-inf"; }

Symbol make_symbol(std::string name, int dimension, bool smooth_proper,
                   std::optional<vartab::CohomologyTable> table) {
    if (dimension < 0) fail(Err::ValidationFailed, "symbol dimension must be nonnegative");
    if (table) {
        vartab::validate_table(*table);
        if (table->dimension != dimension)
            fail(Err::ValidationFailed, "symbol dimension does not match its table");
    }
    auto s = std::make_shared<SymbolData>();
    s->name = std::move(name);
    s->dimension = dimension;
    s->smooth_proper = smooth_proper;
    s->table = std::move(table);
    return s;
}

Symbol product_symbol(const Symbol& a, const Symbol& b) {
    std::vector<Symbol> factors;
    auto push = [&](const Symbol& s) {
        if (s->factors.empty())
            factors.push_back(s);
        else
            factors.insert(factors.end(), s->factors.begin(), s->factors.end());
    };
    push(a);
    push(b);
    std::sort(factors.begin(), factors.end(),
              [](const Symbol& x, const Symbol& y) { return x->name < y->name; });
    auto s = std::make_shared<SymbolData>();
    int dim = 0;
    bool sp = true;
    std::string name;
    for (size_t i = 0; i < factors.size(); ++i) {
        dim += factors[i]->dimension;
        sp = sp && factors[i]->smooth_proper;
        if (i) name += "*";
        name += factors[i]->name;
    }
    s->name = std::move(name);
    s->dimension = dim;
    s->smooth_proper = sp;
    s->factors = std::move(factors);
    return s;
}

bool TermKeyLess::operator()(const TermKey& a, const TermKey& b) const {
    const bool au = a.sym == nullptr, bu = b.sym == nullptr;
    if (au != bu) return au;  // unit terms first
    if (!au && a.sym->name != b.sym->name) return a.sym->name < b.sym->name;
    return a.exp < b.exp;
}

KElement k_normalize(std::vector<std::pair<TermKey, Int>> terms, Fil tau) {
    KElement out;
    out.tau_ = tau;
    for (auto& [key, coeff] : terms) {
        if (sign(coeff) == 0) continue;
        if (Fil::of(key.virtual_dim()) <= tau) continue;  // absorbed into the tail
        auto it = out.terms_.find(key);
        if (it == out.terms_.end()) {
            out.terms_.emplace(key, std::move(coeff));
        } else {
            it->second += coeff;
            if (sign(it->second) == 0) out.terms_.erase(it);
        }
    }
    return out;
}

KElement KElement::constant(Int c) {
    return k_normalize({{TermKey{nullptr, 0}, std::move(c)}}, Fil::ninf());
}

KElement KElement::lefschetz(long e, Int coeff) {
    return k_normalize({{TermKey{nullptr, e}, std::move(coeff)}}, Fil::ninf());
}

KElement KElement::of_symbol(Symbol s, long e, Int coeff) {
    return k_normalize({{TermKey{std::move(s), e}, std::move(coeff)}}, Fil::ninf());
}

Fil KElement::fil_degree() const {
    Fil d = Fil::ninf();
    for (const auto& [key, c] : terms_) d = Fil::max(d, Fil::of(key.virtual_dim()));
    return d;
}

KElement KElement::truncated(Fil tau) const {
    Fil t = Fil::max(tau_, tau);
    std::vector<std::pair<TermKey, Int>> list(terms_.begin(), terms_.end());
    return k_normalize(std::move(list), t);
}

KElement KElement::operator+(const KElement& o) const {
    std::vector<std::pair<TermKey, Int>> list(terms_.begin(), terms_.end());
    list.insert(list.end(), o.terms_.begin(), o.terms_.end());
    return k_normalize(std::move(list), Fil::max(tau_, o.tau_));
}

KElement KElement::operator-() const { return scaled(Int(-1)); }

KElement KElement::operator-(const KElement& o) const { return *this + (-o); }

KElement KElement::scaled(const Int& c) const {
    std::vector<std::pair<TermKey, Int>> list;
    list.reserve(terms_.size());
    for (const auto& [k, v] : terms_) list.emplace_back(k, v * c);
    // scaling by zero annihilates the tail too
    return k_normalize(std::move(list), sign(c) == 0 ? Fil::ninf() : tau_);
}

KElement KElement::mul(const KElement& o) const {
    // tau = max(tau_x + d_y, tau_y + d_x, tau_x + tau_y), d the other side's
    // top virtual dimension
    Fil tau = Fil::max(Fil::max(tau_ + o.fil_degree(), o.tau_ + fil_degree()), tau_ + o.tau_);
    std::vector<std::pair<TermKey, Int>> list;
    list.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            TermKey key;
            key.exp = ka.exp + kb.exp;
            if (ka.sym && kb.sym)
                key.sym = product_symbol(ka.sym, kb.sym);
            else
                key.sym = ka.sym ? ka.sym : kb.sym;
            list.emplace_back(std::move(key), ca * cb);
        }
    return k_normalize(std::move(list), tau);
}

bool KElement::operator==(const KElement& o) const {
    if (!(tau_ == o.tau_) || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    TermKeyLess less;
    for (; it != terms_.end(); ++it, ++jt) {
        if (less(it->first, jt->first) || less(jt->first, it->first)) return false;
        if (it->second != jt->second) return false;
    }
    return true;
}

std::string KElement::str() const {
    std::ostringstream os;
    if (terms_.empty()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& [key, c] : terms_) {
            const bool neg = sign(c) < 0;
            Int mag = int_abs(c);
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            std::vector<std::string> pieces;
            if (mag != 1) pieces.push_back(to_string(mag));
            if (key.sym) pieces.push_back(key.sym->name);
            if (key.exp == 1)
                pieces.push_back("L");
            else if (key.exp != 0)
                pieces.push_back("L^" + std::to_string(key.exp));
            if (pieces.empty()) pieces.push_back("1");
            for (size_t i = 0; i < pieces.size(); ++i) {
                if (i) os << "*";
                os << pieces[i];
            }
            first = false;
        }
    }
    if (!tau_.is_ninf()) os << " mod Fil(" << tau_.value() << ")";
    return os.str();
}

KElement projective_space_class(int n) {
    if (n < 0) fail(Err::ValidationFailed, "projective space dimension must be >= 0");
    std::vector<std::pair<TermKey, Int>> list;
    for (int i = 0; i <= n; ++i) list.push_back({TermKey{nullptr, i}, Int(1)});
    return k_normalize(std::move(list), Fil::ninf());
}

KElement class_gl(int n) {
    if (n < 1) fail(Err::ValidationFailed, "class_gl needs n >= 1");
    KElement acc = KElement::one();
    for (int i = 0; i < n; ++i)
        acc = acc.mul(KElement::lefschetz(n) - KElement::lefschetz(i));
    return acc;
}

namespace {

// Laurent polynomial in L as exponent -> coefficient
using Poly = std::map<long, Int>;

// exact division by L^n - 1; returns false when not divisible
bool divide_cyclotomic_like(const Poly& p, long n, Poly& quotient) {
    Poly rem = p;
    quotient.clear();
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        const long deg = top->first;
        if (deg < n) return false;
        const Int coef = top->second;
        quotient[deg - n] = coef;
        // rem -= coef * (L^(deg) - L^(deg-n))
        rem.erase(top);
        auto lower = rem.find(deg - n);
        Int v = (lower == rem.end() ? Int(0) : lower->second) + coef;
        if (lower != rem.end()) rem.erase(lower);
        if (sign(v) != 0) rem[deg - n] = v;
    }
    return true;
}

bool match_unit_factors(const Poly& p, std::vector<long>& factors, int& sgn) {
    if (p.size() == 1 && p.begin()->first == 0) {
        const Int& c = p.begin()->second;
        if (c == 1) { sgn = 1; return true; }
        if (c == -1) { sgn = -1; return true; }
        return false;
    }
    const long deg = p.rbegin()->first;
    for (long n = deg; n >= 1; --n) {
        Poly q;
        if (!divide_cyclotomic_like(p, n, q)) continue;
        if (match_unit_factors(q, factors, sgn)) {
            factors.push_back(n);
            return true;
        }
    }
    return false;
}

struct UnitShape {
    long shift = 0;             // a in +-L^a * prod
    int sgn = 1;                // the +- sign
    std::vector<long> factors;  // the n_j, descending
};

// syntactic factor cache keyed by the rendered polynomial
bool recognize_unit(const KElement& x, UnitShape& shape) {
    static std::map<std::string, UnitShape> cache;
    static std::mutex mtx;

    if (!x.exact() || x.is_zero()) return false;
    Poly p;
    for (const auto& [key, c] : x.terms()) {
        if (key.sym) return false;  // symbols present: not a Lefschetz unit
        p[key.exp] = c;
    }
    const std::string cache_key = x.str();
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(cache_key);
        if (it != cache.end()) {
            shape = it->second;
            return true;
        }
    }
    UnitShape s;
    s.shift = p.begin()->first;  // lowest exponent
    if (s.shift != 0) {
        Poly shifted;
        for (const auto& [e, c] : p) shifted[e - s.shift] = c;
        p = std::move(shifted);
    }
    std::vector<long> factors;
    if (!match_unit_factors(p, factors, s.sgn)) return false;
    std::sort(factors.rbegin(), factors.rend());
    s.factors = std::move(factors);
    {
        std::lock_guard<std::mutex> lk(mtx);
        cache.emplace(cache_key, s);
    }
    shape = s;
    return true;
}

}  // namespace

KElement k_invert_unit(const KElement& x, long tau) {
    UnitShape shape;
    if (!recognize_unit(x, shape))
        fail(Err::NotAUnit, "element does not match the unit shape +-L^a * prod(L^n - 1)");
    long total = shape.shift;
    for (long n : shape.factors) total += n;
    // x^-1 = sgn * L^base * prod_j (1 + L^-n_j + L^-2n_j + ...), base = -total.
    // A term dropped from factor j sits at exponent base - n_j*t <= tau and the
    // remaining factors only lower it, so the finite expansions below cover
    // everything above the target precision.
    const long base = -total;
    KElement acc = KElement::lefschetz(base, Int(shape.sgn));
    for (long n : shape.factors) {
        std::vector<std::pair<TermKey, Int>> series;
        for (long t = 0; base - n * t > tau; ++t)
            series.push_back({TermKey{nullptr, -n * t}, Int(1)});
        acc = acc.mul(k_normalize(std::move(series), Fil::ninf()));
    }
    return acc.truncated(Fil::of(tau));
}

KElement class_b_subgroup(const KElement& w_class, const std::optional<KElement>& quotient_class,
                          long tau) {
    if (quotient_class && !quotient_class->exact())
        fail(Err::ValidationFailed, "quotient class must be exact");
    KElement inv = k_invert_unit(w_class, tau);
    return quotient_class ? quotient_class->mul(inv) : inv;
}

std::pair<KElement, KElement> quotient_stack_classes(const KElement& bg, int n, int m) {
    if (n < 1 || m < 1) fail(Err::ValidationFailed, "quotient_stack_classes needs n, m >= 1");
    KElement vm = KElement::lefschetz(static_cast<long>(n) * m).mul(bg);
    KElement pv = projective_space_class(n - 1).mul(bg);
    return {std::move(vm), std::move(pv)};
}

KElement limit_of_sequence(const std::vector<KElement>& seq) {
    if (seq.empty()) fail(Err::ValidationFailed, "limit of an empty sequence");
    Fil last_nonzero = Fil::ninf();
    bool have_nonzero = false;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        KElement diff = seq[i + 1] - seq[i];
        if (diff.is_zero()) continue;
        Fil f = diff.fil_degree();
        if (have_nonzero && !(f < last_nonzero))
            fail(Err::NotConverging,
                 "difference at index " + std::to_string(i) + " does not drop in filtration degree");
        last_nonzero = f;
        have_nonzero = true;
    }
    if (!have_nonzero) return seq.back();
    return seq.back().truncated(last_nonzero);
}

bool equal_mod_fil(const KElement& a, const KElement& b, long t) {
    const Fil ft = Fil::of(t);
    if (!(a.precision() <= ft) || !(b.precision() <= ft)) return false;
    KElement ta = a.truncated(ft), tb = b.truncated(ft);
    return ta.terms().size() == tb.terms().size() &&
           std::equal(ta.terms().begin(), ta.terms().end(), tb.terms().begin(),
                      [](const auto& x, const auto& y) {
                          TermKeyLess less;
                          return !less(x.first, y.first) && !less(y.first, x.first) &&
                                 x.second == y.second;
                      });
}

}  // namespace ekedahl::kring
