// Exact integer arithmetic helpers on top of GMP.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ekedahl {

using Int = mpz_class;

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// g = gcd(a,b) together with x,y such that a*x + b*y = g.
inline Int int_gcdext(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Quotient truncated toward zero (same convention as C++ integer division).
inline Int tdiv_q(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Round-to-nearest quotient, ties toward zero; keeps elimination remainders
// at |b|/2 or less, which is what holds entry growth down.
inline Int ndiv_q(const Int& a, const Int& b) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int r2 = r * 2;
    if (mpz_cmpabs(r2.get_mpz_t(), b.get_mpz_t()) > 0) {
        if ((mpz_sgn(r.get_mpz_t()) > 0) == (mpz_sgn(b.get_mpz_t()) > 0))
            q += 1;
        else
            q -= 1;
    }
    return q;
}

// a / b when b is known to divide a.
inline Int divexact(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Int& d, const Int& a) {
    if (d == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline int sign(const Int& a) { return mpz_sgn(a.get_mpz_t()); }

inline Int int_abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline long to_long(const Int& a) { return mpz_get_si(a.get_mpz_t()); }

inline std::string to_string(const Int& a) { return a.get_str(); }

// Prime-power factorization by trial division; inputs here are group orders
// and invariant factors, which stay desk-sized.
std::vector<std::pair<Int, int>> factorize(Int n);

bool is_prime(const Int& n);

}  // namespace ekedahl
