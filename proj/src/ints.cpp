#include "ekedahl/ints.hpp"

#include "ekedahl/errors.hpp"

namespace ekedahl {

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n < 1) fail(Err::Internal, "factorize: argument must be positive");
    std::vector<std::pair<Int, int>> out;
    Int p = 2;
    while (p * p <= n) {
        if (divides(p, n)) {
            int e = 0;
            while (divides(p, n)) {
                n = divexact(n, p);
                ++e;
            }
            out.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

}  // namespace ekedahl
