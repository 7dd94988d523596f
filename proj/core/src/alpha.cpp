#include "qrec/alpha.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qrec {

const char* to_string(AlphaMethod m) {
    switch (m) {
        case AlphaMethod::bruteforce: return "bruteforce";
        case AlphaMethod::percival: return "percival";
        case AlphaMethod::composite: return "composite";
    }
    return "?";
}

namespace {

long long mod_reduce(long long x, long long g) {
    long long r = x % g;
    return r < 0 ? r + g : r;
}

bool is_identity_mod(const Mat2& M, long long g) {
    return mod_reduce(M.a, g) == mod_reduce(1, g) && mod_reduce(M.b, g) == 0 &&
           mod_reduce(M.c, g) == 0 && mod_reduce(M.d, g) == mod_reduce(1, g);
}

std::vector<long long> divisors_of(long long n) {
    std::vector<long long> divs;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d != n / d) divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

bool is_prime(long long n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (long long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<long long, int>> factorize(long long n, long long limit) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (p > limit)
            throw std::runtime_error("factorize: factor search exceeded configured limit");
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (n > limit)
            throw std::runtime_error("factorize: prime factor exceeds configured limit");
        out.emplace_back(n, 1);
    }
    return out;
}

AlphaResult alpha_bruteforce(const Mat2& L, long long g) {
    if (g < 2) throw std::invalid_argument("alpha: modulus must be >= 2");
    if (mod_reduce(L.det(), g) != mod_reduce(1, g))
        throw std::invalid_argument("alpha: determinant is not 1 mod g");
    Mat2 cur = mat_pow_mod(L, 1, g);
    long long t = 1;
    // The group GL2(Z/g) is finite, so this terminates; the bound is a hard
    // backstop against a non-invertible matrix sneaking past the det check.
    const long long hard_cap = 8 * g * g * g + 16;
    while (!is_identity_mod(cur, g)) {
        cur = mat_mul_mod(cur, L, g);
        ++t;
        if (t > hard_cap) throw std::runtime_error("alpha_bruteforce: order search did not terminate");
    }
    AlphaResult r;
    r.g = g;
    r.alpha = t;
    r.method = AlphaMethod::bruteforce;
    return r;
}

long long discriminant_of(const Mat2& L) {
    const long long tr = L.trace();
    if (tr >= -2 && tr <= 2) throw std::domain_error("discriminant_of: matrix is not hyperbolic");
    long long n = tr * tr - 4;
    // Strip the square part, then adjust to a fundamental discriminant.
    long long square_free = 1;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e % 2 == 1) square_free *= p;
    }
    square_free *= m;
    return (mod_reduce(square_free, 4) == 1) ? square_free : 4 * square_free;
}

int kronecker_symbol(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // Pull out factors of two from n using (a/2).
    while ((n & 1) == 0) {
        n >>= 1;
        const long long am = mod_reduce(a, 8);
        if (am == 3 || am == 5) result = -result;
    }
    a = mod_reduce(a, n);
    // Jacobi loop with quadratic reciprocity.
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const long long nm = n % 8;
            if (nm == 3 || nm == 5) result = -result;
        }
        std::swap(a, n);
        if ((a % 4) == 3 && (n % 4) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

AlphaResult alpha_percival(const Mat2& L, long long p) {
    if (!is_prime(p)) throw std::invalid_argument("alpha_percival: modulus must be prime");
    if (mod_reduce(L.det(), p) != mod_reduce(1, p))
        throw std::invalid_argument("alpha_percival: determinant is not 1 mod p");
    const long long d = discriminant_of(L);
    const int chi = kronecker_symbol(d, p);
    if (chi == 0) throw std::invalid_argument("alpha_percival: prime divides the discriminant");
    const long long D = p - chi;
    // The order divides D, so the divisors of D are the only candidates; take
    // the smallest one that works.
    for (long long cand : divisors_of(D)) {
        if (is_identity_mod(mat_pow_mod(L, static_cast<unsigned long long>(cand), p), p)) {
            AlphaResult r;
            r.g = p;
            r.alpha = cand;
            r.method = AlphaMethod::percival;
            r.details["d"] = d;
            r.details["kronecker"] = chi;
            r.details["D"] = D;
            r.details["m"] = D / cand;
            return r;
        }
    }
    // The order always divides p - (d/p) for det-1 matrices; reaching this
    // point means the implementation is broken, not the input.
    throw std::logic_error("alpha_percival: no divisor of p-(d/p) gives the identity");
}

AlphaResult alpha_composite(const Mat2& L, long long g, long long factor_limit) {
    if (g < 2) throw std::invalid_argument("alpha: modulus must be >= 2");
    if (mod_reduce(L.det(), g) != mod_reduce(1, g))
        throw std::invalid_argument("alpha: determinant is not 1 mod g");
    AlphaResult r;
    r.g = g;
    r.method = AlphaMethod::composite;
    long long alpha = 1;
    for (const auto& [p, e] : factorize(g, factor_limit)) {
        // Base order mod p. The formula route fails for ramified primes
        // (p | d) and for non-hyperbolic reductions; fall back to brute force
        // there, the two agree everywhere else.
        long long ap;
        const long long tr = L.trace();
        if (tr > 2 && kronecker_symbol(discriminant_of(L), p) != 0)
            ap = alpha_percival(L, p).alpha;
        else
            ap = alpha_bruteforce(L, p).alpha;
        // Lift to p^e: the order mod p^e is ap * p^j for some j >= 0.
        long long pk = p;
        for (int i = 1; i < e; ++i) pk *= p;
        long long lifted = ap;
        while (!is_identity_mod(mat_pow_mod(L, static_cast<unsigned long long>(lifted), pk), pk))
            lifted *= p;
        r.details["alpha(" + std::to_string(pk) + ")"] = lifted;
        alpha = std::lcm(alpha, lifted);
    }
    r.alpha = alpha;
    return r;
}

}  // namespace qrec
