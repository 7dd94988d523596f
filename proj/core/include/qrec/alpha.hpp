#pragma once

#include <map>
#include <string>
#include <vector>

#include "qrec/mat2.hpp"

namespace qrec {

enum class AlphaMethod { bruteforce, percival, composite };

const char* to_string(AlphaMethod m);

/// Order of the matrix in GL2(Z/g): the smallest t >= 1 with L^t = I (mod g).
/// This is the recurrence time of the whole g x g lattice under L.
struct AlphaResult {
    long long g = 0;
    long long alpha = 0;
    AlphaMethod method = AlphaMethod::bruteforce;
    /// Method-specific trail: e.g. {"d", "kronecker", "D", "m"} for percival,
    /// per-prime-power orders for composite.
    std::map<std::string, long long> details;
};

/// Exact minimal order by sequential multiplication. Rejects g < 2 and
/// matrices with det != 1 (mod g).
AlphaResult alpha_bruteforce(const Mat2& L, long long g);

/// Fundamental discriminant of the quadratic field containing the eigenvalues
/// of a hyperbolic matrix with det 1: tr^2 - 4 with its square part removed,
/// adjusted to = 0 or 1 mod 4.
long long discriminant_of(const Mat2& L);

/// Kronecker symbol (d/n), the extension of the Jacobi symbol to all n.
int kronecker_symbol(long long d, long long n);

/// Order mod a prime p from D = p - (d/p): the order divides D, so the
/// smallest divisor alpha of D with L^alpha = I is the answer. Rejects p = 5
/// style ramified primes (p | d) and non-primes.
AlphaResult alpha_percival(const Mat2& L, long long p);

/// Order mod composite g: factor g, compute the order mod each prime power by
/// lifting the order mod p (multiply by p until it holds), take the lcm.
AlphaResult alpha_composite(const Mat2& L, long long g, long long factor_limit = 1000000);

bool is_prime(long long n);

/// Trial-division factorization, pairs (prime, exponent). Throws if a factor
/// above the limit would be needed.
std::vector<std::pair<long long, int>> factorize(long long n, long long limit = 1000000);

}  // namespace qrec
