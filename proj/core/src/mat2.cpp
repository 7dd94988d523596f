#include "qrec/mat2.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qrec {

namespace {

long long checked_mul(long long x, long long y) {
    long long r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("mat2: entry product overflows 64 bits");
    return r;
}

long long checked_add(long long x, long long y) {
    long long r;
    if (__builtin_add_overflow(x, y, &r))
        throw std::overflow_error("mat2: entry sum overflows 64 bits");
    return r;
}

constexpr long long mod_reduce(long long x, long long g) {
    long long r = x % g;
    return r < 0 ? r + g : r;
}

}  // namespace

Mat2 mat_mul(const Mat2& A, const Mat2& B) {
    return {checked_add(checked_mul(A.a, B.a), checked_mul(A.b, B.c)),
            checked_add(checked_mul(A.a, B.b), checked_mul(A.b, B.d)),
            checked_add(checked_mul(A.c, B.a), checked_mul(A.d, B.c)),
            checked_add(checked_mul(A.c, B.b), checked_mul(A.d, B.d))};
}

Mat2 mat_pow(const Mat2& A, unsigned t) {
    Mat2 result = Mat2::identity();
    Mat2 base = A;
    while (t > 0) {
        if (t & 1u) result = mat_mul(result, base);
        t >>= 1u;
        if (t > 0) base = mat_mul(base, base);
    }
    return result;
}

Mat2 mat_mul_mod(const Mat2& A, const Mat2& B, long long g) {
    if (g < 1) throw std::invalid_argument("mat_mul_mod: modulus must be >= 1");
    // Inputs may be unreduced; reduce first so products fit.
    const Mat2 X{mod_reduce(A.a, g), mod_reduce(A.b, g), mod_reduce(A.c, g), mod_reduce(A.d, g)};
    const Mat2 Y{mod_reduce(B.a, g), mod_reduce(B.b, g), mod_reduce(B.c, g), mod_reduce(B.d, g)};
    return {mod_reduce(X.a * Y.a + X.b * Y.c, g), mod_reduce(X.a * Y.b + X.b * Y.d, g),
            mod_reduce(X.c * Y.a + X.d * Y.c, g), mod_reduce(X.c * Y.b + X.d * Y.d, g)};
}

Mat2 mat_pow_mod(const Mat2& A, unsigned long long t, long long g) {
    if (g < 1) throw std::invalid_argument("mat_pow_mod: modulus must be >= 1");
    Mat2 result{mod_reduce(1, g), 0, 0, mod_reduce(1, g)};
    Mat2 base{mod_reduce(A.a, g), mod_reduce(A.b, g), mod_reduce(A.c, g), mod_reduce(A.d, g)};
    while (t > 0) {
        if (t & 1ull) result = mat_mul_mod(result, base, g);
        t >>= 1ull;
        if (t > 0) base = mat_mul_mod(base, base, g);
    }
    return result;
}

Mat2 mat_inverse_mod(const Mat2& A, long long g) {
    if (g < 1) throw std::invalid_argument("mat_inverse_mod: modulus must be >= 1");
    if (mod_reduce(A.det(), g) != mod_reduce(1, g))
        throw std::invalid_argument("mat_inverse_mod: determinant is not 1 mod g");
    return {mod_reduce(A.d, g), mod_reduce(-A.b, g), mod_reduce(-A.c, g), mod_reduce(A.a, g)};
}

std::vector<Mat2> precompute_squarings(const Mat2& A, long long g, int n) {
    if (n < 1) throw std::invalid_argument("precompute_squarings: need n >= 1");
    std::vector<Mat2> out;
    out.reserve(static_cast<size_t>(n));
    Mat2 cur = mat_mul_mod(A, A, g);
    out.push_back(cur);
    for (int i = 1; i < n; ++i) {
        cur = mat_mul_mod(cur, cur, g);
        out.push_back(cur);
    }
    return out;
}

double lyapunov_exponent(const Mat2& A) {
    const long long tr = A.trace();
    if (tr <= 2) {
        if (tr >= -2)
            throw std::domain_error("lyapunov_exponent: |trace| <= 2, map is not hyperbolic");
        throw std::domain_error("lyapunov_exponent: trace < -2 not supported, use the squared map");
    }
    const double t = static_cast<double>(tr);
    return std::log((t + std::sqrt(t * t - 4.0)) / 2.0);
}

}  // namespace qrec
