#pragma once

#include <cstdint>
#include <vector>

namespace qrec {

/// 2x2 integer matrix, rows (a b; c d). The classical evolution operators
/// handled here all have determinant 1 (unimodular), which makes them exactly
/// invertible modulo any g.
struct Mat2 {
    long long a = 1, b = 0, c = 0, d = 1;

    constexpr bool operator==(const Mat2&) const = default;

    constexpr long long trace() const { return a + d; }
    constexpr long long det() const { return a * d - b * c; }
    constexpr bool is_unimodular() const { return det() == 1; }

    static constexpr Mat2 identity() { return {1, 0, 0, 1}; }

    /// The default hyperbolic torus automorphism (2 1; 1 1).
    static constexpr Mat2 cat() { return {2, 1, 1, 1}; }
};

/// Plain integer product, no reduction. Safe while entries stay well below
/// 2^31; guarded against overflow.
Mat2 mat_mul(const Mat2& A, const Mat2& B);

/// A^t without reduction (square-and-multiply). t small enough that entries
/// fit in 64 bits.
Mat2 mat_pow(const Mat2& A, unsigned t);

/// Entrywise product reduced mod g. Rejects g = 0.
Mat2 mat_mul_mod(const Mat2& A, const Mat2& B, long long g);

/// A^t mod g by square-and-multiply, O(log t) multiplications.
Mat2 mat_pow_mod(const Mat2& A, unsigned long long t, long long g);

/// Inverse of a matrix with det = 1 mod g: (d -b; -c a) reduced mod g.
Mat2 mat_inverse_mod(const Mat2& A, long long g);

/// Sequence [A^2, A^4, ..., A^(2^n)] mod g, produced by sequential squaring;
/// element i (1-based) is A^(2^i).
std::vector<Mat2> precompute_squarings(const Mat2& A, long long g, int n);

/// ln of the leading eigenvalue (tr + sqrt(tr^2 - 4)) / 2. Requires tr > 2;
/// |tr| <= 2 is rejected as non-hyperbolic.
double lyapunov_exponent(const Mat2& A);

}  // namespace qrec
