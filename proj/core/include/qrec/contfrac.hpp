#pragma once

#include <vector>

namespace qrec {

struct Fraction {
    long long num = 0;
    long long den = 1;
    constexpr bool operator==(const Fraction&) const = default;
};

/// Full convergent sequence of k/D in lowest terms, ascending denominators,
/// starting from the a0 = 0 convergent 0/1. Requires 0 <= k < D, D >= 1.
std::vector<Fraction> cf_convergents(long long k, long long D);

}  // namespace qrec
