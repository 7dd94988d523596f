#include "qrec/contfrac.hpp"

#include <stdexcept>

namespace qrec {

std::vector<Fraction> cf_convergents(long long k, long long D) {
    if (D < 1) throw std::invalid_argument("cf_convergents: denominator must be >= 1");
    if (k < 0 || k >= D) throw std::invalid_argument("cf_convergents: need 0 <= k < D");

    std::vector<Fraction> out;
    long long h_prev = 1, h_prev2 = 0;  // numerators
    long long q_prev = 0, q_prev2 = 1;  // denominators
    long long n = k, d = D;
    // Euclidean expansion; k < D so the first partial quotient is 0 and the
    // first convergent is 0/1.
    while (true) {
        const long long a = n / d;
        const long long h = a * h_prev + h_prev2;
        const long long q = a * q_prev + q_prev2;
        out.push_back({h, q});
        const long long r = n % d;
        if (r == 0) break;
        h_prev2 = h_prev;
        h_prev = h;
        q_prev2 = q_prev;
        q_prev = q;
        n = d;
        d = r;
    }
    return out;
}

}  // namespace qrec
