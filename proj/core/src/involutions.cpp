#include "qrec/involutions.hpp"

#include <stdexcept>

namespace qrec {

namespace {

long long mod_reduce(long long x, long long g) {
    long long r = x % g;
    return r < 0 ? r + g : r;
}

}  // namespace

std::vector<LatticePoint> SymmetryLine::points() const {
    std::vector<LatticePoint> out;
    out.reserve(static_cast<size_t>(size));
    for (long long s = 0; s < size; ++s) out.push_back(at(s));
    return out;
}

bool SymmetryLine::contains(const LatticePoint& p) const {
    for (long long s = 0; s < size; ++s)
        if (at(s) == p) return true;
    return false;
}

const SymmetryLine& InvolutionPair::line(const std::string& id) const {
    for (const auto& l : lines)
        if (l.id == id) return l;
    throw std::invalid_argument("involutions: no symmetry line named '" + id + "'");
}

InvolutionPair involution_factors(const LatticeMapSpec& spec) {
    if (spec.kind != MapKind::twist)
        throw std::invalid_argument("involution_factors: only twist maps factor here");
    const long long N = spec.modulus;

    std::vector<long long> delta(static_cast<size_t>(N));
    for (long long x = 0; x < N; ++x) delta[static_cast<size_t>(x)] = twist_delta(spec, x);

    // I2 squares to the identity iff delta is odd as a function on Z_N.
    for (long long x = 0; x < N; ++x) {
        const long long mirrored = delta[static_cast<size_t>(mod_reduce(-x, N))];
        if (mod_reduce(delta[static_cast<size_t>(x)] + mirrored, N) != 0)
            throw std::invalid_argument(
                "involution_factors: discretized force is not odd mod N, "
                "no involution decomposition for this spec");
    }

    InvolutionPair pair;
    pair.i1 = [N](LatticePoint p) { return LatticePoint{mod_reduce(p.y - p.x, N), p.y}; };
    pair.i2 = [N, delta](LatticePoint p) {
        return LatticePoint{mod_reduce(-p.x, N),
                            mod_reduce(p.y + delta[static_cast<size_t>(p.x)], N)};
    };

    // Fix(I1): y - x = x, one point per column.
    SymmetryLine l1;
    l1.id = "I1";
    l1.involution = 1;
    l1.size = N;
    l1.at = [N](long long s) { return LatticePoint{mod_reduce(s, N), mod_reduce(2 * s, N)}; };
    pair.lines.push_back(l1);

    // Fix(I2): columns with -x = x and delta(x) = 0 mod N; each is a full
    // vertical line of N points.
    for (long long x = 0; x < N; ++x) {
        if (mod_reduce(2 * x, N) != 0) continue;
        if (mod_reduce(delta[static_cast<size_t>(x)], N) != 0) continue;
        SymmetryLine l2;
        l2.id = "I2:x=" + std::to_string(x);
        l2.involution = 2;
        l2.size = N;
        l2.at = [x, N](long long s) { return LatticePoint{x, mod_reduce(s, N)}; };
        pair.lines.push_back(l2);
    }
    return pair;
}

}  // namespace qrec
