#include "qrec/orbit_sets.hpp"

#include <algorithm>
#include <stdexcept>

#include "qrec/involutions.hpp"

namespace qrec {

std::optional<long long> point_period_bruteforce(const LatticeMapSpec& spec, LatticePoint p,
                                                 long long t_max) {
    if (t_max < 1) throw std::invalid_argument("point_period_bruteforce: t_max must be >= 1");
    LatticePoint cur = p;
    for (long long t = 1; t <= t_max; ++t) {
        cur = apply_map(spec, cur);
        if (cur == p) return t;
    }
    return std::nullopt;
}

std::optional<long long> minimal_period(const LatticeMapSpec& spec, LatticePoint p,
                                        long long bound) {
    return point_period_bruteforce(spec, p, bound);
}

ReturnSet enumerate_returns(const LatticeMapSpec& spec, const Domain& domain, long long t) {
    if (t < 0) throw std::invalid_argument("enumerate_returns: t must be >= 0");
    if (domain.side < 1 || domain.side > spec.modulus)
        throw std::invalid_argument("enumerate_returns: domain side must be in [1, modulus]");
    if (domain.offset.x < 0 || domain.offset.y < 0 || domain.offset.x + domain.side > spec.modulus ||
        domain.offset.y + domain.side > spec.modulus)
        throw std::invalid_argument("enumerate_returns: domain exceeds the lattice");

    ReturnSet out;
    out.domain = domain;
    out.t = t;
    for (long long dx = 0; dx < domain.side; ++dx) {
        for (long long dy = 0; dy < domain.side; ++dy) {
            const LatticePoint p{domain.offset.x + dx, domain.offset.y + dy};
            if (domain.contains(iterate(spec, p, t))) out.members.push_back(p);
        }
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

PeriodicSet enumerate_periodic(const LatticeMapSpec& spec, long long t,
                               const std::optional<std::string>& line_id) {
    if (t < 1) throw std::invalid_argument("enumerate_periodic: t must be >= 1");
    PeriodicSet out;
    out.t = t;
    out.restricted_to_line = line_id;
    if (line_id) {
        const auto pair = involution_factors(spec);
        const auto& line = pair.line(*line_id);
        for (long long s = 0; s < line.size; ++s) {
            const LatticePoint p = line.at(s);
            if (iterate(spec, p, t) == p) out.members.push_back(p);
        }
    } else {
        const long long N = spec.modulus;
        for (long long x = 0; x < N; ++x)
            for (long long y = 0; y < N; ++y)
                if (const LatticePoint p{x, y}; iterate(spec, p, t) == p) out.members.push_back(p);
    }
    std::sort(out.members.begin(), out.members.end());
    out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
    return out;
}

}  // namespace qrec
