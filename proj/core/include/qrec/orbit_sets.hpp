#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrec/lattice_map.hpp"

namespace qrec {

/// A corner-anchorable square search domain: side x side points starting at
/// offset. side is a power of two for the quantum searches; the classical
/// enumerations accept any side.
struct Domain {
    long long side = 1;
    LatticePoint offset;

    bool contains(const LatticePoint& p) const {
        return p.x >= offset.x && p.x < offset.x + side && p.y >= offset.y &&
               p.y < offset.y + side;
    }
    constexpr bool operator==(const Domain&) const = default;
};

/// Smallest t in [1, t_max] with iterate(spec, p, t) = p, if any.
std::optional<long long> point_period_bruteforce(const LatticeMapSpec& spec, LatticePoint p,
                                                 long long t_max);

/// Points of the domain whose t-th iterate lands back in the domain,
/// found by exhaustive scan of all side^2 starting points.
struct ReturnSet {
    Domain domain;
    long long t = 0;
    std::vector<LatticePoint> members;  // sorted
    long long m() const { return static_cast<long long>(members.size()); }
};

ReturnSet enumerate_returns(const LatticeMapSpec& spec, const Domain& domain, long long t);

/// Points with iterate(spec, p, t) = p — period dividing t, the condition a
/// bitwise comparison oracle actually tests. Optionally restricted to one
/// symmetry line of the map's involution factorization.
struct PeriodicSet {
    long long t = 0;
    std::vector<LatticePoint> members;  // sorted
    std::optional<std::string> restricted_to_line;
    long long m() const { return static_cast<long long>(members.size()); }
};

PeriodicSet enumerate_periodic(const LatticeMapSpec& spec, long long t,
                               const std::optional<std::string>& line_id = std::nullopt);

/// Minimal period of p (searching up to bound), for refining a
/// period-divides-t hit into an exact period.
std::optional<long long> minimal_period(const LatticeMapSpec& spec, LatticePoint p,
                                        long long bound);

}  // namespace qrec
