#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qrec/lattice_map.hpp"

namespace qrec {

/// A line of fixed points of one involution factor, parameterized by a single
/// lattice coordinate: exactly `size` points, at(s) for s in [0, size).
struct SymmetryLine {
    std::string id;
    int involution = 1;  // 1 or 2
    long long size = 0;
    std::function<LatticePoint(long long)> at;

    std::vector<LatticePoint> points() const;
    bool contains(const LatticePoint& p) const;
};

/// Factorization of a twist map T into two involutions, T = I1 o I2 with
/// I1^2 = I2^2 = identity:
///   I1(x, y) = (y - x, y)
///   I2(x, y) = (-x, y + delta(x))
/// I2 is an involution exactly when the discretized force is odd modulo N
/// (delta(-x) + delta(x) = 0 mod N); that holds for integer-K sawtooth maps
/// and is checked exhaustively on construction.
struct InvolutionPair {
    std::function<LatticePoint(LatticePoint)> i1;
    std::function<LatticePoint(LatticePoint)> i2;
    std::vector<SymmetryLine> lines;

    const SymmetryLine& line(const std::string& id) const;
};

/// Throws if the spec is not a twist map or if the discretized force breaks
/// the involution identity (no implemented decomposition).
InvolutionPair involution_factors(const LatticeMapSpec& spec);

}  // namespace qrec
