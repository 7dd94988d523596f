#pragma once

#include <array>
#include <vector>

#include "qrec/lattice_map.hpp"

namespace qrec {

/// Point on the unit torus, both coordinates in [0, 1).
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;
    TorusPoint wrapped() const;
};

/// The continuous-time twist family behind the lattice discretizations, on
/// (theta, n) with both angles mod 2 pi:
///   n'     = n + s * K * v(theta)
///   theta' = theta + n'
/// where v is -sin(theta) for the standard potential and theta - pi for the
/// sawtooth, and s = +1 (printed) or -1 (continuous convention).
struct ContinuousTwistMap {
    Potential potential = Potential::standard;
    double K = 1.0;
    MomentumSign sign = MomentumSign::continuous;

    /// One step; input and output as TorusPoints (x = theta / 2pi, y = n / 2pi).
    TorusPoint step(TorusPoint p) const;
    /// Jacobian of the step at p, rows d(theta', n') over columns d(theta, n).
    std::array<std::array<double, 2>, 2> jacobian(TorusPoint p) const;
};

struct NewtonOptions {
    int max_iterations = 50;
    double capture_radius = 1e-2;  // largest seed closure error accepted
    double tolerance = 1e-12;      // target closure residual (radians)
};

struct NewtonResult {
    bool converged = false;
    std::vector<TorusPoint> orbit;
    double residual = 0.0;  // max norm of the closure equations, radians
    int iterations = 0;
};

/// Damped Newton on the period-t closure equations T(z_i) = z_{i+1 (mod t)}
/// over all orbit points at once. The seed must already close to within the
/// capture radius; non-convergence is reported in the result, never silently.
NewtonResult newton_refine_periodic(const ContinuousTwistMap& map,
                                    const std::vector<TorusPoint>& seed_orbit,
                                    const NewtonOptions& options = {});

}  // namespace qrec
