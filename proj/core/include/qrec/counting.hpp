#pragma once

#include <optional>
#include <string>

#include "qrec/grover.hpp"

namespace qrec {

struct CountCondition {
    enum class Kind { returns, periodic } kind = Kind::periodic;
    std::optional<Domain> domain;  // returns
    long long t = 1;
    std::optional<std::string> line;  // periodic, optional

    static CountCondition returns(Domain d, long long t);
    static CountCondition periodic(long long t, std::optional<std::string> line = std::nullopt);
};

struct CountConfig {
    int c = 5;  // counting-register width, >= 3
    std::uint64_t seed = 0;
    Backend backend = Backend::automatic;
    int shots = 64;  // sampled histogram recorded alongside the exact peak
};

struct CountResult {
    long long search_space = 0;
    int c = 0;
    /// Most probable counting-register index (exact distribution argmax).
    std::uint64_t observed_index = 0;
    double theta = 0.0;
    double m_estimate = 0.0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    MeasurementRecord histogram;
    GateStats gates;
    int width = 0;
    Backend backend_used = Backend::compressed;
    std::uint64_t seed = 0;
};

/// Phase estimation on the Grover operator of the chosen oracle: c counting
/// qubits control G^(2^j), an inverse transform reads the eigenphase
/// 2 theta with sin theta = sqrt(M/S), and M is estimated as
/// S sin^2(pi k / 2^c) with a +-pi/2^c phase-error interval.
CountResult quantum_count(const LatticeMapSpec& spec, const CountCondition& condition,
                          const CountConfig& cfg = {});

}  // namespace qrec
