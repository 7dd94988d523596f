#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrec/gates.hpp"
#include "qrec/lattice_map.hpp"
#include "qrec/mat2.hpp"
#include "qrec/state.hpp"

namespace qrec {

struct PeriodFindingConfig {
    int p = 0;  // time-register width; 0 picks 2*ceil(log2 g) + 1
    Backend backend = Backend::automatic;
    int shots = 16;
    std::uint64_t seed = 0;
    int multiple_bound = 8;  // convergent denominators are tried up to this multiplier
};

struct PeriodResult {
    std::string target;
    long long modulus = 0;
    Mat2 matrix;
    std::optional<LatticePoint> point;
    int p = 0;
    int width = 0;
    Backend backend_used = Backend::compressed;
    int shots = 0;
    std::uint64_t seed = 0;
    MeasurementRecord outcomes;
    std::optional<long long> period;
    bool verified = false;
    std::vector<long long> rejected_candidates;
    GateStats gates;
    /// "direct": QFT applied to the whole state, shots sampled i.i.d.
    /// "deferred-collapse": value registers measured first per shot (the two
    /// orders commute), which keeps broad spectra inside the backend limits.
    std::string simulation_path;
};

struct ExtractResult {
    std::optional<long long> period;
    std::vector<long long> rejected;
};

/// Classical post-processing of measured time-register indices: for each
/// outcome k the convergent denominators of k / 2^p are candidate periods,
/// additionally multiplied by small integers (a measured approximant may
/// carry only a divisor of the period). The 0/1 convergent contributes the
/// bare candidate 1 — outcome 0 alone carries no period information and must
/// not vouch for anything larger. Smallest verified candidate wins.
ExtractResult extract_period(const std::vector<std::uint64_t>& outcomes, int p,
                             const std::function<bool(long long)>& verifier,
                             int multiple_bound = 8);

/// Full quantum lattice-period run: time register in superposition,
/// conditioned multiplications by the precomputed squarings build the matrix
/// power, the time register is Fourier transformed, measured, and the period
/// is extracted and verified classically.
PeriodResult q_lattice_period(const Mat2& L, long long g, const PeriodFindingConfig& cfg = {});

/// Period of a single lattice point: same skeleton, with the coordinate pair
/// advanced by conditioned applications of the map's 2^k-th powers. Requires
/// a map with a fast power form (cat/affine, or integer-K sawtooth).
PeriodResult q_point_period(const LatticeMapSpec& spec, LatticePoint point,
                            const PeriodFindingConfig& cfg = {});

/// The constructed circuits, for cost reporting and netlist export.
Circuit build_lattice_period_circuit(const Mat2& L, long long g, int p);
Circuit build_point_period_circuit(const LatticeMapSpec& spec, LatticePoint point, int p);

/// Exact time-register distribution after the transform (direct path),
/// keyed by measured index.
std::map<std::uint64_t, double> lattice_period_spectrum(const Mat2& L, long long g, int p,
                                                        Backend backend = Backend::automatic);

int default_time_width(long long modulus);

}  // namespace qrec
