#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrec/gates.hpp"
#include "qrec/lattice_map.hpp"
#include "qrec/orbit_sets.hpp"
#include "qrec/state.hpp"

namespace qrec {

struct IterationPlan {
    long long k = 0;
    double theta = 0.0;
    double predicted_success = 0.0;
};

/// k = round(pi / (4 asin(sqrt(M/S))) - 1/2), clamped at 0, with the
/// predicted success sin^2((2k+1) theta). M = 0 is rejected; use the
/// unknown-M schedule instead.
IterationPlan optimal_iterations(long long S, long long M);

struct GroverConfig {
    std::optional<long long> iterations;  // explicit k; otherwise auto
    std::optional<long long> m_hint;      // known or counted M, for the auto schedule
    int shots = 256;
    std::uint64_t seed = 0;
    Backend backend = Backend::automatic;
};

struct FoundPoint {
    LatticePoint point;
    long long count = 0;
    std::optional<long long> minimal_period;  // periodic searches only
};

struct SearchResult {
    std::string condition;  // "returns" | "periodic" | "periodic-line"
    long long t = 0;
    std::optional<Domain> domain;
    std::optional<std::string> line;
    long long search_space = 0;
    long long iterations = 0;
    bool auto_schedule = false;
    std::optional<long long> m_used;
    std::optional<double> predicted_success;
    /// Probability mass on classically-verified solutions in the final state
    /// (exact, from the simulated amplitudes).
    std::optional<double> exact_success_probability;
    std::vector<FoundPoint> found;  // verified samples only
    long long shots = 0;
    long long verified_count = 0;
    bool degenerate_all_marked = false;
    bool no_solutions_reported = false;
    GateStats gates_per_iteration;
    GateStats gates_total;
    int width = 0;
    Backend backend_used = Backend::compressed;
    std::uint64_t seed = 0;
};

/// Amplitude search for domain points whose t-th iterate returns to the
/// domain. The domain square is conjugated to the corner, so membership is a
/// test that the high qubits of both coordinates vanish; the oracle runs the
/// map forward, flips the phase, and runs it backward.
SearchResult grover_return_search(const LatticeMapSpec& spec, const Domain& domain, long long t,
                                  const GroverConfig& cfg = {});

/// Amplitude search for points of period dividing t: iterates are computed
/// into companion registers, compared bitwise against the retained initial
/// coordinates, and uncomputed. With a symmetry line id the search runs over
/// the N line points instead of the N^2 lattice.
SearchResult grover_periodic_search(const LatticeMapSpec& spec, long long t,
                                    const GroverConfig& cfg = {},
                                    const std::optional<std::string>& line = std::nullopt);

/// Basis states the oracle phase-flips, read off the amplitude signs before
/// any diffusion, decoded to lattice points.
std::vector<LatticePoint> return_oracle_marked_set(const LatticeMapSpec& spec,
                                                   const Domain& domain, long long t,
                                                   Backend backend = Backend::automatic);
std::vector<LatticePoint> periodic_oracle_marked_set(const LatticeMapSpec& spec, long long t,
                                                     const std::optional<std::string>& line =
                                                         std::nullopt,
                                                     Backend backend = Backend::automatic);

/// Preparation plus k Grover iterations, for netlist export and cost reports.
Circuit build_return_search_circuit(const LatticeMapSpec& spec, const Domain& domain, long long t,
                                    long long k);
Circuit build_periodic_search_circuit(const LatticeMapSpec& spec, long long t, long long k,
                                      const std::optional<std::string>& line = std::nullopt);

/// Checks that every non-search register is exactly |0> on all nonzero
/// components (uncompute discipline) after a single oracle application.
bool oracle_workspace_clean(const LatticeMapSpec& spec, const Domain* domain, long long t,
                            const std::optional<std::string>& line, Backend backend);

}  // namespace qrec
