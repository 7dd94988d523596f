#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrec/gates.hpp"
#include "qrec/layout.hpp"
#include "qrec/rng.hpp"

namespace qrec {

enum class Backend { dense, compressed, automatic };
const char* to_string(Backend b);

/// Raised when a simulation would exceed a hard resource bound; never a
/// silent truncation.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeasurementRecord {
    std::string register_name;
    int shots = 0;
    std::map<std::uint64_t, long long> histogram;
    std::uint64_t seed = 0;

    std::vector<std::uint64_t> outcomes() const;  // histogram keys
};

/// Pure state over a register layout. The dense backend stores all 2^W
/// amplitudes and is capped at 24 qubits; the compressed backend stores only
/// nonzero amplitudes (cap 2^20 entries) and exploits that everything here
/// outside QFT/diffusion steps is a basis permutation.
class PureState {
  public:
    static constexpr int dense_qubit_limit = 24;
    static constexpr size_t compressed_entry_limit = 1ull << 20;

    static PureState alloc(const RegisterLayout& layout, const std::vector<std::uint64_t>& values,
                           Backend backend = Backend::automatic);

    const RegisterLayout& layout() const { return layout_; }
    Backend backend() const { return backend_; }
    int width() const { return layout_.total_width(); }

    void apply(const GateOp& op);
    void apply_circuit(const Circuit& c);

    /// Register-level Fourier transform, semantically identical to applying
    /// the QFT gate ladder; the compressed backend runs it as a grouped FFT
    /// so broad spectra do not pay per-gate hashing costs.
    void qft_register(const std::string& reg, bool inverse);

    void scale(std::complex<double> factor);

    double norm_sq() const;
    size_t nonzero_count() const;
    std::complex<double> amplitude(std::uint64_t index) const;

    /// All nonzero amplitudes, sorted by basis index.
    std::vector<std::pair<std::uint64_t, std::complex<double>>> entries() const;

    /// Exact marginal distribution of one register (value -> probability).
    std::map<std::uint64_t, double> register_distribution(const std::string& reg) const;

    /// i.i.d. samples of a register's marginal; deterministic per seed.
    MeasurementRecord measure(const std::string& reg, int shots, std::uint64_t seed) const;

    /// Projective measurement: picks a value, collapses, renormalizes.
    std::uint64_t collapse_register(const std::string& reg, Rng& rng);

    PureState to_backend(Backend b) const;

  private:
    PureState() = default;
    void apply_dense(const GateOp& op);
    void apply_compressed(const GateOp& op);
    void check_compressed_size(size_t projected) const;

    RegisterLayout layout_;
    Backend backend_ = Backend::compressed;
    std::vector<std::complex<double>> dense_;
    std::unordered_map<std::uint64_t, std::complex<double>> sparse_;
};

/// Per-basis-state sign flip on a bit pattern; plumbing shared by oracles and
/// diffusion.
void phase_flip_on_pattern(PureState& state, const std::vector<PatternBit>& pattern);

}  // namespace qrec
