#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qrec/layout.hpp"

namespace qrec {

/// Elementary-gate cost model. Single-qubit and two-qubit gates count 1; a
/// multi-controlled Z on k qubits follows the ancilla-free quadratic
/// construction; permutation blocks carry an estimate derived from standard
/// reversible-arithmetic circuits (ripple adders, controlled constant
/// multipliers) for the block they stand in for.
namespace cost {

constexpr long long elementary = 1;

constexpr long long multi_controlled_z(int pattern_qubits) {
    return pattern_qubits <= 1 ? 1 : static_cast<long long>(pattern_qubits) * pattern_qubits;
}

constexpr long long copy_register(int w) { return w; }
constexpr long long mod_add(int w) { return 4ll * w; }
constexpr long long controlled_mod_mul(int w) { return 4ll * w * w + 2ll * w; }

/// Four-register matrix entry update: two copy/uncopy rounds, eight in-place
/// controlled multiplications plus the mirrored uncompute, four additions.
constexpr long long matrix_entry_step(int w) {
    return 16 * controlled_mod_mul(w) + 8 * mod_add(w) + 4 * copy_register(w);
}

/// One linear map application on an (x, y) register pair.
constexpr long long pair_matrix_step(int w) {
    return 8 * controlled_mod_mul(w) + 4 * mod_add(w) + 2 * copy_register(w);
}

/// One twist-map step: the force table folds into two in-place adders for the
/// sawtooth; the standard potential pays for a fixed-point sine evaluation.
constexpr long long twist_step(bool standard, int w) {
    return standard ? 4ll * w * w * w + 2 * mod_add(w) : 2 * mod_add(w);
}

constexpr long long translate(int w) { return 4ll * w; }
constexpr long long xor_pair(int w) { return 2ll * w; }
constexpr long long line_embed(int w) { return 2ll * w; }

}  // namespace cost

/// One condition bit of a multi-controlled phase flip.
struct PatternBit {
    int qubit = 0;
    int value = 0;  // required value, 0 or 1
    bool operator==(const PatternBit&) const = default;
};

/// A classical bijection acting on a subset of qubits, with its inverse and
/// an elementary-gate estimate for the reversible circuit it stands in for.
/// Bijectivity is verified at construction: exhaustively up to 12 subspace
/// qubits, by seeded random round-trips above that.
struct PermSpec {
    std::string name;
    std::vector<int> qubits;  // subset, LSB of the packed subspace value first
    long long elementary_estimate = 0;
    std::function<std::uint64_t(std::uint64_t)> forward;  // may be absent when parsed
    std::function<std::uint64_t(std::uint64_t)> inverse;

    bool applicable() const { return static_cast<bool>(forward); }
};

std::shared_ptr<const PermSpec> make_permutation(std::string name, std::vector<int> qubits,
                                                 long long elementary_estimate,
                                                 std::function<std::uint64_t(std::uint64_t)> fwd,
                                                 std::function<std::uint64_t(std::uint64_t)> inv);

enum class GateKind : int {
    hadamard = 0,
    flip_x,
    phase_z,
    controlled_phase,
    swap,
    multi_controlled_z,
    permutation,
};

constexpr int gate_kind_count = 7;
const char* to_string(GateKind k);

struct GateOp {
    GateKind kind = GateKind::hadamard;
    int q0 = 0, q1 = 0;
    double angle = 0.0;                    // controlled_phase
    std::vector<PatternBit> pattern;       // multi_controlled_z
    std::shared_ptr<const PermSpec> perm;  // permutation

    static GateOp hadamard(int q);
    static GateOp flip_x(int q);
    static GateOp phase_z(int q);
    static GateOp controlled_phase(double angle, int control, int target);
    static GateOp swap_qubits(int a, int b);
    static GateOp multi_controlled_z(std::vector<PatternBit> pattern);
    static GateOp permutation(std::shared_ptr<const PermSpec> p);

    long long elementary_cost() const;
    int max_qubit() const;
};

struct GateStats {
    std::array<long long, gate_kind_count> counts{};
    long long elementary = 0;

    long long count(GateKind k) const { return counts[static_cast<size_t>(k)]; }
    long long total_ops() const;
    GateStats& operator+=(const GateStats& other);
    bool operator==(const GateStats&) const = default;
};

/// A gate sequence over a fixed register layout, with count bookkeeping.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(RegisterLayout layout) : layout_(std::move(layout)) {}

    const RegisterLayout& layout() const { return layout_; }
    const std::vector<GateOp>& ops() const { return ops_; }
    size_t size() const { return ops_.size(); }

    void push(GateOp op);
    void append(const Circuit& other);  // same layout
    GateStats stats() const { return stats_; }

    /// Gates appended per helper:
    void add_hadamard_register(const std::string& reg);
    void add_qft(const std::string& reg);   // H + controlled-phase ladder + reversal swaps
    void add_iqft(const std::string& reg);  // exact inverse ladder

  private:
    void add_qft_impl(const std::string& reg, bool inverse);

    RegisterLayout layout_;
    std::vector<GateOp> ops_;
    GateStats stats_;
};

GateStats gate_count(const Circuit& c);

}  // namespace qrec
