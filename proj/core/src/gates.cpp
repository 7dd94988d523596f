#include "qrec/gates.hpp"

#include <numbers>
#include <random>
#include <stdexcept>

namespace qrec {

const char* to_string(GateKind k) {
    switch (k) {
        case GateKind::hadamard: return "h";
        case GateKind::flip_x: return "x";
        case GateKind::phase_z: return "z";
        case GateKind::controlled_phase: return "cp";
        case GateKind::swap: return "swap";
        case GateKind::multi_controlled_z: return "mcz";
        case GateKind::permutation: return "perm";
    }
    return "?";
}

std::shared_ptr<const PermSpec> make_permutation(std::string name, std::vector<int> qubits,
                                                 long long elementary_estimate,
                                                 std::function<std::uint64_t(std::uint64_t)> fwd,
                                                 std::function<std::uint64_t(std::uint64_t)> inv) {
    if (qubits.empty()) throw std::invalid_argument("permutation: empty qubit subset");
    const int w = static_cast<int>(qubits.size());
    if (fwd && inv) {
        const std::uint64_t space = 1ull << w;
        if (w <= 12) {
            std::vector<bool> seen(space, false);
            for (std::uint64_t v = 0; v < space; ++v) {
                const std::uint64_t image = fwd(v);
                if (image >= space || seen[image])
                    throw std::logic_error("permutation '" + name + "' is not a bijection");
                seen[image] = true;
                if (inv(image) != v)
                    throw std::logic_error("permutation '" + name + "' has a wrong inverse");
            }
        } else {
            std::mt19937_64 rng(0x5eedu ^ (static_cast<std::uint64_t>(w) << 32));
            for (int i = 0; i < 10000; ++i) {
                const std::uint64_t v = rng() & (space - 1ull);
                if (fwd(v) >= space || inv(fwd(v)) != v || fwd(inv(v)) != v)
                    throw std::logic_error("permutation '" + name + "' fails the round-trip check");
            }
        }
    }
    auto spec = std::make_shared<PermSpec>();
    spec->name = std::move(name);
    spec->qubits = std::move(qubits);
    spec->elementary_estimate = elementary_estimate;
    spec->forward = std::move(fwd);
    spec->inverse = std::move(inv);
    return spec;
}

GateOp GateOp::hadamard(int q) {
    GateOp op;
    op.kind = GateKind::hadamard;
    op.q0 = q;
    return op;
}

GateOp GateOp::flip_x(int q) {
    GateOp op;
    op.kind = GateKind::flip_x;
    op.q0 = q;
    return op;
}

GateOp GateOp::phase_z(int q) {
    GateOp op;
    op.kind = GateKind::phase_z;
    op.q0 = q;
    return op;
}

GateOp GateOp::controlled_phase(double angle, int control, int target) {
    if (control == target) throw std::invalid_argument("controlled_phase: control == target");
    GateOp op;
    op.kind = GateKind::controlled_phase;
    op.q0 = control;
    op.q1 = target;
    op.angle = angle;
    return op;
}

GateOp GateOp::swap_qubits(int a, int b) {
    if (a == b) throw std::invalid_argument("swap: identical qubits");
    GateOp op;
    op.kind = GateKind::swap;
    op.q0 = a;
    op.q1 = b;
    return op;
}

GateOp GateOp::multi_controlled_z(std::vector<PatternBit> pattern) {
    for (size_t i = 0; i < pattern.size(); ++i)
        for (size_t j = i + 1; j < pattern.size(); ++j)
            if (pattern[i].qubit == pattern[j].qubit)
                throw std::invalid_argument("multi_controlled_z: duplicate pattern qubit");
    GateOp op;
    op.kind = GateKind::multi_controlled_z;
    op.pattern = std::move(pattern);
    return op;
}

GateOp GateOp::permutation(std::shared_ptr<const PermSpec> p) {
    if (!p) throw std::invalid_argument("permutation: null spec");
    GateOp op;
    op.kind = GateKind::permutation;
    op.perm = std::move(p);
    return op;
}

long long GateOp::elementary_cost() const {
    switch (kind) {
        case GateKind::multi_controlled_z:
            return cost::multi_controlled_z(static_cast<int>(pattern.size()));
        case GateKind::permutation:
            return perm->elementary_estimate;
        default:
            return cost::elementary;
    }
}

int GateOp::max_qubit() const {
    int m = 0;
    switch (kind) {
        case GateKind::hadamard:
        case GateKind::flip_x:
        case GateKind::phase_z:
            m = q0;
            break;
        case GateKind::controlled_phase:
        case GateKind::swap:
            m = std::max(q0, q1);
            break;
        case GateKind::multi_controlled_z:
            for (const auto& p : pattern) m = std::max(m, p.qubit);
            break;
        case GateKind::permutation:
            for (int q : perm->qubits) m = std::max(m, q);
            break;
    }
    return m;
}

long long GateStats::total_ops() const {
    long long t = 0;
    for (long long c : counts) t += c;
    return t;
}

GateStats& GateStats::operator+=(const GateStats& other) {
    for (size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    elementary += other.elementary;
    return *this;
}

void Circuit::push(GateOp op) {
    if (op.max_qubit() >= layout_.total_width())
        throw std::invalid_argument("circuit: gate references a qubit outside the layout");
    stats_.counts[static_cast<size_t>(op.kind)] += 1;
    stats_.elementary += op.elementary_cost();
    ops_.push_back(std::move(op));
}

void Circuit::append(const Circuit& other) {
    if (!(layout_ == other.layout_)) throw std::invalid_argument("circuit: layout mismatch");
    for (const auto& op : other.ops_) push(op);
}

void Circuit::add_hadamard_register(const std::string& reg) {
    for (int q : layout_.qubits(reg)) push(GateOp::hadamard(q));
}

void Circuit::add_qft_impl(const std::string& reg, bool inverse) {
    const auto qs = layout_.qubits(reg);
    const int w = static_cast<int>(qs.size());
    const double dir = inverse ? -1.0 : 1.0;
    if (!inverse) {
        // MSB first: H then the controlled-phase ladder from finer qubits.
        for (int i = w - 1; i >= 0; --i) {
            push(GateOp::hadamard(qs[static_cast<size_t>(i)]));
            for (int j = i - 1; j >= 0; --j) {
                const double angle = dir * std::numbers::pi / static_cast<double>(1ll << (i - j));
                push(GateOp::controlled_phase(angle, qs[static_cast<size_t>(j)],
                                              qs[static_cast<size_t>(i)]));
            }
        }
        for (int i = 0; i < w / 2; ++i)
            push(GateOp::swap_qubits(qs[static_cast<size_t>(i)], qs[static_cast<size_t>(w - 1 - i)]));
    } else {
        for (int i = 0; i < w / 2; ++i)
            push(GateOp::swap_qubits(qs[static_cast<size_t>(i)], qs[static_cast<size_t>(w - 1 - i)]));
        for (int i = 0; i < w; ++i) {
            for (int j = 0; j < i; ++j) {
                const double angle = dir * std::numbers::pi / static_cast<double>(1ll << (i - j));
                push(GateOp::controlled_phase(angle, qs[static_cast<size_t>(j)],
                                              qs[static_cast<size_t>(i)]));
            }
            push(GateOp::hadamard(qs[static_cast<size_t>(i)]));
        }
    }
}

void Circuit::add_qft(const std::string& reg) { add_qft_impl(reg, false); }
void Circuit::add_iqft(const std::string& reg) { add_qft_impl(reg, true); }

GateStats gate_count(const Circuit& c) { return c.stats(); }

}  // namespace qrec
