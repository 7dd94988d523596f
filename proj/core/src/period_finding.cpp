#include "qrec/period_finding.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "qrec/blocks.hpp"
#include "qrec/contfrac.hpp"

namespace qrec {

namespace {

int ceil_log2(long long n) {
    int w = 0;
    while ((1ll << w) < n) ++w;
    return w;
}

struct SplitCircuit {
    Circuit pre_qft;   // preparation + conditioned steps
    Circuit full;      // pre_qft + the QFT ladder, for bookkeeping/netlist
    std::string time_reg;
};

Backend resolve_backend(Backend requested, int width) {
    if (requested != Backend::automatic) return requested;
    return width <= 20 ? Backend::dense : Backend::compressed;
}

/// Runs the period-finding skeleton: prepare, transform, measure `shots`
/// outcomes of the time register. Picks the direct path when the post-QFT
/// state provably fits the backend, otherwise measures the non-time registers
/// first, once per shot — the two measurements commute, so the outcome
/// distribution is identical and each shot is an independent full run.
MeasurementRecord run_and_measure(const SplitCircuit& circ, Backend backend, int shots,
                                  std::uint64_t seed, std::string& path_out) {
    const auto& layout = circ.pre_qft.layout();
    std::vector<std::uint64_t> zeros(layout.registers().size(), 0);
    PureState state = PureState::alloc(layout, zeros, backend);
    state.apply_circuit(circ.pre_qft);

    const auto& treg = layout.reg(circ.time_reg);
    const std::uint64_t tmask = ((1ull << treg.width) - 1ull) << treg.offset;

    // Distinct non-time patterns bound the post-QFT support.
    std::unordered_set<std::uint64_t> rest;
    for (const auto& [i, a] : state.entries()) rest.insert(i & ~tmask);
    const size_t projected = rest.size() << treg.width;

    const bool fits = backend == Backend::dense || projected <= PureState::compressed_entry_limit;
    MeasurementRecord rec;
    if (fits) {
        path_out = "direct";
        state.qft_register(circ.time_reg, false);
        rec = state.measure(circ.time_reg, shots, seed);
    } else {
        path_out = "deferred-collapse";
        rec.register_name = circ.time_reg;
        rec.shots = shots;
        rec.seed = seed;
        Rng rng(seed);
        for (int s = 0; s < shots; ++s) {
            PureState shot = state;
            for (const auto& r : layout.registers())
                if (r.name != circ.time_reg && r.width > 0) shot.collapse_register(r.name, rng);
            shot.qft_register(circ.time_reg, false);
            // One sample from the collapsed spectrum, drawn with the same rng.
            const auto dist = shot.register_distribution(circ.time_reg);
            double total = 0.0;
            for (const auto& [v, p] : dist) total += p;
            const double r = rng.uniform() * total;
            double run = 0.0;
            std::uint64_t picked = dist.rbegin()->first;
            for (const auto& [v, p] : dist) {
                run += p;
                if (r < run) {
                    picked = v;
                    break;
                }
            }
            rec.histogram[picked] += 1;
        }
    }
    return rec;
}

}  // namespace

int default_time_width(long long modulus) { return 2 * ceil_log2(modulus) + 1; }

ExtractResult extract_period(const std::vector<std::uint64_t>& outcomes, int p,
                             const std::function<bool(long long)>& verifier, int multiple_bound) {
    if (outcomes.empty()) throw std::invalid_argument("extract_period: no outcomes");
    if (p < 1 || p > 62) throw std::invalid_argument("extract_period: bad time width");
    const long long D = 1ll << p;
    std::set<long long> candidates;
    for (std::uint64_t k : outcomes) {
        for (const auto& conv : cf_convergents(static_cast<long long>(k), D)) {
            if (conv.den == 1) {
                candidates.insert(1);
                continue;
            }
            for (int j = 1; j <= multiple_bound; ++j) candidates.insert(conv.den * j);
        }
    }
    ExtractResult res;
    for (long long cand : candidates) {
        if (verifier(cand)) {
            res.period = cand;
            break;
        }
        res.rejected.push_back(cand);
    }
    return res;
}

Circuit build_lattice_period_circuit(const Mat2& L, long long g, int p) {
    const int nq = std::max(1, ceil_log2(g));
    RegisterLayout layout({{"t", p},
                           {"a", nq},
                           {"b", nq},
                           {"c", nq},
                           {"d", nq},
                           {"w1", nq},
                           {"w2", nq}});
    Circuit circ(layout);
    // |t=0>|1 0 0 1>|0>|0>, then the uniform superposition over t.
    circ.push(GateOp::flip_x(layout.reg("a").offset));
    circ.push(GateOp::flip_x(layout.reg("d").offset));
    circ.add_hadamard_register("t");
    // Conditioned right-multiplications by L^(2^i).
    const auto tq = layout.qubits("t");
    Mat2 power = mat_pow_mod(L, 1, g);
    for (int i = 0; i < p; ++i) {
        circ.push(matrix_step_block(layout, power, g, "a", "b", "c", "d", tq[static_cast<size_t>(i)]));
        power = mat_mul_mod(power, power, g);
    }
    circ.add_qft("t");
    return circ;
}

namespace {

SplitCircuit split_lattice_circuit(const Mat2& L, long long g, int p) {
    SplitCircuit out;
    out.time_reg = "t";
    out.full = build_lattice_period_circuit(L, g, p);
    out.pre_qft = Circuit(out.full.layout());
    const size_t qft_ops = out.full.size() - (static_cast<size_t>(p) + 2);
    (void)qft_ops;
    // Everything before the QFT ladder: 2 flips + p Hadamards + p steps.
    const size_t pre = 2 + 2 * static_cast<size_t>(p);
    for (size_t i = 0; i < pre; ++i) out.pre_qft.push(out.full.ops()[i]);
    return out;
}

SplitCircuit split_point_circuit(const LatticeMapSpec& spec, LatticePoint point, int p) {
    SplitCircuit out;
    out.time_reg = "t";
    out.full = build_point_period_circuit(spec, point, p);
    out.pre_qft = Circuit(out.full.layout());
    size_t flips = 0;
    for (const auto& op : out.full.ops())
        if (op.kind == GateKind::flip_x) ++flips;
    const size_t pre = flips + 2 * static_cast<size_t>(p);
    for (size_t i = 0; i < pre; ++i) out.pre_qft.push(out.full.ops()[i]);
    return out;
}

}  // namespace

PeriodResult q_lattice_period(const Mat2& L, long long g, const PeriodFindingConfig& cfg) {
    if (g < 2) throw std::invalid_argument("q_lattice_period: modulus must be >= 2");
    const int p = cfg.p > 0 ? cfg.p : default_time_width(g);
    const auto circ = split_lattice_circuit(L, g, p);
    const int width = circ.full.layout().total_width();
    const Backend backend = resolve_backend(cfg.backend, width);

    PeriodResult res;
    res.target = "alpha(g=" + std::to_string(g) + ")";
    res.modulus = g;
    res.matrix = L;
    res.p = p;
    res.width = width;
    res.backend_used = backend;
    res.shots = cfg.shots;
    res.seed = cfg.seed;
    res.gates = circ.full.stats();

    res.outcomes = run_and_measure(circ, backend, cfg.shots, cfg.seed, res.simulation_path);
    auto verifier = [&L, g](long long r) {
        if (r < 1) return false;
        return mat_pow_mod(L, static_cast<unsigned long long>(r), g) == mat_pow_mod(Mat2::identity(), 1, g);
    };
    auto extracted = extract_period(res.outcomes.outcomes(), p, verifier, cfg.multiple_bound);
    res.period = extracted.period;
    res.rejected_candidates = std::move(extracted.rejected);
    res.verified = res.period.has_value();
    return res;
}

Circuit build_point_period_circuit(const LatticeMapSpec& spec, LatticePoint point, int p) {
    if (!affine_form(spec))
        throw std::invalid_argument(
            "q_point_period: map has no fast power form (twist with non-integer K), "
            "the conditioned long-time steps cannot be built");
    const int nq = spec.qubits_per_coordinate();
    RegisterLayout layout({{"t", p}, {"x", nq}, {"y", nq}, {"w", 2}});
    Circuit circ(layout);
    const auto& xreg = layout.reg("x");
    const auto& yreg = layout.reg("y");
    for (int b = 0; b < nq; ++b) {
        if ((point.x >> b) & 1) circ.push(GateOp::flip_x(xreg.offset + b));
        if ((point.y >> b) & 1) circ.push(GateOp::flip_x(yreg.offset + b));
    }
    circ.add_hadamard_register("t");
    const auto tq = layout.qubits("t");
    for (int i = 0; i < p; ++i)
        circ.push(map_power_block(layout, spec, "x", "y", 1ull << i, tq[static_cast<size_t>(i)]));
    circ.add_qft("t");
    return circ;
}

PeriodResult q_point_period(const LatticeMapSpec& spec, LatticePoint point,
                            const PeriodFindingConfig& cfg) {
    if (point.x < 0 || point.x >= spec.modulus || point.y < 0 || point.y >= spec.modulus)
        throw std::out_of_range("q_point_period: point outside the lattice");
    const int p = cfg.p > 0 ? cfg.p : default_time_width(spec.modulus);
    const auto circ = split_point_circuit(spec, point, p);
    const int width = circ.full.layout().total_width();
    const Backend backend = resolve_backend(cfg.backend, width);

    PeriodResult res;
    res.target = "point(" + std::to_string(point.x) + "," + std::to_string(point.y) + ")";
    res.modulus = spec.modulus;
    res.point = point;
    res.p = p;
    res.width = width;
    res.backend_used = backend;
    res.shots = cfg.shots;
    res.seed = cfg.seed;
    res.gates = circ.full.stats();

    res.outcomes = run_and_measure(circ, backend, cfg.shots, cfg.seed, res.simulation_path);
    auto verifier = [&spec, point](long long r) {
        if (r < 1) return false;
        return fast_iterate(spec, point, static_cast<unsigned long long>(r)) == point;
    };
    auto extracted = extract_period(res.outcomes.outcomes(), p, verifier, cfg.multiple_bound);
    res.period = extracted.period;
    res.rejected_candidates = std::move(extracted.rejected);
    res.verified = res.period.has_value();
    return res;
}

std::map<std::uint64_t, double> lattice_period_spectrum(const Mat2& L, long long g, int p,
                                                        Backend backend) {
    const auto circ = split_lattice_circuit(L, g, p);
    const Backend b = resolve_backend(backend, circ.full.layout().total_width());
    std::vector<std::uint64_t> zeros(circ.full.layout().registers().size(), 0);
    PureState state = PureState::alloc(circ.full.layout(), zeros, b);
    state.apply_circuit(circ.pre_qft);
    state.qft_register("t", false);
    return state.register_distribution("t");
}

}  // namespace qrec
