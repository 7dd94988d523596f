#include "qrec/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "search_problem.hpp"

namespace qrec {

CountCondition CountCondition::returns(Domain d, long long t) {
    CountCondition c;
    c.kind = Kind::returns;
    c.domain = d;
    c.t = t;
    return c;
}

CountCondition CountCondition::periodic(long long t, std::optional<std::string> line) {
    CountCondition c;
    c.kind = Kind::periodic;
    c.t = t;
    c.line = std::move(line);
    return c;
}

namespace {

Backend resolve_backend(Backend requested, int width) {
    if (requested != Backend::automatic) return requested;
    return width <= 20 ? Backend::dense : Backend::compressed;
}

}  // namespace

CountResult quantum_count(const LatticeMapSpec& spec, const CountCondition& condition,
                          const CountConfig& cfg) {
    if (cfg.c < 3) throw std::invalid_argument("quantum_count: counting width must be >= 3");

    detail::SearchProblem prob =
        condition.kind == CountCondition::Kind::returns
            ? detail::make_return_problem(spec, *condition.domain, condition.t)
            : (condition.line ? detail::make_line_problem(spec, condition.t, *condition.line)
                              : detail::make_periodic_problem(spec, condition.t));

    // Counting register goes on top so the search-problem qubit indices stay
    // valid in the extended layout.
    std::vector<std::pair<std::string, int>> regs;
    for (const auto& r : prob.layout.registers()) regs.emplace_back(r.name, r.width);
    regs.emplace_back("cnt", cfg.c);
    RegisterLayout layout(regs);
    const auto cq = layout.qubits("cnt");

    // Controlled Grover operator for one counting qubit: the oracle's and
    // diffusion's phase flips pick up the control, the basis permutations and
    // the Hadamard conjugation need none, and a Z on the control supplies the
    // controlled global flip that completes the exact inversion about the
    // mean.
    auto controlled_iteration = [&](int control) {
        Circuit c(layout);
        for (const auto& op : prob.oracle.ops()) {
            if (op.kind == GateKind::multi_controlled_z) {
                auto pattern = op.pattern;
                pattern.push_back({control, 1});
                c.push(GateOp::multi_controlled_z(std::move(pattern)));
            } else {
                c.push(op);
            }
        }
        for (int q : prob.search_qubits) c.push(GateOp::hadamard(q));
        std::vector<PatternBit> zeros;
        for (int q : prob.search_qubits) zeros.push_back({q, 0});
        zeros.push_back({control, 1});
        c.push(GateOp::multi_controlled_z(std::move(zeros)));
        for (int q : prob.search_qubits) c.push(GateOp::hadamard(q));
        c.push(GateOp::phase_z(control));
        return c;
    };

    Circuit full(layout);
    for (int q : cq) full.push(GateOp::hadamard(q));
    for (const auto& op : prob.prep.ops()) full.push(op);
    for (int j = 0; j < cfg.c; ++j) {
        const Circuit cg = controlled_iteration(cq[static_cast<size_t>(j)]);
        for (long long rep = 0; rep < (1ll << j); ++rep) full.append(cg);
    }
    Circuit bookkeeping = full;
    bookkeeping.add_iqft("cnt");

    const Backend backend = resolve_backend(cfg.backend, layout.total_width());
    std::vector<std::uint64_t> zeros_init(layout.registers().size(), 0);
    PureState state = PureState::alloc(layout, zeros_init, backend);
    state.apply_circuit(full);
    state.qft_register("cnt", true);

    const auto dist = state.register_distribution("cnt");
    std::uint64_t best = 0;
    double best_p = -1.0;
    for (const auto& [k, p] : dist) {
        if (p > best_p) {
            best = k;
            best_p = p;
        }
    }

    CountResult res;
    res.search_space = prob.search_space;
    res.c = cfg.c;
    res.observed_index = best;
    res.width = layout.total_width();
    res.backend_used = backend;
    res.seed = cfg.seed;
    res.gates = bookkeeping.stats();
    res.histogram = state.measure("cnt", cfg.shots, cfg.seed);

    const double S = static_cast<double>(prob.search_space);
    const double denom = static_cast<double>(1ll << cfg.c);
    double theta = std::numbers::pi * static_cast<double>(best) / denom;
    if (theta > std::numbers::pi / 2.0) theta = std::numbers::pi - theta;  // fold the mirror peak
    res.theta = theta;
    res.m_estimate = S * std::pow(std::sin(theta), 2);
    const double step = std::numbers::pi / denom;
    const double lo = std::clamp(theta - step, 0.0, std::numbers::pi / 2.0);
    const double hi = std::clamp(theta + step, 0.0, std::numbers::pi / 2.0);
    res.interval_lo = S * std::pow(std::sin(lo), 2);
    res.interval_hi = S * std::pow(std::sin(hi), 2);
    return res;
}

}  // namespace qrec
