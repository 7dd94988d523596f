#include "qrec/grover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qrec/blocks.hpp"
#include "qrec/involutions.hpp"

#include "search_problem.hpp"

namespace qrec {

namespace {

int ceil_log2(long long n) {
    int w = 0;
    while ((1ll << w) < n) ++w;
    return w;
}

int exact_log2(long long n, const char* what) {
    if (n < 1 || (n & (n - 1)) != 0)
        throw std::invalid_argument(std::string(what) + " must be a power of two");
    return ceil_log2(n);
}

Backend resolve_backend(Backend requested, int width) {
    if (requested != Backend::automatic) return requested;
    return width <= 20 ? Backend::dense : Backend::compressed;
}

}  // namespace

namespace detail {

Circuit make_iteration(const SearchProblem& prob) {
    Circuit it(prob.layout);
    it.append(prob.oracle);
    add_diffusion(it, prob.search_qubits);
    return it;
}

SearchProblem make_return_problem(const LatticeMapSpec& spec, const Domain& domain, long long t) {
    if (t < 0) throw std::invalid_argument("grover_return_search: t must be >= 0");
    if (!spec.power_of_two_modulus())
        throw std::invalid_argument("grover_return_search: lattice size must be a power of two");
    const int nq = spec.qubits_per_coordinate();
    const int p = exact_log2(domain.side, "grover_return_search: domain side");
    if (domain.side > spec.modulus || domain.offset.x < 0 || domain.offset.y < 0 ||
        domain.offset.x + domain.side > spec.modulus ||
        domain.offset.y + domain.side > spec.modulus)
        throw std::invalid_argument("grover_return_search: domain exceeds the lattice");

    SearchProblem prob;
    prob.layout = RegisterLayout({{"x", nq}, {"y", nq}, {"w", 2}});
    prob.search_space = domain.side * domain.side;

    const auto xq = prob.layout.qubits("x");
    const auto yq = prob.layout.qubits("y");
    for (int i = 0; i < p; ++i) {
        prob.search_qubits.push_back(xq[static_cast<size_t>(i)]);
        prob.search_qubits.push_back(yq[static_cast<size_t>(i)]);
    }

    prob.prep = Circuit(prob.layout);
    for (int q : prob.search_qubits) prob.prep.push(GateOp::hadamard(q));

    // Oracle: conjugate the domain to the corner, run the map, test the high
    // qubits, undo everything but the flip.
    prob.oracle = Circuit(prob.layout);
    const bool offset = domain.offset.x != 0 || domain.offset.y != 0;
    auto push_forward = [&](Circuit& c) {
        if (offset)
            c.push(translate_block(prob.layout, "x", "y", domain.offset.x, domain.offset.y,
                                   spec.modulus, false));
        for (long long i = 0; i < t; ++i)
            c.push(map_step_block(prob.layout, spec, "x", "y", false));
        if (offset)
            c.push(translate_block(prob.layout, "x", "y", domain.offset.x, domain.offset.y,
                                   spec.modulus, true));
    };
    auto push_backward = [&](Circuit& c) {
        if (offset)
            c.push(translate_block(prob.layout, "x", "y", domain.offset.x, domain.offset.y,
                                   spec.modulus, false));
        for (long long i = 0; i < t; ++i)
            c.push(map_step_block(prob.layout, spec, "x", "y", true));
        if (offset)
            c.push(translate_block(prob.layout, "x", "y", domain.offset.x, domain.offset.y,
                                   spec.modulus, true));
    };
    push_forward(prob.oracle);
    std::vector<PatternBit> high_zero;
    for (int i = p; i < nq; ++i) {
        high_zero.push_back({xq[static_cast<size_t>(i)], 0});
        high_zero.push_back({yq[static_cast<size_t>(i)], 0});
    }
    prob.oracle.push(GateOp::multi_controlled_z(high_zero));
    push_backward(prob.oracle);

    prob.sample_regs = {"x", "y"};
    const long long N = spec.modulus;
    prob.decode = [nq, domain, N](std::uint64_t packed) {
        const std::uint64_t mask = (1ull << nq) - 1ull;
        const long long qx = static_cast<long long>(packed & mask);
        const long long qy = static_cast<long long>((packed >> nq) & mask);
        return LatticePoint{(qx + domain.offset.x) % N, (qy + domain.offset.y) % N};
    };
    prob.verify = [spec, domain, t](const LatticePoint& pt) {
        return domain.contains(pt) && domain.contains(iterate(spec, pt, t));
    };
    return prob;
}

SearchProblem make_periodic_problem(const LatticeMapSpec& spec, long long t) {
    if (t < 1) throw std::invalid_argument("grover_periodic_search: t must be >= 1");
    if (!spec.power_of_two_modulus())
        throw std::invalid_argument("grover_periodic_search: lattice size must be a power of two");
    const int nq = spec.qubits_per_coordinate();

    SearchProblem prob;
    prob.layout = RegisterLayout({{"x", nq}, {"y", nq}, {"xt", nq}, {"yt", nq}, {"w", 2}});
    prob.search_space = spec.modulus * spec.modulus;
    for (int q : prob.layout.qubits("x")) prob.search_qubits.push_back(q);
    for (int q : prob.layout.qubits("y")) prob.search_qubits.push_back(q);

    prob.prep = Circuit(prob.layout);
    for (int q : prob.search_qubits) prob.prep.push(GateOp::hadamard(q));

    prob.oracle = Circuit(prob.layout);
    const GateOp copy = xor_pair_block(prob.layout, "x", "y", "xt", "yt");
    prob.oracle.push(copy);
    for (long long i = 0; i < t; ++i)
        prob.oracle.push(map_step_block(prob.layout, spec, "xt", "yt", false));
    prob.oracle.push(copy);  // companions now hold iterate xor initial
    std::vector<PatternBit> all_zero;
    for (int q : prob.layout.qubits("xt")) all_zero.push_back({q, 0});
    for (int q : prob.layout.qubits("yt")) all_zero.push_back({q, 0});
    prob.oracle.push(GateOp::multi_controlled_z(all_zero));
    prob.oracle.push(copy);
    for (long long i = 0; i < t; ++i)
        prob.oracle.push(map_step_block(prob.layout, spec, "xt", "yt", true));
    prob.oracle.push(copy);

    prob.sample_regs = {"x", "y"};
    prob.decode = [nq](std::uint64_t packed) {
        const std::uint64_t mask = (1ull << nq) - 1ull;
        return LatticePoint{static_cast<long long>(packed & mask),
                            static_cast<long long>((packed >> nq) & mask)};
    };
    prob.verify = [spec, t](const LatticePoint& pt) { return iterate(spec, pt, t) == pt; };
    return prob;
}

SearchProblem make_line_problem(const LatticeMapSpec& spec, long long t, const std::string& line_id) {
    if (t < 1) throw std::invalid_argument("grover_periodic_search: t must be >= 1");
    const auto pair = involution_factors(spec);
    const auto& line = pair.line(line_id);
    const int nq = spec.qubits_per_coordinate();

    SearchProblem prob;
    prob.layout = RegisterLayout({{"s", nq}, {"xt", nq}, {"yt", nq}, {"w", 2}});
    prob.search_space = line.size;
    prob.search_qubits = prob.layout.qubits("s");

    prob.prep = Circuit(prob.layout);
    for (int q : prob.search_qubits) prob.prep.push(GateOp::hadamard(q));

    prob.oracle = Circuit(prob.layout);
    const GateOp embed = line_embed_block(prob.layout, line, "s", "xt", "yt");
    prob.oracle.push(embed);
    for (long long i = 0; i < t; ++i)
        prob.oracle.push(map_step_block(prob.layout, spec, "xt", "yt", false));
    prob.oracle.push(embed);
    std::vector<PatternBit> all_zero;
    for (int q : prob.layout.qubits("xt")) all_zero.push_back({q, 0});
    for (int q : prob.layout.qubits("yt")) all_zero.push_back({q, 0});
    prob.oracle.push(GateOp::multi_controlled_z(all_zero));
    prob.oracle.push(embed);
    for (long long i = 0; i < t; ++i)
        prob.oracle.push(map_step_block(prob.layout, spec, "xt", "yt", true));
    prob.oracle.push(embed);

    prob.sample_regs = {"s"};
    auto at = line.at;
    prob.decode = [at](std::uint64_t packed) { return at(static_cast<long long>(packed)); };
    prob.verify = [spec, t](const LatticePoint& pt) { return iterate(spec, pt, t) == pt; };
    return prob;
}

PureState fresh_state(const SearchProblem& prob, Backend backend) {
    std::vector<std::uint64_t> zeros(prob.layout.registers().size(), 0);
    PureState s = PureState::alloc(prob.layout, zeros, backend);
    s.apply_circuit(prob.prep);
    return s;
}

std::uint64_t packed_sample_value(const SearchProblem& prob, const RegisterLayout& layout,
                                  std::uint64_t index) {
    std::uint64_t packed = 0;
    int shift = 0;
    for (const auto& name : prob.sample_regs) {
        const auto& r = layout.reg(name);
        packed |= layout.extract(index, name) << shift;
        shift += r.width;
    }
    return packed;
}

}  // namespace detail

namespace {

using detail::SearchProblem;
using detail::make_iteration;
using detail::fresh_state;
using detail::packed_sample_value;
using detail::make_return_problem;
using detail::make_periodic_problem;
using detail::make_line_problem;

std::map<std::uint64_t, double> sample_distribution(const SearchProblem& prob,
                                                    const PureState& state) {
    std::map<std::uint64_t, double> dist;
    for (const auto& [i, a] : state.entries())
        dist[packed_sample_value(prob, state.layout(), i)] += std::norm(a);
    return dist;
}

std::uint64_t draw(const std::map<std::uint64_t, double>& dist, Rng& rng) {
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
    return picked;
}

SearchResult run_search(const SearchProblem& prob, const LatticeMapSpec& spec, long long t,
                        const GroverConfig& cfg, SearchResult res) {
    const Circuit iteration = make_iteration(prob);
    res.t = t;
    res.search_space = prob.search_space;
    res.width = prob.layout.total_width();
    res.gates_per_iteration = iteration.stats();
    res.seed = cfg.seed;
    const Backend backend = resolve_backend(cfg.backend, prob.layout.total_width());
    res.backend_used = backend;

    Rng rng(cfg.seed);
    GateStats total{};

    auto finish_from_state = [&](const PureState& state, long long k) {
        res.iterations = k;
        const auto dist = sample_distribution(prob, state);
        // Exact mass on verified solutions.
        double good = 0.0;
        std::map<std::uint64_t, bool> verdict;
        for (const auto& [pv, mass] : dist) {
            const LatticePoint pt = prob.decode(pv);
            const bool ok = prob.verify(pt);
            verdict[pv] = ok;
            if (ok) good += mass;
        }
        res.exact_success_probability = good;
        // Shots.
        std::map<std::uint64_t, long long> hist;
        for (int s = 0; s < cfg.shots; ++s) hist[draw(dist, rng)] += 1;
        res.shots = cfg.shots;
        std::map<LatticePoint, long long> found;
        for (const auto& [pv, n] : hist) {
            if (!verdict[pv]) continue;
            found[prob.decode(pv)] += n;
            res.verified_count += n;
        }
        for (const auto& [pt, n] : found) {
            FoundPoint fp;
            fp.point = pt;
            fp.count = n;
            if (res.condition != "returns") fp.minimal_period = minimal_period(spec, pt, t);
            res.found.push_back(fp);
        }
    };

    if (cfg.iterations) {
        // Explicit k.
        res.auto_schedule = false;
        total += prob.prep.stats();
        PureState state = fresh_state(prob, backend);
        for (long long i = 0; i < *cfg.iterations; ++i) state.apply_circuit(iteration);
        for (long long i = 0; i < *cfg.iterations; ++i) total += iteration.stats();
        if (cfg.m_hint && *cfg.m_hint >= 1) {
            const double theta =
                std::asin(std::sqrt(static_cast<double>(*cfg.m_hint) /
                                    static_cast<double>(prob.search_space)));
            res.m_used = cfg.m_hint;
            res.predicted_success =
                std::pow(std::sin(static_cast<double>(2 * *cfg.iterations + 1) * theta), 2);
        }
        finish_from_state(state, *cfg.iterations);
    } else if (cfg.m_hint && *cfg.m_hint >= 1) {
        // Known (or counted) M: optimal round count.
        res.auto_schedule = true;
        res.m_used = cfg.m_hint;
        const auto plan = optimal_iterations(prob.search_space, *cfg.m_hint);
        res.predicted_success = plan.predicted_success;
        if (*cfg.m_hint == prob.search_space) res.degenerate_all_marked = true;
        total += prob.prep.stats();
        PureState state = fresh_state(prob, backend);
        for (long long i = 0; i < plan.k; ++i) state.apply_circuit(iteration);
        for (long long i = 0; i < plan.k; ++i) total += iteration.stats();
        finish_from_state(state, plan.k);
    } else {
        // Unknown M: exponentially growing random round counts; one sample
        // per round, stop at the first verified hit.
        res.auto_schedule = true;
        double m = 1.0;
        const double limit = std::sqrt(static_cast<double>(prob.search_space)) + 1.0;
        const int max_rounds = 48;
        bool hit = false;
        for (int round = 0; round < max_rounds && !hit; ++round) {
            const long long k = static_cast<long long>(rng.below(
                static_cast<std::uint64_t>(std::max(1.0, std::ceil(m)))));
            PureState state = fresh_state(prob, backend);
            for (long long i = 0; i < k; ++i) state.apply_circuit(iteration);
            total += prob.prep.stats();
            for (long long i = 0; i < k; ++i) total += iteration.stats();
            const auto dist = sample_distribution(prob, state);
            const std::uint64_t pv = draw(dist, rng);
            const LatticePoint pt = prob.decode(pv);
            res.iterations = k;
            res.shots += 1;
            if (prob.verify(pt)) {
                hit = true;
                res.verified_count = 1;
                FoundPoint fp;
                fp.point = pt;
                fp.count = 1;
                if (res.condition != "returns") fp.minimal_period = minimal_period(spec, pt, t);
                res.found.push_back(fp);
                double good = 0.0;
                for (const auto& [v, mass] : dist)
                    if (prob.verify(prob.decode(v))) good += mass;
                res.exact_success_probability = good;
            }
            m = std::min(m * 8.0 / 7.0, limit);
        }
        res.no_solutions_reported = !hit;
    }
    res.gates_total = total;
    return res;
}

}  // namespace

IterationPlan optimal_iterations(long long S, long long M) {
    if (S < 1) throw std::invalid_argument("optimal_iterations: empty search space");
    if (M < 1 || M > S)
        throw std::invalid_argument("optimal_iterations: need 1 <= M <= S (M = 0 has no rotation)");
    IterationPlan plan;
    plan.theta = std::asin(std::sqrt(static_cast<double>(M) / static_cast<double>(S)));
    plan.k = std::max(0ll, std::llround(std::numbers::pi / (4.0 * plan.theta) - 0.5));
    plan.predicted_success = std::pow(std::sin(static_cast<double>(2 * plan.k + 1) * plan.theta), 2);
    return plan;
}

SearchResult grover_return_search(const LatticeMapSpec& spec, const Domain& domain, long long t,
                                  const GroverConfig& cfg) {
    SearchResult res;
    res.condition = "returns";
    res.domain = domain;
    GroverConfig effective = cfg;
    if (t == 0) {
        // Every point returns after zero steps; the rotation is degenerate.
        effective.m_hint = domain.side * domain.side;
        effective.iterations.reset();
    }
    auto prob = make_return_problem(spec, domain, t);
    return run_search(prob, spec, t, effective, std::move(res));
}

SearchResult grover_periodic_search(const LatticeMapSpec& spec, long long t,
                                    const GroverConfig& cfg,
                                    const std::optional<std::string>& line) {
    SearchResult res;
    res.condition = line ? "periodic-line" : "periodic";
    res.line = line;
    auto prob = line ? make_line_problem(spec, t, *line) : make_periodic_problem(spec, t);
    return run_search(prob, spec, t, cfg, std::move(res));
}

namespace {

std::vector<LatticePoint> marked_from_signs(const SearchProblem& prob, Backend backend) {
    PureState state = fresh_state(prob, resolve_backend(backend, prob.layout.total_width()));
    state.apply_circuit(prob.oracle);
    std::vector<LatticePoint> marked;
    for (const auto& [i, a] : state.entries())
        if (a.real() < 0.0) marked.push_back(prob.decode(packed_sample_value(prob, prob.layout, i)));
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    return marked;
}

}  // namespace

std::vector<LatticePoint> return_oracle_marked_set(const LatticeMapSpec& spec,
                                                   const Domain& domain, long long t,
                                                   Backend backend) {
    return marked_from_signs(make_return_problem(spec, domain, t), backend);
}

std::vector<LatticePoint> periodic_oracle_marked_set(const LatticeMapSpec& spec, long long t,
                                                     const std::optional<std::string>& line,
                                                     Backend backend) {
    return marked_from_signs(line ? make_line_problem(spec, t, *line)
                                  : make_periodic_problem(spec, t),
                             backend);
}

Circuit build_return_search_circuit(const LatticeMapSpec& spec, const Domain& domain, long long t,
                                    long long k) {
    auto prob = make_return_problem(spec, domain, t);
    Circuit full = prob.prep;
    const Circuit iteration = make_iteration(prob);
    for (long long i = 0; i < k; ++i) full.append(iteration);
    return full;
}

Circuit build_periodic_search_circuit(const LatticeMapSpec& spec, long long t, long long k,
                                      const std::optional<std::string>& line) {
    auto prob = line ? make_line_problem(spec, t, *line) : make_periodic_problem(spec, t);
    Circuit full = prob.prep;
    const Circuit iteration = make_iteration(prob);
    for (long long i = 0; i < k; ++i) full.append(iteration);
    return full;
}

bool oracle_workspace_clean(const LatticeMapSpec& spec, const Domain* domain, long long t,
                            const std::optional<std::string>& line, Backend backend) {
    SearchProblem prob = domain ? make_return_problem(spec, *domain, t)
                                : (line ? make_line_problem(spec, t, *line)
                                        : make_periodic_problem(spec, t));
    PureState state = fresh_state(prob, resolve_backend(backend, prob.layout.total_width()));
    state.apply_circuit(prob.oracle);
    // Everything outside the search qubits must be exactly zero.
    std::uint64_t search_mask = 0;
    for (int q : prob.search_qubits) search_mask |= 1ull << q;
    for (const auto& [i, a] : state.entries())
        if ((i & ~search_mask) != 0) return false;
    return true;
}

}  // namespace qrec
