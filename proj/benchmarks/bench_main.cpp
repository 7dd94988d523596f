#include <benchmark/benchmark.h>

#include "qrec/alpha.hpp"
#include "qrec/blocks.hpp"
#include "qrec/grover.hpp"
#include "qrec/lattice_map.hpp"
#include "qrec/period_finding.hpp"

using namespace qrec;

namespace {

void bm_apply_map_cat(benchmark::State& state) {
    const auto spec = LatticeMapSpec::cat(1ll << state.range(0));
    LatticePoint p{1, 0};
    for (auto _ : state) {
        p = apply_map(spec, p);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(bm_apply_map_cat)->Arg(3)->Arg(10);

void bm_apply_map_sawtooth(benchmark::State& state) {
    const auto spec = LatticeMapSpec::twist(Potential::sawtooth, Rational(1, 2),
                                            1ll << state.range(0));
    LatticePoint p{1, 0};
    for (auto _ : state) {
        p = apply_map(spec, p);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(bm_apply_map_sawtooth)->Arg(3)->Arg(10);

void bm_apply_map_standard(benchmark::State& state) {
    // Pays for the guarded floor on every step.
    const auto spec = LatticeMapSpec::twist(Potential::standard, Rational(1, 2), 64);
    LatticePoint p{1, 0};
    for (auto _ : state) {
        p = apply_map(spec, p);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(bm_apply_map_standard);

void bm_fast_iterate(benchmark::State& state) {
    const auto spec = LatticeMapSpec::cat(1ll << 10);
    for (auto _ : state) {
        auto p = fast_iterate(spec, {5, 7}, (1ull << 40) + 12345);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(bm_fast_iterate);

void bm_alpha_bruteforce(benchmark::State& state) {
    const long long g = state.range(0);
    for (auto _ : state) {
        auto r = alpha_bruteforce(Mat2::cat(), g);
        benchmark::DoNotOptimize(r.alpha);
    }
}
BENCHMARK(bm_alpha_bruteforce)->Arg(197)->Arg(997);

void bm_alpha_composite(benchmark::State& state) {
    for (auto _ : state) {
        auto r = alpha_composite(Mat2::cat(), 240);
        benchmark::DoNotOptimize(r.alpha);
    }
}
BENCHMARK(bm_alpha_composite);

void bm_enumerate_returns(benchmark::State& state) {
    const auto spec = LatticeMapSpec::cat(64);
    const Domain dom{32, {0, 0}};
    for (auto _ : state) {
        auto rs = enumerate_returns(spec, dom, 2);
        benchmark::DoNotOptimize(rs.members.size());
    }
}
BENCHMARK(bm_enumerate_returns);

void bm_hadamard_layer_dense(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    std::vector<std::pair<std::string, int>> regs{{"r", w}};
    const RegisterLayout layout(regs);
    for (auto _ : state) {
        auto s = PureState::alloc(layout, {0}, Backend::dense);
        for (int q = 0; q < w; ++q) s.apply(GateOp::hadamard(q));
        benchmark::DoNotOptimize(s.norm_sq());
    }
}
BENCHMARK(bm_hadamard_layer_dense)->Arg(12)->Arg(18);

void bm_qft_compressed_comb(benchmark::State& state) {
    // Comb-structured state of the kind the period finder transforms.
    const int p = static_cast<int>(state.range(0));
    RegisterLayout layout({{"t", p}, {"v", 2}});
    auto base = PureState::alloc(layout, {0, 0}, Backend::compressed);
    for (int q = 0; q < p; ++q) base.apply(GateOp::hadamard(q));
    for (auto _ : state) {
        auto s = base;
        s.qft_register("t", false);
        benchmark::DoNotOptimize(s.nonzero_count());
    }
}
BENCHMARK(bm_qft_compressed_comb)->Arg(10)->Arg(13);

void bm_grover_iteration(benchmark::State& state) {
    const auto spec = LatticeMapSpec::cat(8);
    GroverConfig cfg;
    cfg.iterations = 1;
    cfg.shots = 1;
    for (auto _ : state) {
        auto res = grover_return_search(spec, Domain{4, {0, 0}}, 1, cfg);
        benchmark::DoNotOptimize(res.verified_count);
    }
}
BENCHMARK(bm_grover_iteration);

void bm_q_lattice_period(benchmark::State& state) {
    const long long g = state.range(0);
    PeriodFindingConfig cfg;
    cfg.backend = Backend::compressed;
    cfg.shots = 16;
    for (auto _ : state) {
        auto res = q_lattice_period(Mat2::cat(), g, cfg);
        benchmark::DoNotOptimize(res.verified);
    }
}
BENCHMARK(bm_q_lattice_period)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
