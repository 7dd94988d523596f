#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qrec/blocks.hpp"
#include "qrec/netlist.hpp"
#include "qrec/period_finding.hpp"
#include "qrec/state.hpp"

using namespace qrec;
using cd = std::complex<double>;

namespace {

PureState zero_state(const RegisterLayout& layout, Backend b) {
    return PureState::alloc(layout, std::vector<std::uint64_t>(layout.registers().size(), 0), b);
}

double dist_total(const std::map<std::uint64_t, double>& d) {
    double s = 0.0;
    for (const auto& [k, v] : d) s += v;
    return s;
}

}  // namespace

TEST_CASE("layout packing and bounds") {
    RegisterLayout layout({{"t", 4}, {"a", 3}, {"b", 3}, {"c", 3}, {"d", 3}});
    CHECK(layout.total_width() == 16);
    CHECK(layout.reg("a").offset == 4);
    CHECK(layout.pack({0, 1, 0, 0, 1}) == (1ull << 4 | 1ull << 13));
    CHECK(layout.extract(layout.pack({9, 1, 2, 3, 4}), "c") == 3);
    CHECK_THROWS_AS(layout.pack({0, 8, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(RegisterLayout({{"x", 2}, {"x", 3}}), std::invalid_argument);
    CHECK_THROWS_AS(layout.reg("nope"), std::invalid_argument);
}

TEST_CASE("alloc places a single basis state") {
    RegisterLayout layout({{"t", 4}, {"a", 3}, {"b", 3}, {"c", 3}, {"d", 3}});
    for (Backend b : {Backend::dense, Backend::compressed}) {
        const auto s = PureState::alloc(layout, {0, 1, 0, 0, 1}, b);
        CHECK(s.nonzero_count() == 1);
        CHECK(s.amplitude(layout.pack({0, 1, 0, 0, 1})) == cd{1.0, 0.0});
        CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("single-qubit gates") {
    RegisterLayout layout({{"q", 1}});
    for (Backend b : {Backend::dense, Backend::compressed}) {
        auto s = zero_state(layout, b);
        s.apply(GateOp::hadamard(0));
        CHECK(std::abs(s.amplitude(0) - cd{std::numbers::sqrt2 / 2, 0}) < 1e-14);
        CHECK(std::abs(s.amplitude(1) - cd{std::numbers::sqrt2 / 2, 0}) < 1e-14);
        s.apply(GateOp::hadamard(0));
        CHECK(std::abs(s.amplitude(0) - cd{1, 0}) < 1e-12);
        s.apply(GateOp::flip_x(0));
        CHECK(std::abs(s.amplitude(1) - cd{1, 0}) < 1e-12);
        s.apply(GateOp::phase_z(0));
        CHECK(std::abs(s.amplitude(1) + cd{1, 0}) < 1e-12);
    }
}

TEST_CASE("hadamard register builds the uniform superposition") {
    RegisterLayout layout({{"t", 4}});
    Circuit c(layout);
    c.add_hadamard_register("t");
    CHECK(c.stats().count(GateKind::hadamard) == 4);
    for (Backend b : {Backend::dense, Backend::compressed}) {
        auto s = zero_state(layout, b);
        s.apply_circuit(c);
        for (std::uint64_t i = 0; i < 16; ++i)
            CHECK(std::abs(s.amplitude(i) - cd{0.25, 0}) < 1e-12);
        s.apply_circuit(c);
        CHECK(std::abs(s.amplitude(0) - cd{1, 0}) < 1e-12);
    }
}

TEST_CASE("multi-controlled Z flips exactly the matching pattern") {
    RegisterLayout layout({{"q", 2}});
    for (Backend b : {Backend::dense, Backend::compressed}) {
        auto s = zero_state(layout, b);
        s.apply(GateOp::hadamard(0));
        s.apply(GateOp::hadamard(1));
        s.apply(GateOp::multi_controlled_z({{0, 0}, {1, 0}}));
        CHECK(s.amplitude(0).real() < 0);
        for (std::uint64_t i = 1; i < 4; ++i) CHECK(s.amplitude(i).real() > 0);
        // Empty pattern = global phase flip.
        s.apply(GateOp::multi_controlled_z({}));
        CHECK(s.amplitude(0).real() > 0);
        for (std::uint64_t i = 1; i < 4; ++i) CHECK(s.amplitude(i).real() < 0);
        s.apply(GateOp::multi_controlled_z({{0, 0}, {1, 0}}));
        s.apply(GateOp::multi_controlled_z({}));
        for (std::uint64_t i = 0; i < 4; ++i) CHECK(s.amplitude(i).real() > 0);
    }
    CHECK_THROWS_AS(GateOp::multi_controlled_z({{0, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("qft and iqft invert each other on both backends") {
    std::mt19937_64 rng(11);
    for (int width : {2, 4, 7, 10}) {
        RegisterLayout layout({{"r", width}, {"pad", 2}});
        for (Backend b : {Backend::dense, Backend::compressed}) {
            auto s = zero_state(layout, b);
            // A few random flips make a nontrivial basis state.
            for (int q = 0; q < width; ++q)
                if (rng() & 1) s.apply(GateOp::flip_x(q));
            auto reference = s;
            s.qft_register("r", false);
            s.qft_register("r", true);
            for (const auto& [i, a] : reference.entries())
                CHECK(std::abs(s.amplitude(i) - a) < 1e-10);
            CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("fused register transform equals the gate ladder") {
    RegisterLayout layout({{"r", 5}, {"pad", 1}});
    std::mt19937_64 rng(5);
    for (Backend b : {Backend::dense, Backend::compressed}) {
        auto ladder = zero_state(layout, b);
        for (int q = 0; q < 5; ++q)
            if (rng() & 1) ladder.apply(GateOp::flip_x(q));
        auto fused = ladder;
        Circuit c(layout);
        c.add_qft("r");
        ladder.apply_circuit(c);
        fused.qft_register("r", false);
        for (std::uint64_t i = 0; i < 64; ++i) CHECK(std::abs(ladder.amplitude(i) - fused.amplitude(i)) < 1e-10);
        // And the inverse ladder.
        Circuit ci(layout);
        ci.add_iqft("r");
        ladder.apply_circuit(ci);
        fused.qft_register("r", true);
        for (std::uint64_t i = 0; i < 64; ++i) CHECK(std::abs(ladder.amplitude(i) - fused.amplitude(i)) < 1e-10);
    }
}

TEST_CASE("qft of zero is uniform") {
    RegisterLayout layout({{"r", 4}});
    auto s = zero_state(layout, Backend::dense);
    s.qft_register("r", false);
    for (std::uint64_t i = 0; i < 16; ++i) CHECK(std::abs(s.amplitude(i) - cd{0.25, 0}) < 1e-12);
}

TEST_CASE("period-3 comb spectrum peaks at 0, 5, 11") {
    // |t>|t mod 3> over 16 time values, transformed on t; the independent
    // oracle is a direct O(N^2) transform of each residue comb.
    RegisterLayout layout({{"t", 4}, {"v", 2}});
    auto s = zero_state(layout, Backend::dense);
    s.apply(GateOp::hadamard(0));
    s.apply(GateOp::hadamard(1));
    s.apply(GateOp::hadamard(2));
    s.apply(GateOp::hadamard(3));
    auto embed = make_permutation(
        "mod3", {0, 1, 2, 3, 4, 5}, 1,
        [](std::uint64_t v) { return v ^ (((v & 15) % 3) << 4); },
        [](std::uint64_t v) { return v ^ (((v & 15) % 3) << 4); });
    s.apply(GateOp::permutation(embed));
    s.qft_register("t", false);
    const auto dist = s.register_distribution("t");

    std::map<std::uint64_t, double> oracle;
    for (std::uint64_t k = 0; k < 16; ++k) {
        double pk = 0.0;
        for (int v = 0; v < 3; ++v) {
            cd sum{0, 0};
            for (std::uint64_t t = v; t < 16; t += 3)
                sum += std::polar(1.0 / 16.0, 2.0 * std::numbers::pi * static_cast<double>(t * k) / 16.0);
            pk += std::norm(sum);
        }
        oracle[k] = pk;
    }
    CHECK(dist_total(dist) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::uint64_t k = 0; k < 16; ++k)
        CHECK(dist.at(k) == doctest::Approx(oracle.at(k)).epsilon(1e-10));
    // 0, 5 and 11 carry the three largest probabilities.
    std::vector<std::pair<double, std::uint64_t>> ranked;
    for (const auto& [k, p] : dist) ranked.emplace_back(p, k);
    std::sort(ranked.rbegin(), ranked.rend());
    std::set<std::uint64_t> top{ranked[0].second, ranked[1].second, ranked[2].second};
    CHECK(top == std::set<std::uint64_t>{0, 5, 11});
}

TEST_CASE("permutation verification rejects broken bijections") {
    CHECK_THROWS_AS(make_permutation(
                        "bad", {0, 1}, 1, [](std::uint64_t) { return 0ull; },
                        [](std::uint64_t v) { return v; }),
                    std::logic_error);
    CHECK_THROWS_AS(make_permutation(
                        "badinv", {0, 1}, 1, [](std::uint64_t v) { return v ^ 1; },
                        [](std::uint64_t v) { return v ^ 2; }),
                    std::logic_error);
    // Wide subsets are spot-checked by seeded round-trips.
    std::vector<int> wide(14);
    for (int i = 0; i < 14; ++i) wide[static_cast<size_t>(i)] = i;
    CHECK_THROWS_AS(make_permutation(
                        "wide", wide, 1,
                        [](std::uint64_t v) { return (v + 1) & ((1ull << 14) - 1); },
                        [](std::uint64_t v) { return (v + 2) & ((1ull << 14) - 1); }),
                    std::logic_error);
}

TEST_CASE("parsed permutations cannot be applied") {
    RegisterLayout layout({{"q", 2}});
    auto spec = make_permutation("ghost", {0, 1}, 7, nullptr, nullptr);
    auto s = zero_state(layout, Backend::dense);
    CHECK_THROWS_AS(s.apply(GateOp::permutation(spec)), std::invalid_argument);
}

TEST_CASE("measurement sampling is seeded and honest") {
    RegisterLayout layout({{"q", 2}});
    // Basis state: all shots identical.
    auto basis = PureState::alloc(layout, {2}, Backend::dense);
    const auto rec = basis.measure("q", 64, 9);
    REQUIRE(rec.histogram.size() == 1);
    CHECK(rec.histogram.at(2) == 64);

    // Uniform 2-qubit register: every outcome within 3 binomial sigma.
    auto s = zero_state(layout, Backend::dense);
    s.apply(GateOp::hadamard(0));
    s.apply(GateOp::hadamard(1));
    const auto u = s.measure("q", 4000, 12345);
    const double sigma = std::sqrt(4000.0 * 0.25 * 0.75);
    for (std::uint64_t k = 0; k < 4; ++k) {
        CHECK(std::fabs(static_cast<double>(u.histogram.at(k)) - 1000.0) <= 3.0 * sigma);
    }
    // Same seed, same histogram.
    const auto u2 = s.measure("q", 4000, 12345);
    CHECK(u.histogram == u2.histogram);
    const auto u3 = s.measure("q", 4000, 999);
    CHECK(u.histogram != u3.histogram);
}

TEST_CASE("collapse projects and renormalizes") {
    RegisterLayout layout({{"t", 3}, {"v", 2}});
    auto s = zero_state(layout, Backend::compressed);
    for (int q = 0; q < 3; ++q) s.apply(GateOp::hadamard(q));
    auto embed = make_permutation(
        "mod3c", {0, 1, 2, 3, 4}, 1,
        [](std::uint64_t v) { return v ^ (((v & 7) % 3) << 3); },
        [](std::uint64_t v) { return v ^ (((v & 7) % 3) << 3); });
    s.apply(GateOp::permutation(embed));
    Rng rng(4);
    const auto picked = s.collapse_register("v", rng);
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& [i, a] : s.entries()) CHECK(layout.extract(i, "v") == picked);
}

TEST_CASE("norm conservation and backend agreement on random circuits") {
    std::mt19937_64 rng(2024);
    RegisterLayout layout({{"x", 3}, {"y", 3}, {"z", 4}});  // 10 qubits
    const auto spec = LatticeMapSpec::cat(8);
    for (int trial = 0; trial < 40; ++trial) {
        auto dense = zero_state(layout, Backend::dense);
        auto sparse = zero_state(layout, Backend::compressed);
        Circuit c(layout);
        for (int step = 0; step < 25; ++step) {
            const int q = static_cast<int>(rng() % 10);
            int r = static_cast<int>(rng() % 10);
            if (r == q) r = (r + 1) % 10;
            switch (rng() % 7) {
                case 0: c.push(GateOp::hadamard(q)); break;
                case 1: c.push(GateOp::flip_x(q)); break;
                case 2: c.push(GateOp::phase_z(q)); break;
                case 3:
                    c.push(GateOp::controlled_phase(
                        std::numbers::pi / static_cast<double>(1 + rng() % 8), q, r));
                    break;
                case 4: c.push(GateOp::swap_qubits(q, r)); break;
                case 5: {
                    std::vector<PatternBit> pat{{q, static_cast<int>(rng() % 2)},
                                                {r, static_cast<int>(rng() % 2)}};
                    c.push(GateOp::multi_controlled_z(std::move(pat)));
                    break;
                }
                case 6: c.push(map_step_block(layout, spec, "x", "y", rng() % 2 == 0)); break;
            }
        }
        dense.apply_circuit(c);
        sparse.apply_circuit(c);
        CHECK(std::fabs(dense.norm_sq() - 1.0) < 1e-12);
        CHECK(std::fabs(sparse.norm_sq() - 1.0) < 1e-12);
        for (std::uint64_t i = 0; i < (1ull << 10); ++i)
            CHECK(std::abs(dense.amplitude(i) - sparse.amplitude(i)) < 1e-10);
    }
}

TEST_CASE("resource limits are explicit errors") {
    {
        std::vector<std::pair<std::string, int>> regs{{"big", 25}};
        CHECK_THROWS_AS(PureState::alloc(RegisterLayout(regs), {0}, Backend::dense),
                        ResourceError);
    }
    {
        RegisterLayout layout({{"big", 22}});
        auto s = zero_state(layout, Backend::compressed);
        CHECK_THROWS_AS(
            [&] {
                for (int q = 0; q < 22; ++q) s.apply(GateOp::hadamard(q));
            }(),
            ResourceError);
    }
}

TEST_CASE("controlled modular multiplier block") {
    RegisterLayout layout({{"v", 3}, {"ctl", 1}});
    const auto block = controlled_modmul_block(layout, "v", 3, 5, 3);
    for (Backend b : {Backend::dense, Backend::compressed}) {
        auto on = PureState::alloc(layout, {2, 1}, b);
        on.apply(block);
        CHECK(std::abs(on.amplitude(layout.pack({1, 1})) - cd{1, 0}) < 1e-12);
        auto off = PureState::alloc(layout, {2, 0}, b);
        off.apply(block);
        CHECK(std::abs(off.amplitude(layout.pack({2, 0})) - cd{1, 0}) < 1e-12);
        // Unused codes v >= m stay put.
        for (std::uint64_t v : {5ull, 6ull, 7ull}) {
            auto s = PureState::alloc(layout, {v, 1}, b);
            s.apply(block);
            CHECK(std::abs(s.amplitude(layout.pack({v, 1})) - cd{1, 0}) < 1e-12);
        }
    }
    CHECK_THROWS_AS(controlled_modmul_block(layout, "v", 2, 4, 3), std::invalid_argument);
}

TEST_CASE("matrix step block follows the entry update") {
    const long long g = 5;
    RegisterLayout layout({{"t", 2}, {"a", 3}, {"b", 3}, {"c", 3}, {"d", 3}, {"w1", 3}, {"w2", 3}});
    const Mat2 L = Mat2::cat();
    const auto step0 = matrix_step_block(layout, L, g, "a", "b", "c", "d", 0);
    const auto step1 = matrix_step_block(layout, mat_pow_mod(L, 2, g), g, "a", "b", "c", "d", 1);

    auto s = PureState::alloc(layout, {3, 1, 0, 0, 1, 0, 0}, Backend::dense);  // t = 3, matrix = I
    s.apply(step0);
    const auto l1 = mat_pow_mod(L, 1, g);
    CHECK(std::abs(s.amplitude(layout.pack({3, static_cast<std::uint64_t>(l1.a),
                                            static_cast<std::uint64_t>(l1.b),
                                            static_cast<std::uint64_t>(l1.c),
                                            static_cast<std::uint64_t>(l1.d), 0, 0})) -
                   cd{1, 0}) < 1e-12);
    CHECK(l1 == Mat2{2, 1, 1, 1});
    s.apply(step1);
    const auto l3 = mat_pow_mod(L, 3, g);
    CHECK(std::abs(s.amplitude(layout.pack({3, static_cast<std::uint64_t>(l3.a),
                                            static_cast<std::uint64_t>(l3.b),
                                            static_cast<std::uint64_t>(l3.c),
                                            static_cast<std::uint64_t>(l3.d), 0, 0})) -
                   cd{1, 0}) < 1e-12);

    auto off = PureState::alloc(layout, {0, 1, 0, 0, 1, 0, 0}, Backend::dense);  // controls off
    off.apply(step0);
    CHECK(std::abs(off.amplitude(layout.pack({0, 1, 0, 0, 1, 0, 0})) - cd{1, 0}) < 1e-12);
}

TEST_CASE("workspace registers stay zero through conditioned steps") {
    const long long g = 5;
    RegisterLayout layout({{"t", 3}, {"a", 3}, {"b", 3}, {"c", 3}, {"d", 3}, {"w1", 3}, {"w2", 3}});
    auto s = PureState::alloc(layout, {0, 1, 0, 0, 1, 0, 0}, Backend::compressed);
    Circuit c(layout);
    c.add_hadamard_register("t");
    Mat2 power = Mat2::cat();
    const auto tq = layout.qubits("t");
    for (int i = 0; i < 3; ++i) {
        c.push(matrix_step_block(layout, power, g, "a", "b", "c", "d", tq[static_cast<size_t>(i)]));
        power = mat_mul_mod(power, power, g);
    }
    s.apply_circuit(c);
    for (const auto& [i, a] : s.entries()) {
        CHECK(layout.extract(i, "w1") == 0);
        CHECK(layout.extract(i, "w2") == 0);
        // Value registers hold L^t mod g.
        const auto lt = mat_pow_mod(Mat2::cat(), layout.extract(i, "t"), g);
        CHECK(layout.extract(i, "a") == static_cast<std::uint64_t>(lt.a));
        CHECK(layout.extract(i, "d") == static_cast<std::uint64_t>(lt.d));
    }
}

TEST_CASE("map blocks agree with the classical maps") {
    const auto spec = LatticeMapSpec::twist(Potential::sawtooth, Rational(1, 2), 8);
    RegisterLayout layout({{"x", 3}, {"y", 3}, {"w", 2}});
    const auto fwd = map_step_block(layout, spec, "x", "y", false);
    const auto bwd = map_step_block(layout, spec, "x", "y", true);
    for (long long x = 0; x < 8; ++x) {
        for (long long y = 0; y < 8; ++y) {
            auto s = PureState::alloc(layout, {static_cast<std::uint64_t>(x),
                                               static_cast<std::uint64_t>(y), 0},
                                      Backend::dense);
            s.apply(fwd);
            const auto q = apply_map(spec, {x, y});
            CHECK(std::abs(s.amplitude(layout.pack({static_cast<std::uint64_t>(q.x),
                                                    static_cast<std::uint64_t>(q.y), 0})) -
                           cd{1, 0}) < 1e-12);
            s.apply(bwd);
            CHECK(std::abs(s.amplitude(layout.pack({static_cast<std::uint64_t>(x),
                                                    static_cast<std::uint64_t>(y), 0})) -
                           cd{1, 0}) < 1e-12);
        }
    }
    // Conditioned long-time powers.
    const auto cat = LatticeMapSpec::cat(8);
    RegisterLayout lc({{"x", 3}, {"y", 3}, {"ctl", 1}});
    const auto pow6 = map_power_block(lc, cat, "x", "y", 6, 6);
    auto s = PureState::alloc(lc, {1, 0, 1}, Backend::dense);
    s.apply(pow6);
    CHECK(std::abs(s.amplitude(lc.pack({1, 0, 1})) - cd{1, 0}) < 1e-12);  // period 6
    const auto pow5 = map_power_block(lc, cat, "x", "y", 5, 6);
    s.apply(pow5);
    const auto q5 = iterate(cat, {1, 0}, 5);
    CHECK(std::abs(s.amplitude(lc.pack({static_cast<std::uint64_t>(q5.x),
                                        static_cast<std::uint64_t>(q5.y), 1})) -
                   cd{1, 0}) < 1e-12);
}

TEST_CASE("translate, xor-pair and line-embed blocks") {
    RegisterLayout lt({{"x", 3}, {"y", 3}});
    const auto tr = translate_block(lt, "x", "y", 2, 5, 8, false);
    auto s = PureState::alloc(lt, {7, 4}, Backend::dense);
    s.apply(tr);
    CHECK(std::abs(s.amplitude(lt.pack({1, 1})) - cd{1, 0}) < 1e-12);
    const auto tri = translate_block(lt, "x", "y", 2, 5, 8, true);
    s.apply(tri);
    CHECK(std::abs(s.amplitude(lt.pack({7, 4})) - cd{1, 0}) < 1e-12);

    RegisterLayout lx({{"x", 2}, {"y", 2}, {"u", 2}, {"v", 2}});
    const auto xp = xor_pair_block(lx, "x", "y", "u", "v");
    auto sx = PureState::alloc(lx, {3, 1, 2, 2}, Backend::dense);
    sx.apply(xp);
    CHECK(std::abs(sx.amplitude(lx.pack({3, 1, 1, 3})) - cd{1, 0}) < 1e-12);
    sx.apply(xp);
    CHECK(std::abs(sx.amplitude(lx.pack({3, 1, 2, 2})) - cd{1, 0}) < 1e-12);

    const auto saw = LatticeMapSpec::twist(Potential::sawtooth, Rational(1, 1), 8);
    const auto pair = involution_factors(saw);
    RegisterLayout ll({{"s", 3}, {"xt", 3}, {"yt", 3}, {"w", 2}});
    const auto emb = line_embed_block(ll, pair.line("I1"), "s", "xt", "yt");
    auto sl = PureState::alloc(ll, {5, 0, 0, 0}, Backend::dense);
    sl.apply(emb);
    const auto lp = pair.line("I1").at(5);
    CHECK(std::abs(sl.amplitude(ll.pack({5, static_cast<std::uint64_t>(lp.x),
                                         static_cast<std::uint64_t>(lp.y), 0})) -
                   cd{1, 0}) < 1e-12);
    sl.apply(emb);
    CHECK(std::abs(sl.amplitude(ll.pack({5, 0, 0, 0})) - cd{1, 0}) < 1e-12);
}

TEST_CASE("diffusion is the exact inversion about the mean") {
    RegisterLayout layout({{"q", 2}});
    Circuit diff(layout);
    add_diffusion(diff, {0, 1});
    // Uniform state is exactly fixed.
    auto u = zero_state(layout, Backend::dense);
    u.apply(GateOp::hadamard(0));
    u.apply(GateOp::hadamard(1));
    auto u2 = u;
    u2.apply_circuit(diff);
    for (std::uint64_t i = 0; i < 4; ++i) CHECK(std::abs(u2.amplitude(i) - u.amplitude(i)) < 1e-12);
    // One marked item in S = 4 reaches probability 1 after one round.
    auto s = u;
    s.apply(GateOp::multi_controlled_z({{0, 1}, {1, 1}}));  // mark |11>
    s.apply_circuit(diff);
    CHECK(std::norm(s.amplitude(3)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gate statistics and the transform ladder counts") {
    RegisterLayout layout({{"r", 4}});
    Circuit c(layout);
    c.add_qft("r");
    const auto st = c.stats();
    CHECK(st.count(GateKind::hadamard) == 4);
    CHECK(st.count(GateKind::controlled_phase) == 6);
    CHECK(st.count(GateKind::swap) == 2);
    CHECK(st.elementary == 12);  // w(w+1)/2 + floor(w/2)

    Circuit empty(layout);
    CHECK(empty.stats().total_ops() == 0);
    CHECK(empty.stats().elementary == 0);

    for (int w = 2; w <= 10; ++w) {
        std::vector<std::pair<std::string, int>> regs{{"r", w}};
        Circuit qc{RegisterLayout(regs)};
        qc.add_qft("r");
        CHECK(qc.stats().elementary == w * (w + 1) / 2 + w / 2);
    }
}

TEST_CASE("netlist round-trips gate statistics") {
    const auto circ = build_lattice_period_circuit(Mat2::cat(), 2, 2);
    const auto text = to_netlist(circ);
    const auto back = circuit_from_netlist(text);
    CHECK(back.stats() == circ.stats());
    CHECK(back.size() == circ.size());
    CHECK(back.layout().total_width() == circ.layout().total_width());

    CHECK_THROWS_AS(circuit_from_netlist("h 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(circuit_from_netlist("layout q:2\nfrobnicate 0\n"), std::invalid_argument);
    const auto again = circuit_from_netlist(to_netlist(back));
    CHECK(again.stats() == circ.stats());
}
