#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qrec/alpha.hpp"
#include "qrec/counting.hpp"
#include "qrec/grover.hpp"
#include "qrec/involutions.hpp"
#include "qrec/orbit_sets.hpp"
#include "qrec/period_finding.hpp"

using namespace qrec;

namespace {

const Mat2 L = Mat2::cat();

std::set<LatticePoint> as_set(const std::vector<LatticePoint>& v) {
    return std::set<LatticePoint>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("extract_period walks convergent denominators and their multiples") {
    auto div3 = [](long long r) { return r % 3 == 0; };
    const auto got = extract_period({5, 11}, 4, div3);
    REQUIRE(got.period.has_value());
    CHECK(*got.period == 3);
    CHECK(got.rejected == std::vector<long long>{1});

    // Outcome 0 alone carries no information: candidate 1 only.
    auto never = [](long long) { return false; };
    const auto fail = extract_period({0}, 4, never);
    CHECK_FALSE(fail.period.has_value());
    CHECK(fail.rejected == std::vector<long long>{1});
    auto is_one = [](long long r) { return r == 1; };
    CHECK(extract_period({0}, 4, is_one).period == 1);

    // Exact divisor period: every nonzero multiple-of-4 outcome recovers 4.
    auto div4 = [](long long r) { return r % 4 == 0; };
    for (std::uint64_t k : {4ull, 8ull, 12ull}) {
        const auto r = extract_period({k}, 4, div4);
        REQUIRE(r.period.has_value());
        CHECK(*r.period == 4);
    }
}

TEST_CASE("quantum lattice period for g=2 peaks on 0,5,11 and verifies 3") {
    PeriodFindingConfig cfg;
    cfg.p = 4;
    cfg.shots = 16;
    cfg.seed = 7;
    for (Backend b : {Backend::dense, Backend::compressed}) {
        cfg.backend = b;
        const auto res = q_lattice_period(L, 2, cfg);
        CHECK(res.verified);
        CHECK(res.period == 3);
        CHECK(res.simulation_path == "direct");
        CHECK(res.width == 4 + 6);
        for (const auto& [k, n] : res.outcomes.histogram) CHECK(k < 16);
    }
    const auto dist = lattice_period_spectrum(L, 2, 4, Backend::dense);
    std::vector<std::pair<double, std::uint64_t>> ranked;
    for (const auto& [k, p] : dist) ranked.emplace_back(p, k);
    std::sort(ranked.rbegin(), ranked.rend());
    CHECK(std::set<std::uint64_t>{ranked[0].second, ranked[1].second, ranked[2].second} ==
          std::set<std::uint64_t>{0, 5, 11});
}

TEST_CASE("quantum lattice period matches the classical oracles") {
    PeriodFindingConfig cfg;
    cfg.shots = 16;
    cfg.seed = 1;
    cfg.backend = Backend::compressed;
    for (long long g : {3, 5, 8, 12, 16}) {
        cfg.p = 0;  // default width
        const auto res = q_lattice_period(L, g, cfg);
        CAPTURE(g);
        REQUIRE(res.verified);
        CHECK(*res.period == alpha_bruteforce(L, g).alpha);
    }
}

TEST_CASE("identity matrix has period one and a silent spectrum") {
    PeriodFindingConfig cfg;
    cfg.p = 4;
    cfg.shots = 8;
    const auto res = q_lattice_period(Mat2::identity(), 9, cfg);
    REQUIRE(res.verified);
    CHECK(*res.period == 1);
    REQUIRE(res.outcomes.histogram.size() == 1);
    CHECK(res.outcomes.histogram.count(0) == 1);
}

TEST_CASE("broad spectra fall back to per-shot collapse and still verify") {
    PeriodFindingConfig cfg;
    cfg.backend = Backend::compressed;
    cfg.shots = 16;
    cfg.seed = 3;
    const auto res = q_lattice_period(L, 50, cfg);  // alpha(50) = 150, 13-qubit time register
    CHECK(res.simulation_path == "deferred-collapse");
    REQUIRE(res.verified);
    CHECK(*res.period == alpha_bruteforce(L, 50).alpha);
    CHECK(*res.period == 150);
}

TEST_CASE("quantum point period") {
    PeriodFindingConfig cfg;
    cfg.shots = 16;
    cfg.seed = 5;
    const auto cat8 = LatticeMapSpec::cat(8);
    auto r = q_point_period(cat8, {1, 0}, cfg);
    REQUIRE(r.verified);
    CHECK(*r.period == 6);
    r = q_point_period(cat8, {0, 0}, cfg);
    REQUIRE(r.verified);
    CHECK(*r.period == 1);
    cfg.p = 4;
    r = q_point_period(LatticeMapSpec::cat(2), {1, 1}, cfg);
    REQUIRE(r.verified);
    CHECK(*r.period == 3);
    CHECK_THROWS_AS(
        q_point_period(LatticeMapSpec::twist(Potential::standard, Rational(1, 2), 8), {0, 0}, cfg),
        std::invalid_argument);
    CHECK_THROWS_AS(q_point_period(cat8, {9, 0}, cfg), std::out_of_range);
}

TEST_CASE("quantum point period equals brute force on random cases") {
    std::mt19937_64 rng(99);
    PeriodFindingConfig cfg;
    cfg.shots = 16;
    cfg.backend = Backend::compressed;
    for (int i = 0; i < 100; ++i) {
        const long long N = 1ll << (1 + rng() % 4);  // 2, 4, 8, 16
        const auto spec = LatticeMapSpec::cat(N);
        const LatticePoint p{static_cast<long long>(rng() % N),
                             static_cast<long long>(rng() % N)};
        cfg.seed = rng();
        const auto res = q_point_period(spec, p, cfg);
        CAPTURE(N);
        CAPTURE(p.x);
        CAPTURE(p.y);
        REQUIRE(res.verified);
        CHECK(*res.period == *point_period_bruteforce(spec, p, 4 * N));
    }
}

TEST_CASE("optimal_iterations closed form") {
    const auto p1 = optimal_iterations(16, 6);
    CHECK(p1.k == 1);
    CHECK(p1.predicted_success ==
          doctest::Approx(std::pow(std::sin(3 * std::asin(std::sqrt(6.0 / 16.0))), 2))
              .epsilon(1e-12));
    const auto p2 = optimal_iterations(64, 1);
    CHECK(p2.k == 6);
    CHECK(p2.predicted_success == doctest::Approx(0.9965856).epsilon(1e-5));
    const auto p3 = optimal_iterations(32, 32);
    CHECK(p3.k == 0);
    CHECK(p3.predicted_success == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(optimal_iterations(16, 0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_iterations(16, 17), std::invalid_argument);
}

TEST_CASE("return oracle marks exactly the classical return set") {
    const auto spec = LatticeMapSpec::cat(8);
    const Domain corner{4, {0, 0}};
    const auto marked = return_oracle_marked_set(spec, corner, 1);
    CHECK(as_set(marked) == as_set(enumerate_returns(spec, corner, 1).members));
    CHECK(as_set(marked) ==
          std::set<LatticePoint>{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}});

    for (long long N : {4, 8, 16}) {
        const auto s = LatticeMapSpec::cat(N);
        for (long long t = 1; t <= 8; ++t) {
            for (const Domain& dom :
                 {Domain{2, {0, 0}}, Domain{N / 2, {0, 0}}, Domain{2, {N / 2, N / 2}}}) {
                CAPTURE(N);
                CAPTURE(t);
                CAPTURE(dom.offset.x);
                CHECK(as_set(return_oracle_marked_set(s, dom, t)) ==
                      as_set(enumerate_returns(s, dom, t).members));
            }
        }
    }
    // A twist map goes through the same oracle machinery.
    const auto saw = LatticeMapSpec::twist(Potential::sawtooth, Rational(1, 2), 8);
    const Domain dom{4, {0, 0}};
    for (long long t = 1; t <= 2; ++t)
        CHECK(as_set(return_oracle_marked_set(saw, dom, t)) ==
              as_set(enumerate_returns(saw, dom, t).members));
}

TEST_CASE("periodic oracle marks exactly the period-dividing set") {
    for (long long N : {4, 8, 16}) {
        const auto spec = LatticeMapSpec::cat(N);
        for (long long t = 1; t <= 8; ++t) {
            CAPTURE(N);
            CAPTURE(t);
            CHECK(as_set(periodic_oracle_marked_set(spec, t)) ==
                  as_set(enumerate_periodic(spec, t).members));
        }
    }
    const auto saw = LatticeMapSpec::twist(Potential::sawtooth, Rational(1, 1), 8);
    CHECK(as_set(periodic_oracle_marked_set(saw, 2, std::string("I1"))) ==
          as_set(enumerate_periodic(saw, 2, std::string("I1")).members));
}

TEST_CASE("oracles leave every non-search register at zero") {
    const auto cat = LatticeMapSpec::cat(8);
    const Domain dom{4, {0, 0}};
    CHECK(oracle_workspace_clean(cat, &dom, 1, std::nullopt, Backend::dense));
    const Domain off{2, {2, 2}};
    CHECK(oracle_workspace_clean(cat, &off, 2, std::nullopt, Backend::compressed));
    CHECK(oracle_workspace_clean(cat, nullptr, 2, std::nullopt, Backend::compressed));
    const auto saw = LatticeMapSpec::twist(Potential::sawtooth, Rational(1, 1), 8);
    CHECK(oracle_workspace_clean(saw, nullptr, 2, std::string("I1"), Backend::dense));
}

TEST_CASE("grover return search hits the closed-form success probability") {
    const auto spec = LatticeMapSpec::cat(8);
    GroverConfig cfg;
    cfg.iterations = 1;
    cfg.shots = 1000;
    cfg.seed = 17;
    const auto res = grover_return_search(spec, Domain{4, {0, 0}}, 1, cfg);
    REQUIRE(res.exact_success_probability.has_value());
    const double expected = std::pow(std::sin(3 * std::asin(std::sqrt(6.0 / 16.0))), 2);
    CHECK(std::fabs(*res.exact_success_probability - expected) < 1e-9);
    // Sampled hit rate within 3 binomial sigma.
    const double sigma = std::sqrt(1000.0 * expected * (1.0 - expected));
    CHECK(std::fabs(static_cast<double>(res.verified_count) - 1000.0 * expected) <= 3.0 * sigma);
    // Every found point is in the classical return set.
    const auto oracle_set = as_set(enumerate_returns(spec, Domain{4, {0, 0}}, 1).members);
    for (const auto& f : res.found) CHECK(oracle_set.count(f.point) == 1);
    CHECK(res.gates_per_iteration.elementary > 0);
}

TEST_CASE("grover with t=0 degenerates to uniform sampling") {
    const auto spec = LatticeMapSpec::cat(8);
    GroverConfig cfg;
    cfg.shots = 64;
    const auto res = grover_return_search(spec, Domain{4, {0, 0}}, 0, cfg);
    CHECK(res.degenerate_all_marked);
    CHECK(res.iterations == 0);
    CHECK(res.verified_count == 64);
    CHECK(*res.exact_success_probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grover periodic search finds the unique fixed point") {
    const auto spec = LatticeMapSpec::cat(8);
    GroverConfig cfg;
    cfg.iterations = 6;
    cfg.shots = 100;
    cfg.seed = 23;
    const auto res = grover_periodic_search(spec, 1, cfg);
    REQUIRE(res.exact_success_probability.has_value());
    const double expected = std::pow(std::sin(13 * std::asin(1.0 / 8.0)), 2);
    CHECK(std::fabs(*res.exact_success_probability - expected) < 1e-9);
    CHECK(expected == doctest::Approx(0.9965856).epsilon(1e-4));
    REQUIRE(!res.found.empty());
    for (const auto& f : res.found) {
        CHECK(f.point == LatticePoint{0, 0});
        CHECK(f.minimal_period == 1);
    }
}

TEST_CASE("fully periodic lattice is the M = S degenerate case") {
    const auto spec = LatticeMapSpec::cat(2);
    GroverConfig cfg;
    cfg.m_hint = 4;
    cfg.shots = 32;
    const auto res = grover_periodic_search(spec, 3, cfg);
    CHECK(res.degenerate_all_marked);
    CHECK(res.iterations == 0);
    CHECK(res.verified_count == 32);
    CHECK(res.found.size() == 4);
}

TEST_CASE("unknown-M schedule finds a verified hit or reports none") {
    const auto spec = LatticeMapSpec::cat(8);
    GroverConfig cfg;
    cfg.seed = 11;
    const auto hit = grover_return_search(spec, Domain{4, {0, 0}}, 1, cfg);
    CHECK(hit.auto_schedule);
    CHECK_FALSE(hit.no_solutions_reported);
    REQUIRE(hit.found.size() == 1);
    const auto oracle_set = as_set(enumerate_returns(spec, Domain{4, {0, 0}}, 1).members);
    CHECK(oracle_set.count(hit.found[0].point) == 1);

    // Empty solution set: the schedule exhausts and says so.
    REQUIRE(enumerate_returns(spec, Domain{2, {2, 2}}, 1).m() == 0);
    const auto none = grover_return_search(spec, Domain{2, {2, 2}}, 1, cfg);
    CHECK(none.no_solutions_reported);
    CHECK(none.found.empty());
}

TEST_CASE("line-restricted periodic search stays on the line") {
    const auto saw = LatticeMapSpec::twist(Potential::sawtooth, Rational(1, 1), 8);
    GroverConfig cfg;
    cfg.m_hint = static_cast<long long>(enumerate_periodic(saw, 2, std::string("I1")).m());
    cfg.shots = 200;
    cfg.seed = 31;
    const auto res = grover_periodic_search(saw, 2, cfg, std::string("I1"));
    CHECK(res.search_space == 8);
    REQUIRE(!res.found.empty());
    const auto pair = involution_factors(saw);
    for (const auto& f : res.found) {
        CHECK(pair.line("I1").contains(f.point));
        CHECK(iterate(saw, f.point, 2) == f.point);
        REQUIRE(f.minimal_period.has_value());
        CHECK(2 % *f.minimal_period == 0);
    }
    CHECK(static_cast<double>(res.verified_count) / 200.0 > 0.8);
}

TEST_CASE("counting estimates M through the Grover eigenphase") {
    const auto spec = LatticeMapSpec::cat(8);
    CountConfig cfg;
    cfg.c = 5;
    const auto res = quantum_count(spec, CountCondition::returns(Domain{4, {0, 0}}, 1), cfg);
    CHECK(res.search_space == 16);
    CHECK(std::llround(res.m_estimate) == 6);
    CHECK(res.interval_lo <= 6.0);
    CHECK(res.interval_hi >= 6.0);
    // Closed-form cross-check: nearest index to 2^c asin(sqrt(6/16))/pi is 7.
    CHECK((res.observed_index == 7 || res.observed_index == 25));
    CHECK(res.m_estimate == doctest::Approx(16.0 * std::pow(std::sin(7.0 * std::numbers::pi / 32.0), 2))
                                .epsilon(1e-9));
}

TEST_CASE("counting degenerate cases: empty and full oracles") {
    const auto spec = LatticeMapSpec::cat(8);
    CountConfig cfg;
    cfg.c = 5;
    REQUIRE(enumerate_returns(spec, Domain{2, {2, 2}}, 1).m() == 0);
    const auto zero = quantum_count(spec, CountCondition::returns(Domain{2, {2, 2}}, 1), cfg);
    CHECK(zero.observed_index == 0);
    CHECK(zero.m_estimate == doctest::Approx(0.0).epsilon(1e-12));

    const auto full = quantum_count(spec, CountCondition::returns(Domain{4, {0, 0}}, 0), cfg);
    CHECK(full.m_estimate == doctest::Approx(16.0).epsilon(1e-9));

    CHECK_THROWS_AS(quantum_count(spec, CountCondition::periodic(1), CountConfig{2, 0}),
                    std::invalid_argument);
}

TEST_CASE("counting error stays inside the phase-estimation bound") {
    const auto spec = LatticeMapSpec::cat(8);
    for (int c : {4, 5, 6}) {
        CountConfig cfg;
        cfg.c = c;
        struct Case {
            CountCondition cond;
            long long true_m;
            long long S;
        };
        const std::vector<Case> cases{
            {CountCondition::returns(Domain{4, {0, 0}}, 1), 6, 16},
            {CountCondition::periodic(1), 1, 64},
            {CountCondition::periodic(6), 64, 64},
        };
        for (const auto& cs : cases) {
            const auto res = quantum_count(spec, cs.cond, cfg);
            const double theta = std::asin(std::sqrt(static_cast<double>(cs.true_m) /
                                                     static_cast<double>(cs.S)));
            const double step = std::numbers::pi / static_cast<double>(1 << c);
            const double bound = static_cast<double>(cs.S) *
                                     (std::pow(std::sin(std::min(theta + step,
                                                                 std::numbers::pi / 2)), 2) -
                                      std::pow(std::sin(theta), 2)) +
                                 1.0;
            CAPTURE(c);
            CAPTURE(cs.true_m);
            CHECK(std::fabs(res.m_estimate - static_cast<double>(cs.true_m)) <= bound);
        }
    }
}

TEST_CASE("counting feeds the search schedule") {
    const auto spec = LatticeMapSpec::cat(8);
    CountConfig ccfg;
    ccfg.c = 5;
    const auto count = quantum_count(spec, CountCondition::returns(Domain{4, {0, 0}}, 1), ccfg);
    GroverConfig cfg;
    cfg.m_hint = std::llround(count.m_estimate);
    cfg.shots = 400;
    cfg.seed = 41;
    const auto res = grover_return_search(spec, Domain{4, {0, 0}}, 1, cfg);
    CHECK(res.auto_schedule);
    CHECK(res.iterations == 1);
    CHECK(static_cast<double>(res.verified_count) / 400.0 > 0.7);
}
