#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "qrec/netlist.hpp"
#include "qrec/orbit_sets.hpp"

using namespace qrec;
using namespace qrec::cli;

namespace {

int call_main(std::initializer_list<const char*> args) {
    std::vector<char*> argv;
    for (const char* a : args) argv.push_back(const_cast<char*>(a));
    return main_entry(static_cast<int>(argv.size()), argv.data());
}

long long result_alpha(const json& doc, long long g) {
    for (const auto& row : doc.at("results"))
        if (row.at("g") == g) return row.at("alpha").get<long long>();
    return -1;
}

}  // namespace

TEST_CASE("alpha over a range includes the known table") {
    AlphaOptions opt;
    opt.g = {2, 12};
    const auto out = run_alpha(opt);
    CHECK(out.exit_code == 0);
    CHECK(result_alpha(out.document, 2) == 3);
    CHECK(result_alpha(out.document, 3) == 4);
    CHECK(result_alpha(out.document, 4) == 3);
    CHECK(result_alpha(out.document, 5) == 10);
    CHECK(result_alpha(out.document, 10) == 30);
    CHECK(out.csv.rfind("g,alpha,method,wall_ms,error", 0) == 0);
}

TEST_CASE("alpha rejects modulus below two") {
    AlphaOptions opt;
    opt.g = {1, 4};
    CHECK_THROWS_AS(run_alpha(opt), std::runtime_error);
    CHECK(call_main({"qrec", "alpha", "--g", "1"}) == 2);
}

TEST_CASE("alpha cross-check flag reports zero mismatches") {
    AlphaOptions opt;
    opt.g = {2, 40};
    opt.check = true;
    const auto out = run_alpha(opt);
    CHECK(out.exit_code == 0);
    for (const auto& row : out.document.at("results")) CHECK(row.at("crosscheck_ok") == true);
}

TEST_CASE("alpha percival method on a prime range") {
    AlphaOptions opt;
    opt.g = {7, 7};
    opt.method = "percival";
    const auto out = run_alpha(opt);
    CHECK(out.exit_code == 0);
    CHECK(result_alpha(out.document, 7) == 8);
    // Non-prime rows error per row and flip the exit code.
    opt.g = {8, 9};
    const auto bad = run_alpha(opt);
    CHECK(bad.exit_code == 1);
    CHECK(bad.document.at("ok") == false);
}

TEST_CASE("qalpha verifies against the classical period") {
    QalphaOptions opt;
    opt.g = {5, 5};
    opt.shots = 16;
    const auto out = run_qalpha(opt);
    CHECK(out.exit_code == 0);
    const auto& r = out.document.at("results").at(0);
    CHECK(r.at("period") == 10);
    CHECK(r.at("verified") == true);
}

TEST_CASE("qalpha supports ranges with derived per-row seeds") {
    QalphaOptions opt;
    opt.g = {2, 6};
    opt.shots = 16;
    opt.seed = 4;
    const auto out = run_qalpha(opt);
    CHECK(out.exit_code == 0);
    std::set<long long> seeds;
    for (const auto& r : out.document.at("results")) {
        CHECK(r.at("verified") == true);
        seeds.insert(r.at("seed").get<long long>());
    }
    CHECK(seeds.size() == 5);  // all rows drew distinct derived seeds
}

TEST_CASE("qalpha identity matrix has period one") {
    QalphaOptions opt;
    opt.g = {9, 9};
    opt.matrix = "1,0,0,1";
    opt.shots = 4;
    const auto out = run_qalpha(opt);
    CHECK(out.document.at("results").at(0).at("period") == 1);
}

TEST_CASE("classical and quantum point periods agree through the CLI") {
    PointOptions opt;
    opt.map = "cat";
    opt.n = 8;
    opt.point = "1,0";
    const auto classical = run_period(opt);
    CHECK(classical.document.at("result").at("period") == 6);
    opt.shots = 16;
    const auto quantum = run_qperiod(opt);
    CHECK(quantum.exit_code == 0);
    CHECK(quantum.document.at("result").at("period") == 6);
}

TEST_CASE("returns search through the CLI stays inside the oracle set") {
    SearchOptions opt;
    opt.map = "cat";
    opt.n = 8;
    opt.domain = "4x4@0,0";
    opt.t = 1;
    opt.k = 1;
    opt.shots = 300;
    const auto out = run_returns(opt);
    CHECK(out.exit_code == 0);
    const auto oracle = enumerate_returns(LatticeMapSpec::cat(8), Domain{4, {0, 0}}, 1);
    const std::set<LatticePoint> allowed(oracle.members.begin(), oracle.members.end());
    for (const auto& f : out.document.at("result").at("found")) {
        const LatticePoint p{f.at("point").at(0).get<long long>(),
                             f.at("point").at(1).get<long long>()};
        CHECK(allowed.count(p) == 1);
    }
}

TEST_CASE("periodic search through the CLI finds the fixed point") {
    SearchOptions opt;
    opt.map = "cat";
    opt.n = 8;
    opt.t = 1;
    opt.k = 6;
    opt.shots = 50;
    const auto out = run_periodic(opt);
    CHECK(out.exit_code == 0);
    const auto& found = out.document.at("result").at("found");
    REQUIRE(found.size() == 1);
    CHECK(found.at(0).at("point") == json::array({0, 0}));
}

TEST_CASE("count subcommand and the --count search flag") {
    CountOptions opt;
    opt.map = "cat";
    opt.n = 8;
    opt.domain = "4x4@0,0";
    opt.t = 1;
    opt.c = 5;
    const auto out = run_count(opt);
    CHECK(std::llround(out.document.at("result").at("m_estimate").get<double>()) == 6);

    SearchOptions sopt;
    sopt.map = "cat";
    sopt.n = 8;
    sopt.domain = "4x4@0,0";
    sopt.t = 1;
    sopt.count_first = true;
    sopt.shots = 200;
    sopt.seed = 3;
    const auto sr = run_returns(sopt);
    CHECK(sr.document.contains("count"));
    CHECK(sr.document.at("result").at("m_used") == 6);
    CHECK(sr.document.at("result").at("iterations") == 1);
}

TEST_CASE("bench scaling tables") {
    BenchOptions opt;
    opt.what = "alpha";
    opt.n = {2, 6};
    const auto out = run_bench(opt);
    const double slope = out.document.at("fitted_exponent").get<double>();
    CHECK(slope >= 2.5);
    CHECK(slope <= 3.5);

    opt.what = "qft";
    opt.n = {2, 10};
    const auto qft = run_bench(opt);
    for (const auto& row : qft.document.at("results")) CHECK(row.at("exact") == true);

    opt.n = {6, 4};  // empty range
    const auto empty = run_bench(opt);
    CHECK(empty.exit_code == 0);
    CHECK(empty.document.at("results").empty());
}

TEST_CASE("emit-circuit writes a netlist that round-trips its statistics") {
    EmitOptions opt;
    opt.algorithm = "qalpha";
    opt.g = 2;
    opt.p = 2;
    opt.out = "/tmp/qrec_test_emit.txt";
    const auto out = run_emit_circuit(opt);
    CHECK(out.exit_code == 0);
    std::ifstream in(opt.out);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    const auto parsed = circuit_from_netlist(buf.str());
    const auto rebuilt = build_lattice_period_circuit(Mat2::cat(), 2, 2);
    CHECK(parsed.stats() == rebuilt.stats());

    EmitOptions bad = opt;
    bad.algorithm = "nosuch";
    CHECK_THROWS_AS(run_emit_circuit(bad), std::runtime_error);
}

TEST_CASE("emit-circuit covers the paper-scale returns instance") {
    EmitOptions opt;
    opt.algorithm = "returns";
    opt.map = "sawtooth";
    opt.K = "1/2";
    opt.n = 8;
    opt.domain = "4x4@0,0";
    opt.t = 1;
    opt.k = 1;
    opt.out = "/tmp/qrec_test_emit_returns.txt";
    const auto out = run_emit_circuit(opt);
    CHECK(out.document.at("width") == 8);
    // Netlist per-iteration cost matches the search report: total minus the
    // 4 preparation Hadamards.
    SearchOptions sopt;
    sopt.map = "sawtooth";
    sopt.K = "1/2";
    sopt.n = 8;
    sopt.domain = "4x4@0,0";
    sopt.t = 1;
    sopt.k = 1;
    sopt.shots = 10;
    const auto sr = run_returns(sopt);
    const long long per_iter =
        sr.document.at("result").at("gates_per_iteration").at("elementary_estimate").get<long long>();
    CHECK(out.document.at("gates").at("elementary_estimate").get<long long>() == per_iter + 4);
}

TEST_CASE("json output is byte-stable modulo the timestamp field") {
    SearchOptions opt;
    opt.map = "cat";
    opt.n = 8;
    opt.domain = "4x4@0,0";
    opt.t = 1;
    opt.k = 1;
    opt.shots = 100;
    opt.seed = 42;
    const auto a = run_returns(opt);
    const auto b = run_returns(opt);
    CHECK(render(a, Format::json_fmt, false) == render(b, Format::json_fmt, false));
    // With timestamps the documents differ at most in that one field.
    auto ja = json::parse(render(a, Format::json_fmt, true, 1.0));
    auto jb = json::parse(render(b, Format::json_fmt, true, 2.0));
    ja.erase("timestamp");
    jb.erase("timestamp");
    CHECK(ja == jb);
}

TEST_CASE("main entry writes files and honors QREC_OUT_DIR") {
    CHECK(call_main({"qrec", "alpha", "--g", "2..4", "--out", "/tmp/qrec_cli_alpha.json"}) == 0);
    std::ifstream in("/tmp/qrec_cli_alpha.json");
    REQUIRE(in.good());
    json doc;
    in >> doc;
    CHECK(doc.at("command") == "alpha");
    CHECK(doc.contains("timestamp"));

    REQUIRE(std::system("mkdir -p /tmp/qrec_out_dir_test") == 0);
    setenv("QREC_OUT_DIR", "/tmp/qrec_out_dir_test", 1);
    CHECK(call_main({"qrec", "alpha", "--g", "2..3", "--format", "csv"}) == 0);
    unsetenv("QREC_OUT_DIR");
    std::ifstream csv("/tmp/qrec_out_dir_test/alpha.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "g,alpha,method,wall_ms,error");
}

TEST_CASE("map files plug into the point commands") {
    {
        std::ofstream f("/tmp/qrec_map.cfg");
        f << LatticeMapSpec::twist(Potential::sawtooth, Rational(1, 1), 8).to_config();
    }
    PointOptions opt;
    opt.map_file = "/tmp/qrec_map.cfg";
    opt.point = "4,0";
    const auto out = run_period(opt);
    CHECK(out.document.at("result").at("period") == 1);  // (4,0) is fixed
}
