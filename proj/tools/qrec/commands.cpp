#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include "qrec/netlist.hpp"
#include "qrec/rng.hpp"

namespace qrec::cli {

namespace {

constexpr int schema_version = 1;

json base_document(const std::string& command, json config) {
    json doc;
    doc["schema_version"] = schema_version;
    doc["tool"] = "qrec";
    doc["command"] = command;
    doc["config"] = std::move(config);
    return doc;
}

std::string csv_escape_free(const std::string& s) { return s; }  // fields here never need quoting

template <typename F>
auto parallel_rows(long long count, F&& fn) {
    using R = decltype(fn(0ll));
    std::vector<R> rows(static_cast<size_t>(count));
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
    if (count <= 1 || workers == 1) {
        for (long long i = 0; i < count; ++i) rows[static_cast<size_t>(i)] = fn(i);
        return rows;
    }
    std::vector<std::future<void>> futs;
    std::atomic<long long> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&] {
            for (long long i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                rows[static_cast<size_t>(i)] = fn(i);
        }));
    }
    for (auto& f : futs) f.get();
    return rows;
}

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

GRange GRange::parse(const std::string& text) {
    const auto dots = text.find("..");
    GRange r;
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoll(text);
        } else {
            r.lo = std::stoll(text.substr(0, dots));
            r.hi = std::stoll(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("range must be 'A' or 'A..B', got '" + text + "'");
    }
    return r;
}

Domain parse_domain(const std::string& text) {
    long long side1 = 0, side2 = 0, ox = 0, oy = 0;
    const auto at = text.find('@');
    const std::string sides = at == std::string::npos ? text : text.substr(0, at);
    const auto x = sides.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("domain must be PxP@X,Y, got '" + text + "'");
    try {
        side1 = std::stoll(sides.substr(0, x));
        side2 = std::stoll(sides.substr(x + 1));
        if (at != std::string::npos) {
            const std::string off = text.substr(at + 1);
            const auto comma = off.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("offset");
            ox = std::stoll(off.substr(0, comma));
            oy = std::stoll(off.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("domain must be PxP@X,Y, got '" + text + "'");
    }
    if (side1 != side2) throw CLI::ValidationError("domain must be square (PxP)");
    return Domain{side1, {ox, oy}};
}

LatticePoint parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("point must be X,Y, got '" + text + "'");
    try {
        return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("point must be X,Y, got '" + text + "'");
    }
}

Backend parse_backend(const std::string& text) {
    if (text == "dense") return Backend::dense;
    if (text == "compressed") return Backend::compressed;
    if (text == "auto") return Backend::automatic;
    throw CLI::ValidationError("backend must be dense|compressed|auto");
}

Mat2 parse_matrix(const std::string& text) {
    Mat2 m;
    if (std::sscanf(text.c_str(), "%lld,%lld,%lld,%lld", &m.a, &m.b, &m.c, &m.d) != 4)
        throw CLI::ValidationError("matrix must be a,b,c,d integers");
    if (!m.is_unimodular()) throw CLI::ValidationError("matrix must have determinant 1");
    return m;
}

LatticeMapSpec MapOptions::build() const {
    if (!map_file.empty()) {
        std::ifstream in(map_file);
        if (!in) throw CLI::ValidationError("cannot read map file '" + map_file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return LatticeMapSpec::from_config(buf.str());
    }
    const MomentumSign sign =
        sign_convention == "continuous" ? MomentumSign::continuous : MomentumSign::printed;
    if (sign_convention != "printed" && sign_convention != "continuous")
        throw CLI::ValidationError("sign-convention must be printed|continuous");
    if (map == "cat")
        return LatticeMapSpec::cat(n, matrix.empty() ? Mat2::cat() : parse_matrix(matrix));
    if (map == "standard")
        return LatticeMapSpec::twist(Potential::standard, Rational::parse(K), n, sign);
    if (map == "sawtooth")
        return LatticeMapSpec::twist(Potential::sawtooth, Rational::parse(K), n, sign);
    throw CLI::ValidationError("map must be cat|standard|sawtooth");
}

Output run_alpha(const AlphaOptions& opt) {
    if (opt.g.lo < 2) throw CLI::ValidationError("--g: modulus must be >= 2");
    if (opt.method != "bruteforce" && opt.method != "percival" && opt.method != "composite")
        throw CLI::ValidationError("--method must be bruteforce|percival|composite");
    const Mat2 L = Mat2::cat();
    const long long count = opt.g.empty() ? 0 : opt.g.hi - opt.g.lo + 1;

    struct Row {
        long long g = 0;
        long long alpha = -1;
        std::string method;
        double wall_ms = 0.0;
        std::string error;
        bool crosscheck_ok = true;
    };
    auto rows = parallel_rows(count, [&](long long i) {
        Row row;
        row.g = opt.g.lo + i;
        row.method = opt.method;
        const auto start = std::chrono::steady_clock::now();
        try {
            AlphaResult r;
            if (opt.method == "bruteforce")
                r = alpha_bruteforce(L, row.g);
            else if (opt.method == "percival")
                r = alpha_percival(L, row.g);
            else
                r = alpha_composite(L, row.g);
            row.alpha = r.alpha;
            if (opt.check) {
                const long long bf = alpha_bruteforce(L, row.g).alpha;
                const long long co = alpha_composite(L, row.g).alpha;
                row.crosscheck_ok = (row.alpha == bf) && (co == bf);
                if (is_prime(row.g) && row.g != 5)
                    row.crosscheck_ok = row.crosscheck_ok && alpha_percival(L, row.g).alpha == bf;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.wall_ms = elapsed_ms(start);
        return row;
    });

    Output out;
    json config{{"g", {{"lo", opt.g.lo}, {"hi", opt.g.hi}}},
                {"method", opt.method},
                {"check", opt.check}};
    out.document = base_document("alpha", config);
    json results = json::array();
    std::ostringstream csv;
    csv << "g,alpha,method,wall_ms,error\n";
    bool any_error = false;
    for (const auto& row : rows) {
        json r{{"g", row.g}, {"alpha", row.alpha}, {"method", row.method}};
        if (!row.error.empty()) r["error"] = row.error;
        if (opt.check) r["crosscheck_ok"] = row.crosscheck_ok;
        results.push_back(r);
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f", row.wall_ms);
        csv << row.g << "," << (row.alpha >= 0 ? std::to_string(row.alpha) : "") << ","
            << row.method << "," << wall << "," << csv_escape_free(row.error) << "\n";
        any_error = any_error || !row.error.empty() || !row.crosscheck_ok;
    }
    out.document["results"] = results;
    out.document["ok"] = !any_error;
    out.csv = csv.str();
    out.exit_code = any_error ? 1 : 0;
    return out;
}

Output run_qalpha(const QalphaOptions& opt) {
    if (opt.g.lo < 2) throw CLI::ValidationError("--g: modulus must be >= 2");
    const Mat2 L = opt.matrix.empty() ? Mat2::cat() : parse_matrix(opt.matrix);
    const long long count = opt.g.empty() ? 0 : opt.g.hi - opt.g.lo + 1;
    const Backend backend = parse_backend(opt.backend);

    auto rows = parallel_rows(count, [&](long long i) {
        PeriodFindingConfig cfg;
        cfg.p = opt.p;
        cfg.shots = opt.shots;
        cfg.backend = backend;
        cfg.seed = count > 1 ? Rng::derive(opt.seed, static_cast<std::uint64_t>(i)) : opt.seed;
        return q_lattice_period(L, opt.g.lo + i, cfg);
    });

    Output out;
    json config{{"g", {{"lo", opt.g.lo}, {"hi", opt.g.hi}}},
                {"matrix", json::array({L.a, L.b, L.c, L.d})},
                {"p", opt.p},
                {"shots", opt.shots},
                {"seed", opt.seed},
                {"backend", opt.backend}};
    out.document = base_document("qalpha", config);
    json results = json::array();
    std::ostringstream csv;
    csv << "g,period,verified,p,shots,seed,backend,elementary_gates\n";
    bool all_verified = true;
    for (const auto& r : rows) {
        results.push_back(to_json(r));
        csv << r.modulus << "," << (r.period ? std::to_string(*r.period) : "") << ","
            << (r.verified ? 1 : 0) << "," << r.p << "," << r.shots << "," << r.seed << ","
            << to_string(r.backend_used) << "," << r.gates.elementary << "\n";
        all_verified = all_verified && r.verified;
    }
    out.document["results"] = results;
    out.document["ok"] = all_verified;
    out.csv = csv.str();
    out.exit_code = all_verified ? 0 : 1;
    return out;
}

Output run_period(const PointOptions& opt) {
    const auto spec = opt.build();
    const auto point = parse_point(opt.point);
    const long long bound = opt.t > 0 ? opt.t : 4 * spec.modulus;
    const auto period = point_period_bruteforce(spec, point, bound);

    Output out;
    json config{{"map", to_json(spec)}, {"point", to_json(point)}, {"t_max", bound}};
    out.document = base_document("period", config);
    out.document["result"] = {{"period", period ? json(*period) : json(nullptr)},
                              {"found", period.has_value()}};
    out.document["ok"] = true;
    std::ostringstream csv;
    csv << "x,y,period\n"
        << point.x << "," << point.y << "," << (period ? std::to_string(*period) : "") << "\n";
    out.csv = csv.str();
    out.exit_code = 0;
    return out;
}

Output run_qperiod(const PointOptions& opt) {
    const auto spec = opt.build();
    const auto point = parse_point(opt.point);
    PeriodFindingConfig cfg;
    cfg.p = opt.p;
    cfg.shots = opt.shots;
    cfg.seed = opt.seed;
    cfg.backend = parse_backend(opt.backend);
    const auto res = q_point_period(spec, point, cfg);

    Output out;
    json config{{"map", to_json(spec)},  {"point", to_json(point)}, {"p", opt.p},
                {"shots", opt.shots},    {"seed", opt.seed},        {"backend", opt.backend}};
    out.document = base_document("qperiod", config);
    out.document["result"] = to_json(res);
    out.document["ok"] = res.verified;
    std::ostringstream csv;
    csv << "x,y,period,verified\n"
        << point.x << "," << point.y << "," << (res.period ? std::to_string(*res.period) : "")
        << "," << (res.verified ? 1 : 0) << "\n";
    out.csv = csv.str();
    out.exit_code = res.verified ? 0 : 1;
    return out;
}

namespace {

Output run_search_common(const SearchOptions& opt, bool periodic) {
    const auto spec = opt.build();
    GroverConfig cfg;
    cfg.iterations = opt.k;
    cfg.shots = opt.shots;
    cfg.seed = opt.seed;
    cfg.backend = parse_backend(opt.backend);

    std::optional<Domain> domain;
    std::optional<std::string> line;
    if (!periodic) domain = parse_domain(opt.domain.empty() ? "4x4@0,0" : opt.domain);
    if (periodic && !opt.line.empty()) line = opt.line;

    json config{{"map", to_json(spec)},
                {"t", opt.t},
                {"shots", opt.shots},
                {"seed", opt.seed},
                {"backend", opt.backend}};
    if (domain)
        config["domain"] = {{"side", domain->side}, {"offset", to_json(domain->offset)}};
    if (line) config["line"] = *line;
    if (opt.k) config["k"] = *opt.k;
    config["count_first"] = opt.count_first;

    std::optional<CountResult> counted;
    if (opt.count_first) {
        CountConfig ccfg;
        ccfg.c = opt.c;
        ccfg.seed = opt.seed;
        ccfg.backend = cfg.backend;
        counted = quantum_count(spec,
                                periodic ? CountCondition::periodic(opt.t, line)
                                         : CountCondition::returns(*domain, opt.t),
                                ccfg);
        const long long m = std::llround(counted->m_estimate);
        if (m >= 1) cfg.m_hint = m;
    }

    const auto res = periodic ? grover_periodic_search(spec, opt.t, cfg, line)
                              : grover_return_search(spec, *domain, opt.t, cfg);

    Output out;
    out.document = base_document(periodic ? "periodic" : "returns", config);
    if (counted) out.document["count"] = to_json(*counted);
    out.document["result"] = to_json(res);
    const bool ok = !res.found.empty() || res.no_solutions_reported;
    out.document["ok"] = ok;
    std::ostringstream csv;
    csv << "x,y,count,minimal_period\n";
    for (const auto& f : res.found)
        csv << f.point.x << "," << f.point.y << "," << f.count << ","
            << (f.minimal_period ? std::to_string(*f.minimal_period) : "") << "\n";
    out.csv = csv.str();
    out.exit_code = ok ? 0 : 1;
    return out;
}

}  // namespace

Output run_returns(const SearchOptions& opt) { return run_search_common(opt, false); }
Output run_periodic(const SearchOptions& opt) { return run_search_common(opt, true); }

Output run_count(const CountOptions& opt) {
    const auto spec = opt.build();
    CountConfig cfg;
    cfg.c = opt.c;
    cfg.seed = opt.seed;
    cfg.backend = parse_backend(opt.backend);
    cfg.shots = opt.shots;
    std::optional<std::string> line;
    if (!opt.line.empty()) line = opt.line;
    std::optional<Domain> domain;
    if (!opt.domain.empty()) domain = parse_domain(opt.domain);
    const auto res = quantum_count(spec,
                                   domain ? CountCondition::returns(*domain, opt.t)
                                          : CountCondition::periodic(opt.t, line),
                                   cfg);

    Output out;
    json config{{"map", to_json(spec)}, {"t", opt.t},       {"c", opt.c},
                {"seed", opt.seed},     {"shots", opt.shots}, {"backend", opt.backend}};
    if (domain)
        config["domain"] = {{"side", domain->side}, {"offset", to_json(domain->offset)}};
    if (line) config["line"] = *line;
    out.document = base_document("count", config);
    out.document["result"] = to_json(res);
    out.document["ok"] = true;
    std::ostringstream csv;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld,%d,%llu,%.6f,%.6f,%.6f\n", res.search_space, res.c,
                  static_cast<unsigned long long>(res.observed_index), res.m_estimate,
                  res.interval_lo, res.interval_hi);
    csv << "S,c,observed_index,m_estimate,interval_lo,interval_hi\n" << buf;
    out.csv = csv.str();
    return out;
}

Output run_bench(const BenchOptions& opt) {
    Output out;
    json config{{"what", opt.what}, {"n", {{"lo", opt.n.lo}, {"hi", opt.n.hi}}}};
    out.document = base_document("bench", config);
    json results = json::array();
    std::ostringstream csv;

    if (opt.what == "alpha") {
        csv << "n_q,g,p,width,total_ops,elementary\n";
        std::vector<double> xs, ys;
        for (long long nq = std::max(1ll, opt.n.lo); nq <= opt.n.hi; ++nq) {
            const long long g = 1ll << nq;
            const int p = default_time_width(g);
            const auto circ = build_lattice_period_circuit(Mat2::cat(), g, p);
            const auto st = circ.stats();
            results.push_back(json{{"n_q", nq},
                                   {"g", g},
                                   {"p", p},
                                   {"width", circ.layout().total_width()},
                                   {"total_ops", st.total_ops()},
                                   {"elementary", st.elementary}});
            csv << nq << "," << g << "," << p << "," << circ.layout().total_width() << ","
                << st.total_ops() << "," << st.elementary << "\n";
            xs.push_back(std::log(static_cast<double>(nq)));
            ys.push_back(std::log(static_cast<double>(st.elementary)));
        }
        if (xs.size() >= 2) {
            // Least-squares slope of log cost against log n_q.
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double n = static_cast<double>(xs.size());
            for (size_t i = 0; i < xs.size(); ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
            }
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            out.document["fitted_exponent"] = slope;
        }
    } else if (opt.what == "qft") {
        csv << "width,elementary,formula\n";
        for (long long w = std::max(1ll, opt.n.lo); w <= opt.n.hi; ++w) {
            std::vector<std::pair<std::string, int>> regs{{"r", static_cast<int>(w)}};
            Circuit c{RegisterLayout(regs)};
            c.add_qft("r");
            const long long formula = w * (w + 1) / 2 + w / 2;
            results.push_back(json{{"width", w},
                                   {"elementary", c.stats().elementary},
                                   {"formula", formula},
                                   {"exact", c.stats().elementary == formula}});
            csv << w << "," << c.stats().elementary << "," << formula << "\n";
        }
    } else {
        throw CLI::ValidationError("--what must be alpha|qft");
    }
    out.document["results"] = results;
    out.document["ok"] = true;
    out.csv = csv.str();
    return out;
}

Output run_emit_circuit(const EmitOptions& opt) {
    Circuit circ;
    json config{{"algorithm", opt.algorithm}};
    if (opt.algorithm == "qalpha") {
        const int p = opt.p > 0 ? opt.p : default_time_width(opt.g);
        circ = build_lattice_period_circuit(Mat2::cat(), opt.g, p);
        config["g"] = opt.g;
        config["p"] = p;
    } else if (opt.algorithm == "qperiod") {
        const auto spec = opt.build();
        const int p = opt.p > 0 ? opt.p : default_time_width(spec.modulus);
        circ = build_point_period_circuit(spec, parse_point(opt.point), p);
        config["map"] = to_json(spec);
        config["p"] = p;
    } else if (opt.algorithm == "returns") {
        const auto spec = opt.build();
        circ = build_return_search_circuit(spec, parse_domain(opt.domain), opt.t, opt.k);
        config["map"] = to_json(spec);
        config["t"] = opt.t;
        config["k"] = opt.k;
    } else if (opt.algorithm == "periodic") {
        const auto spec = opt.build();
        std::optional<std::string> line;
        if (!opt.line.empty()) line = opt.line;
        circ = build_periodic_search_circuit(spec, opt.t, opt.k, line);
        config["map"] = to_json(spec);
        config["t"] = opt.t;
        config["k"] = opt.k;
    } else {
        throw CLI::ValidationError("--algorithm must be qalpha|qperiod|returns|periodic");
    }

    const std::string text = to_netlist(circ);
    if (opt.out.empty()) throw CLI::ValidationError("emit-circuit requires --out PATH");
    std::ofstream file(opt.out);
    if (!file) throw CLI::ValidationError("cannot write '" + opt.out + "'");
    file << text;
    file.close();

    Output out;
    out.document = base_document("emit-circuit", config);
    out.document["netlist"] = opt.out;
    out.document["gates"] = to_json(circ.stats());
    out.document["width"] = circ.layout().total_width();
    out.document["ok"] = true;
    return out;
}

std::string render(const Output& out, Format format, bool with_timestamp, double wall_ms) {
    if (format == Format::csv_fmt) return out.csv;
    json doc = out.document;
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char iso[32];
        std::strftime(iso, sizeof iso, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        doc["timestamp"] = {{"iso", iso}, {"wall_ms", wall_ms}};
    }
    return doc.dump(2) + "\n";
}

namespace {

void write_output(const std::string& command, const Output& out, const CommonOptions& common,
                  double wall_ms) {
    const std::string text = render(out, common.format, true, wall_ms);
    std::string path = common.out;
    if (path.empty()) {
        if (const char* dir = std::getenv("QREC_OUT_DIR")) {
            path = std::string(dir) + "/" + command +
                   (common.format == Format::csv_fmt ? ".csv" : ".json");
        }
    }
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream file(path);
        if (!file) throw CLI::ValidationError("cannot write '" + path + "'");
        file << text;
    }
}

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--shots", common.shots, "measurement shots");
    cmd->add_option("--seed", common.seed, "random seed");
    cmd->add_option("--backend", common.backend, "dense|compressed|auto");
    cmd->add_option("--format", [&common](const std::vector<std::string>& v) {
        if (v[0] == "json") common.format = Format::json_fmt;
        else if (v[0] == "csv") common.format = Format::csv_fmt;
        else return false;
        return true;
    }, "json|csv");
    cmd->add_option("--out", common.out, "output path (default stdout or $QREC_OUT_DIR)");
}

void add_map(CLI::App* cmd, MapOptions& map) {
    cmd->add_option("--map", map.map, "cat|standard|sawtooth");
    cmd->add_option("--n", map.n, "lattice size");
    cmd->add_option("--K", map.K, "twist strength num/den");
    cmd->add_option("--sign-convention", map.sign_convention, "printed|continuous");
    cmd->add_option("--matrix", map.matrix, "a,b,c,d entries for the cat kind");
    cmd->add_option("--map-file", map.map_file, "map spec config file");
}

}  // namespace

int main_entry(int argc, char** argv) {
    CLI::App app{"lattice-map recurrence and periodic-orbit toolkit"};
    app.require_subcommand(1);

    AlphaOptions alpha_opt;
    auto* alpha_cmd = app.add_subcommand("alpha", "classical lattice period alpha(g)");
    std::string alpha_g = "2..12";
    alpha_cmd->add_option("--g", alpha_g, "modulus or range A..B");
    alpha_cmd->add_option("--method", alpha_opt.method, "bruteforce|percival|composite");
    alpha_cmd->add_flag("--check", alpha_opt.check, "cross-check all applicable methods");
    add_common(alpha_cmd, alpha_opt);

    QalphaOptions qalpha_opt;
    auto* qalpha_cmd = app.add_subcommand("qalpha", "quantum lattice period");
    std::string qalpha_g = "2";
    qalpha_cmd->add_option("--g", qalpha_g, "modulus or range A..B");
    qalpha_cmd->add_option("--p", qalpha_opt.p, "time-register width (0 = default)");
    qalpha_cmd->add_option("--matrix", qalpha_opt.matrix, "a,b,c,d entries");
    add_common(qalpha_cmd, qalpha_opt);

    PointOptions period_opt;
    auto* period_cmd = app.add_subcommand("period", "classical point period");
    period_cmd->add_option("--point", period_opt.point, "X,Y");
    period_cmd->add_option("--t", period_opt.t, "search bound (0 = 4N)");
    add_map(period_cmd, period_opt);
    add_common(period_cmd, period_opt);

    PointOptions qperiod_opt;
    auto* qperiod_cmd = app.add_subcommand("qperiod", "quantum point period");
    qperiod_cmd->add_option("--point", qperiod_opt.point, "X,Y");
    qperiod_cmd->add_option("--p", qperiod_opt.p, "time-register width (0 = default)");
    add_map(qperiod_cmd, qperiod_opt);
    add_common(qperiod_cmd, qperiod_opt);

    SearchOptions returns_opt;
    auto* returns_cmd = app.add_subcommand("returns", "amplitude search for returning points");
    returns_cmd->add_option("--t", returns_opt.t, "iteration count");
    returns_cmd->add_option("--domain", returns_opt.domain, "PxP@X,Y");
    returns_cmd->add_option("--k", [&returns_opt](const std::vector<std::string>& v) {
        returns_opt.k = std::stoll(v[0]);
        return true;
    }, "iteration count (omit for the auto schedule)");
    returns_cmd->add_flag("--count", returns_opt.count_first, "estimate M by counting first");
    returns_cmd->add_option("--c", returns_opt.c, "counting width for --count");
    add_map(returns_cmd, returns_opt);
    add_common(returns_cmd, returns_opt);

    SearchOptions periodic_opt;
    auto* periodic_cmd = app.add_subcommand("periodic", "amplitude search for periodic points");
    periodic_cmd->add_option("--t", periodic_opt.t, "period to test (divisors included)");
    periodic_cmd->add_option("--k", [&periodic_opt](const std::vector<std::string>& v) {
        periodic_opt.k = std::stoll(v[0]);
        return true;
    }, "iteration count (omit for the auto schedule)");
    periodic_cmd->add_flag("--count", periodic_opt.count_first, "estimate M by counting first");
    periodic_cmd->add_option("--c", periodic_opt.c, "counting width for --count");
    periodic_cmd->add_option("--line", periodic_opt.line, "restrict to a symmetry line id");
    add_map(periodic_cmd, periodic_opt);
    add_common(periodic_cmd, periodic_opt);

    CountOptions count_opt;
    auto* count_cmd = app.add_subcommand("count", "quantum counting of marked points");
    count_cmd->add_option("--t", count_opt.t, "iteration count / period");
    count_cmd->add_option("--domain", count_opt.domain, "PxP@X,Y (sets the returns condition)");
    count_cmd->add_option("--c", count_opt.c, "counting-register width");
    count_cmd->add_option("--line", count_opt.line, "symmetry line id (periodic condition)");
    add_map(count_cmd, count_opt);
    add_common(count_cmd, count_opt);

    BenchOptions bench_opt;
    auto* bench_cmd = app.add_subcommand("bench", "circuit-size scaling tables");
    std::string bench_n = "2..6";
    bench_cmd->add_option("--n", bench_n, "range A..B of n_q (alpha) or width (qft)");
    bench_cmd->add_option("--what", bench_opt.what, "alpha|qft");
    add_common(bench_cmd, bench_opt);

    EmitOptions emit_opt;
    auto* emit_cmd = app.add_subcommand("emit-circuit", "write a circuit netlist");
    emit_cmd->add_option("--algorithm", emit_opt.algorithm, "qalpha|qperiod|returns|periodic");
    emit_cmd->add_option("--g", emit_opt.g, "modulus (qalpha)");
    emit_cmd->add_option("--p", emit_opt.p, "time-register width");
    emit_cmd->add_option("--t", emit_opt.t, "iteration count");
    emit_cmd->add_option("--domain", emit_opt.domain, "PxP@X,Y (returns)");
    emit_cmd->add_option("--point", emit_opt.point, "X,Y (qperiod)");
    emit_cmd->add_option("--k", emit_opt.k, "iterations to emit");
    emit_cmd->add_option("--line", emit_opt.line, "symmetry line id (periodic)");
    add_map(emit_cmd, emit_opt);
    add_common(emit_cmd, emit_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        Output out;
        std::string command;
        if (alpha_cmd->parsed()) {
            alpha_opt.g = GRange::parse(alpha_g);
            command = "alpha";
            out = run_alpha(alpha_opt);
        } else if (qalpha_cmd->parsed()) {
            qalpha_opt.g = GRange::parse(qalpha_g);
            command = "qalpha";
            out = run_qalpha(qalpha_opt);
        } else if (period_cmd->parsed()) {
            command = "period";
            out = run_period(period_opt);
        } else if (qperiod_cmd->parsed()) {
            command = "qperiod";
            out = run_qperiod(qperiod_opt);
        } else if (returns_cmd->parsed()) {
            command = "returns";
            out = run_returns(returns_opt);
        } else if (periodic_cmd->parsed()) {
            command = "periodic";
            out = run_periodic(periodic_opt);
        } else if (count_cmd->parsed()) {
            command = "count";
            out = run_count(count_opt);
        } else if (bench_cmd->parsed()) {
            bench_opt.n = GRange::parse(bench_n);
            command = "bench";
            out = run_bench(bench_opt);
        } else if (emit_cmd->parsed()) {
            command = "emit-circuit";
            out = run_emit_circuit(emit_opt);
        }
        const CommonOptions& common =
            alpha_cmd->parsed()
                ? static_cast<const CommonOptions&>(alpha_opt)
                : qalpha_cmd->parsed()
                      ? static_cast<const CommonOptions&>(qalpha_opt)
                      : period_cmd->parsed()
                            ? static_cast<const CommonOptions&>(period_opt)
                            : qperiod_cmd->parsed()
                                  ? static_cast<const CommonOptions&>(qperiod_opt)
                                  : returns_cmd->parsed()
                                        ? static_cast<const CommonOptions&>(returns_opt)
                                        : periodic_cmd->parsed()
                                              ? static_cast<const CommonOptions&>(periodic_opt)
                                              : count_cmd->parsed()
                                                    ? static_cast<const CommonOptions&>(count_opt)
                                                    : bench_cmd->parsed()
                                                          ? static_cast<const CommonOptions&>(
                                                                bench_opt)
                                                          : static_cast<const CommonOptions&>(
                                                                emit_opt);
        write_output(command, out, common, elapsed_ms(start));
        return out.exit_code;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

}  // namespace qrec::cli
