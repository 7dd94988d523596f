#pragma once

#include <optional>
#include <string>

#include "qrec/results.hpp"

namespace qrec::cli {

enum class Format { json_fmt, csv_fmt };

struct GRange {
    long long lo = 0;
    long long hi = 0;  // inclusive; lo > hi means empty
    static GRange parse(const std::string& text);  // "A..B" or "A"
    bool empty() const { return lo > hi; }
};

struct CommonOptions {
    int shots = 256;
    std::uint64_t seed = 0;
    std::string backend = "auto";
    Format format = Format::json_fmt;
    std::string out;  // empty: stdout (or QREC_OUT_DIR/<command>.<ext>)
};

struct MapOptions {
    std::string map = "cat";  // cat | standard | sawtooth
    long long n = 8;
    std::string K = "1";
    std::string sign_convention = "printed";
    std::string matrix;    // "a,b,c,d" override for cat
    std::string map_file;  // config file overriding the flags
    LatticeMapSpec build() const;
};

struct AlphaOptions : CommonOptions {
    GRange g{2, 2};
    std::string method = "bruteforce";  // bruteforce | percival | composite
    bool check = false;                 // cross-check all applicable methods
};

struct QalphaOptions : CommonOptions {
    GRange g{2, 2};
    int p = 0;  // 0: default width
    std::string matrix;
};

struct PointOptions : CommonOptions, MapOptions {
    std::string point = "0,0";
    long long t = 0;  // classical period subcommand: search bound (0: 4*N)
    int p = 0;        // quantum subcommand: time width
};

struct SearchOptions : CommonOptions, MapOptions {
    long long t = 1;
    std::string domain;  // "PxP@X,Y", returns only
    std::optional<long long> k;
    bool count_first = false;
    int c = 5;
    std::string line;  // periodic only
};

struct CountOptions : CommonOptions, MapOptions {
    long long t = 1;
    std::string domain;  // set: returns condition, else periodic
    int c = 5;
    std::string line;
};

struct BenchOptions : CommonOptions {
    std::string what = "alpha";  // alpha | qft
    GRange n{2, 6};
};

struct EmitOptions : CommonOptions, MapOptions {
    std::string algorithm = "qalpha";  // qalpha | qperiod | returns | periodic
    long long g = 2;
    int p = 0;
    long long t = 1;
    std::string domain = "4x4@0,0";
    std::string point = "0,0";
    long long k = 1;
    std::string line;
};

struct Output {
    json document;      // full record, without the timestamp field
    std::string csv;    // tabular form, may be empty
    int exit_code = 0;  // nonzero on verification failure or hard error
};

Output run_alpha(const AlphaOptions& opt);
Output run_qalpha(const QalphaOptions& opt);
Output run_period(const PointOptions& opt);
Output run_qperiod(const PointOptions& opt);
Output run_returns(const SearchOptions& opt);
Output run_periodic(const SearchOptions& opt);
Output run_count(const CountOptions& opt);
Output run_bench(const BenchOptions& opt);
Output run_emit_circuit(const EmitOptions& opt);

Domain parse_domain(const std::string& text);
LatticePoint parse_point(const std::string& text);
Backend parse_backend(const std::string& text);
Mat2 parse_matrix(const std::string& text);

/// Serialized document with the volatile timestamp field appended (unless
/// suppressed for byte-comparison).
std::string render(const Output& out, Format format, bool with_timestamp = true,
                   double wall_ms = 0.0);

int main_entry(int argc, char** argv);

}  // namespace qrec::cli
