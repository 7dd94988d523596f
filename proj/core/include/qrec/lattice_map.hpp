#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qrec/mat2.hpp"

namespace qrec {

/// Exact rational, normalized: den > 0, gcd(|num|, den) = 1.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    static Rational parse(const std::string& text);  // "num/den" or "num"

    bool is_integer() const { return den == 1; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    bool operator==(const Rational&) const = default;
};

struct LatticePoint {
    long long x = 0;
    long long y = 0;
    constexpr bool operator==(const LatticePoint&) const = default;
    constexpr auto operator<=>(const LatticePoint&) const = default;
};

enum class MapKind { cat, twist, affine };
enum class Potential { standard, sawtooth };

/// Sign of the momentum update. `printed` adds the bracketed force term as-is;
/// `continuous` negates it inside the integer part, matching the n' = n - K V'
/// form of the continuous-time family.
enum class MomentumSign { printed, continuous };

const char* to_string(MapKind k);
const char* to_string(Potential p);
const char* to_string(MomentumSign s);

/// An invertible map on the modulus x modulus integer lattice: a linear
/// torus automorphism (cat), a discretized twist map (standard or sawtooth
/// potential, exact rational K, power-of-two lattice), or an affine map.
struct LatticeMapSpec {
    MapKind kind = MapKind::cat;
    long long modulus = 2;

    Mat2 matrix = Mat2::cat();        // cat, affine
    LatticePoint shift;               // affine
    Potential potential = Potential::sawtooth;  // twist
    Rational K{1, 1};                 // twist
    MomentumSign sign = MomentumSign::printed;  // twist

    static LatticeMapSpec cat(long long g, Mat2 m = Mat2::cat());
    static LatticeMapSpec twist(Potential pot, Rational K, long long N,
                                MomentumSign sign = MomentumSign::printed);
    static LatticeMapSpec affine(Mat2 m, LatticePoint shift, long long modulus);

    bool power_of_two_modulus() const;
    int qubits_per_coordinate() const;  // ceil(log2(modulus))

    /// Key/value text form, one "key = value" per line.
    std::string to_config() const;
    static LatticeMapSpec from_config(const std::string& text);
};

/// Affine normal form v -> M v + s (mod modulus), available for cat and
/// affine kinds and for sawtooth maps with integer K. Unlocks O(log t)
/// iteration via powers of the augmented 3x3 matrix.
struct AffineForm {
    Mat2 m;
    LatticePoint shift;
    long long modulus = 2;

    LatticePoint apply(LatticePoint p) const;
    AffineForm power(unsigned long long t) const;
    AffineForm inverse() const;
};

std::optional<AffineForm> affine_form(const LatticeMapSpec& spec);

/// Momentum increment of a twist map at column X: the integer part (floor)
/// of +- N K V(2 pi X / N) / (2 pi), before reduction mod N. Exact rational
/// arithmetic for the sawtooth; directed rounding with an interval guard for
/// the standard potential, so the floor is provably correct.
long long twist_delta(const LatticeMapSpec& spec, long long X);

LatticePoint apply_map(const LatticeMapSpec& spec, LatticePoint p);
LatticePoint invert_map(const LatticeMapSpec& spec, LatticePoint p);
LatticePoint iterate(const LatticeMapSpec& spec, LatticePoint p, long long t);

/// Equals iterate(spec, p, t) in O(log t) work. Rejects twist maps with
/// non-integer K, whose long-time iterates have no known shortcut; callers
/// must fall back to sequential iterate there.
LatticePoint fast_iterate(const LatticeMapSpec& spec, LatticePoint p, unsigned long long t);

long long floor_div(long long a, long long b);

}  // namespace qrec
