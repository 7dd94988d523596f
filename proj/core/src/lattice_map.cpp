#include "qrec/lattice_map.hpp"

#include <mpfr.h>

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qrec {

namespace {

long long mod_reduce(long long x, long long g) {
    long long r = x % g;
    return r < 0 ? r + g : r;
}

void require_in_lattice(const LatticeMapSpec& spec, LatticePoint p) {
    if (p.x < 0 || p.x >= spec.modulus || p.y < 0 || p.y >= spec.modulus)
        throw std::out_of_range("lattice_map: point outside the lattice");
}

}  // namespace

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    num = g ? n / g : n;
    den = g ? d / g : d;
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text), 1);
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    }
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

const char* to_string(MapKind k) {
    switch (k) {
        case MapKind::cat: return "cat";
        case MapKind::twist: return "twist";
        case MapKind::affine: return "affine";
    }
    return "?";
}

const char* to_string(Potential p) {
    return p == Potential::standard ? "standard" : "sawtooth";
}

const char* to_string(MomentumSign s) {
    return s == MomentumSign::printed ? "printed" : "continuous";
}

LatticeMapSpec LatticeMapSpec::cat(long long g, Mat2 m) {
    if (g < 2) throw std::invalid_argument("LatticeMapSpec: modulus must be >= 2");
    if (!m.is_unimodular()) throw std::invalid_argument("LatticeMapSpec: cat matrix must have det 1");
    LatticeMapSpec s;
    s.kind = MapKind::cat;
    s.modulus = g;
    s.matrix = m;
    return s;
}

LatticeMapSpec LatticeMapSpec::twist(Potential pot, Rational K, long long N, MomentumSign sign) {
    if (N < 2 || (N & (N - 1)) != 0)
        throw std::invalid_argument("LatticeMapSpec: twist lattice size must be a power of two >= 2");
    LatticeMapSpec s;
    s.kind = MapKind::twist;
    s.modulus = N;
    s.potential = pot;
    s.K = K;
    s.sign = sign;
    return s;
}

LatticeMapSpec LatticeMapSpec::affine(Mat2 m, LatticePoint shift, long long modulus) {
    if (modulus < 2) throw std::invalid_argument("LatticeMapSpec: modulus must be >= 2");
    if (!m.is_unimodular()) throw std::invalid_argument("LatticeMapSpec: affine matrix must have det 1");
    LatticeMapSpec s;
    s.kind = MapKind::affine;
    s.modulus = modulus;
    s.matrix = m;
    s.shift = {mod_reduce(shift.x, modulus), mod_reduce(shift.y, modulus)};
    return s;
}

bool LatticeMapSpec::power_of_two_modulus() const {
    return modulus >= 2 && (modulus & (modulus - 1)) == 0;
}

int LatticeMapSpec::qubits_per_coordinate() const {
    int w = 0;
    while ((1ll << w) < modulus) ++w;
    return w;
}

std::string LatticeMapSpec::to_config() const {
    std::ostringstream out;
    out << "kind = " << to_string(kind) << "\n";
    switch (kind) {
        case MapKind::cat:
            out << "g = " << modulus << "\n";
            out << "matrix = " << matrix.a << " " << matrix.b << " " << matrix.c << " "
                << matrix.d << "\n";
            break;
        case MapKind::twist:
            out << "potential = " << to_string(potential) << "\n";
            out << "K = " << K.str() << "\n";
            out << "N = " << modulus << "\n";
            out << "sign = " << to_string(sign) << "\n";
            break;
        case MapKind::affine:
            out << "N = " << modulus << "\n";
            out << "matrix = " << matrix.a << " " << matrix.b << " " << matrix.c << " "
                << matrix.d << "\n";
            out << "shift = " << shift.x << " " << shift.y << "\n";
            break;
    }
    return out.str();
}

LatticeMapSpec LatticeMapSpec::from_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("map config: expected 'key = value' in '" + line + "'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("map config: missing key '" + key + "'");
        return it->second;
    };
    auto parse_matrix = [&](const std::string& v) {
        std::istringstream ms(v);
        Mat2 m;
        if (!(ms >> m.a >> m.b >> m.c >> m.d))
            throw std::invalid_argument("map config: matrix wants four integers");
        return m;
    };

    const std::string kind = need("kind");
    if (kind == "cat") {
        Mat2 m = kv.count("matrix") ? parse_matrix(kv["matrix"]) : Mat2::cat();
        return LatticeMapSpec::cat(std::stoll(need("g")), m);
    }
    if (kind == "twist") {
        const std::string pot = need("potential");
        if (pot != "standard" && pot != "sawtooth")
            throw std::invalid_argument("map config: unknown potential '" + pot + "'");
        MomentumSign sign = MomentumSign::printed;
        if (kv.count("sign")) {
            if (kv["sign"] == "continuous")
                sign = MomentumSign::continuous;
            else if (kv["sign"] != "printed")
                throw std::invalid_argument("map config: sign must be printed or continuous");
        }
        return LatticeMapSpec::twist(pot == "standard" ? Potential::standard : Potential::sawtooth,
                                     Rational::parse(need("K")), std::stoll(need("N")), sign);
    }
    if (kind == "affine") {
        std::istringstream ss(need("shift"));
        LatticePoint sh;
        if (!(ss >> sh.x >> sh.y)) throw std::invalid_argument("map config: shift wants two integers");
        return LatticeMapSpec::affine(parse_matrix(need("matrix")), sh, std::stoll(need("N")));
    }
    throw std::invalid_argument("map config: unknown kind '" + kind + "'");
}

LatticePoint AffineForm::apply(LatticePoint p) const {
    return {mod_reduce(m.a * p.x + m.b * p.y + shift.x, modulus),
            mod_reduce(m.c * p.x + m.d * p.y + shift.y, modulus)};
}

AffineForm AffineForm::power(unsigned long long t) const {
    // (M, s)^t by doubling on the pair: (M1,s1)*(M2,s2) = (M1 M2, M1 s2 + s1).
    auto compose = [this](const AffineForm& f, const AffineForm& g) {
        AffineForm r;
        r.modulus = modulus;
        r.m = mat_mul_mod(f.m, g.m, modulus);
        r.shift = {mod_reduce(f.m.a * g.shift.x + f.m.b * g.shift.y + f.shift.x, modulus),
                   mod_reduce(f.m.c * g.shift.x + f.m.d * g.shift.y + f.shift.y, modulus)};
        return r;
    };
    AffineForm result{Mat2::identity(), {0, 0}, modulus};
    AffineForm base = *this;
    base.m = mat_pow_mod(base.m, 1, modulus);
    base.shift = {mod_reduce(base.shift.x, modulus), mod_reduce(base.shift.y, modulus)};
    while (t > 0) {
        if (t & 1ull) result = compose(result, base);
        t >>= 1ull;
        if (t > 0) base = compose(base, base);
    }
    return result;
}

AffineForm AffineForm::inverse() const {
    // v -> Minv (v - s)
    const Mat2 mi = mat_inverse_mod(m, modulus);
    AffineForm r;
    r.modulus = modulus;
    r.m = mi;
    r.shift = {mod_reduce(-(mi.a * shift.x + mi.b * shift.y), modulus),
               mod_reduce(-(mi.c * shift.x + mi.d * shift.y), modulus)};
    return r;
}

std::optional<AffineForm> affine_form(const LatticeMapSpec& spec) {
    switch (spec.kind) {
        case MapKind::cat:
            return AffineForm{spec.matrix, {0, 0}, spec.modulus};
        case MapKind::affine:
            return AffineForm{spec.matrix, spec.shift, spec.modulus};
        case MapKind::twist:
            break;
    }
    if (spec.potential != Potential::sawtooth || !spec.K.is_integer()) return std::nullopt;
    // Integer-K sawtooth: delta(X) = K (X - N/2) exactly, so the map is the
    // affine skew  Y' = K X + Y - K N/2,  X' = (K+1) X + Y - K N/2.
    const long long k = spec.K.num;
    const long long N = spec.modulus;
    long long c = -k * (N / 2);
    if (spec.sign == MomentumSign::continuous) c = -c;
    const long long kk = spec.sign == MomentumSign::printed ? k : -k;
    Mat2 m{kk + 1, 1, kk, 1};
    return AffineForm{m, {mod_reduce(c, N), mod_reduce(c, N)}, N};
}

namespace {

/// Floor of sign * N * K * (-sin(2 pi X / N)) / (2 pi) with a proved result:
/// every step is evaluated with both downward and upward rounding, the sin
/// enclosure is padded by the argument width, and the precision is raised
/// until both ends of the enclosure floor to the same integer. The only
/// inputs where the quantity is an exact integer have sin = 0, and those are
/// handled before calling this.
long long standard_floor_guarded(long long Knum, long long Kden, long long N, long long X,
                                 int sign) {
    for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
        mpfr_t pi_lo, pi_hi, th_lo, th_hi, s_lo, s_hi, tmp, width, y_lo, y_hi;
        mpfr_inits2(prec, pi_lo, pi_hi, th_lo, th_hi, s_lo, s_hi, tmp, width, y_lo, y_hi,
                    (mpfr_ptr) nullptr);

        mpfr_const_pi(pi_lo, MPFR_RNDD);
        mpfr_const_pi(pi_hi, MPFR_RNDU);
        // theta = 2 pi X / N, X >= 0
        mpfr_mul_si(th_lo, pi_lo, 2 * X, MPFR_RNDD);
        mpfr_div_si(th_lo, th_lo, N, MPFR_RNDD);
        mpfr_mul_si(th_hi, pi_hi, 2 * X, MPFR_RNDU);
        mpfr_div_si(th_hi, th_hi, N, MPFR_RNDU);
        mpfr_sub(width, th_hi, th_lo, MPFR_RNDU);

        // sin over [th_lo, th_hi]: endpoint values padded by the interval
        // width (|sin'| <= 1).
        mpfr_sin(s_lo, th_lo, MPFR_RNDD);
        mpfr_sin(tmp, th_hi, MPFR_RNDD);
        if (mpfr_cmp(tmp, s_lo) < 0) mpfr_set(s_lo, tmp, MPFR_RNDD);
        mpfr_sub(s_lo, s_lo, width, MPFR_RNDD);
        mpfr_sin(s_hi, th_lo, MPFR_RNDU);
        mpfr_sin(tmp, th_hi, MPFR_RNDU);
        if (mpfr_cmp(tmp, s_hi) > 0) mpfr_set(s_hi, tmp, MPFR_RNDU);
        mpfr_add(s_hi, s_hi, width, MPFR_RNDU);

        // y = c * s with c = -sign * N * Knum / (Kden * 2 pi); c < 0 flips
        // the interval ends.
        const long long cnum = -static_cast<long long>(sign) * N * Knum;
        auto eval_y = [&](mpfr_t out, mpfr_t s_end, mpfr_rnd_t rnd, mpfr_t pi_opp) {
            // out = cnum * s_end / (Kden * 2 * pi), rounded toward `rnd`;
            // the pi used must round the quotient in the same direction.
            mpfr_mul_si(out, s_end, cnum, rnd);
            mpfr_div_si(out, out, 2 * Kden, rnd);
            mpfr_div(out, out, pi_opp, rnd);
        };
        // Lower end: minimize. cnum * s is minimized at s_hi when cnum < 0,
        // at s_lo when cnum >= 0. Dividing by pi: a positive value shrinks
        // with larger pi, a negative one with smaller pi.
        if (cnum >= 0) {
            eval_y(y_lo, s_lo, MPFR_RNDD, mpfr_sgn(s_lo) >= 0 ? pi_hi : pi_lo);
            eval_y(y_hi, s_hi, MPFR_RNDU, mpfr_sgn(s_hi) >= 0 ? pi_lo : pi_hi);
        } else {
            eval_y(y_lo, s_hi, MPFR_RNDD, mpfr_sgn(s_hi) >= 0 ? pi_lo : pi_hi);
            eval_y(y_hi, s_lo, MPFR_RNDU, mpfr_sgn(s_lo) >= 0 ? pi_hi : pi_lo);
        }

        mpfr_floor(y_lo, y_lo);
        mpfr_floor(y_hi, y_hi);
        const long long f_lo = mpfr_get_si(y_lo, MPFR_RNDN);
        const long long f_hi = mpfr_get_si(y_hi, MPFR_RNDN);
        mpfr_clears(pi_lo, pi_hi, th_lo, th_hi, s_lo, s_hi, tmp, width, y_lo, y_hi,
                    (mpfr_ptr) nullptr);
        if (f_lo == f_hi) return f_lo;
    }
    throw std::runtime_error("twist_delta: interval guard did not separate from an integer");
}

}  // namespace

long long twist_delta(const LatticeMapSpec& spec, long long X) {
    if (spec.kind != MapKind::twist) throw std::invalid_argument("twist_delta: not a twist map");
    const long long N = spec.modulus;
    const int sgn = spec.sign == MomentumSign::printed ? 1 : -1;
    if (spec.potential == Potential::sawtooth) {
        // N K (2 pi X / N - pi) / (2 pi) = K (2X - N) / 2, exactly rational.
        const long long num = static_cast<long long>(sgn) * spec.K.num * (2 * X - N);
        return floor_div(num, 2 * spec.K.den);
    }
    // Standard potential, V = cos: the force slot is -sin(theta). sin
    // vanishes exactly at X = 0 and X = N/2 and nowhere else on the lattice,
    // and those are the only points where the floored quantity can be an
    // exact integer.
    if (X == 0 || 2 * X == N) return 0;
    return standard_floor_guarded(spec.K.num, spec.K.den, N, X, sgn);
}

LatticePoint apply_map(const LatticeMapSpec& spec, LatticePoint p) {
    require_in_lattice(spec, p);
    const long long g = spec.modulus;
    switch (spec.kind) {
        case MapKind::cat:
            return {mod_reduce(spec.matrix.a * p.x + spec.matrix.b * p.y, g),
                    mod_reduce(spec.matrix.c * p.x + spec.matrix.d * p.y, g)};
        case MapKind::affine:
            return {mod_reduce(spec.matrix.a * p.x + spec.matrix.b * p.y + spec.shift.x, g),
                    mod_reduce(spec.matrix.c * p.x + spec.matrix.d * p.y + spec.shift.y, g)};
        case MapKind::twist: {
            // Momentum first, then position with the already-updated momentum.
            const long long ybar = mod_reduce(p.y + twist_delta(spec, p.x), g);
            const long long xbar = mod_reduce(p.x + ybar, g);
            return {xbar, ybar};
        }
    }
    throw std::logic_error("apply_map: bad kind");
}

LatticePoint invert_map(const LatticeMapSpec& spec, LatticePoint p) {
    require_in_lattice(spec, p);
    const long long g = spec.modulus;
    switch (spec.kind) {
        case MapKind::cat: {
            const Mat2 mi = mat_inverse_mod(spec.matrix, g);
            return {mod_reduce(mi.a * p.x + mi.b * p.y, g), mod_reduce(mi.c * p.x + mi.d * p.y, g)};
        }
        case MapKind::affine:
            return affine_form(spec)->inverse().apply(p);
        case MapKind::twist: {
            // Undo the position update, then the momentum update.
            const long long x = mod_reduce(p.x - p.y, g);
            const long long y = mod_reduce(p.y - twist_delta(spec, x), g);
            return {x, y};
        }
    }
    throw std::logic_error("invert_map: bad kind");
}

LatticePoint iterate(const LatticeMapSpec& spec, LatticePoint p, long long t) {
    if (t < 0) throw std::invalid_argument("iterate: t must be >= 0");
    require_in_lattice(spec, p);
    for (long long i = 0; i < t; ++i) p = apply_map(spec, p);
    return p;
}

LatticePoint fast_iterate(const LatticeMapSpec& spec, LatticePoint p, unsigned long long t) {
    require_in_lattice(spec, p);
    const auto form = affine_form(spec);
    if (!form)
        throw std::invalid_argument(
            "fast_iterate: no fast power form for this map (twist with non-integer K); "
            "use iterate");
    return form->power(t).apply(p);
}

}  // namespace qrec
