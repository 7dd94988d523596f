#include "qrec/blocks.hpp"

#include <numeric>
#include <stdexcept>

namespace qrec {

namespace {

long long mod_reduce(long long x, long long g) {
    long long r = x % g;
    return r < 0 ? r + g : r;
}

long long mod_inverse(long long k, long long m) {
    long long t = 0, newt = 1, r = m, newr = mod_reduce(k, m);
    while (newr != 0) {
        const long long q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: value not invertible");
    return mod_reduce(t, m);
}

std::vector<int> concat_qubits(const RegisterLayout& layout,
                               std::initializer_list<std::string> regs,
                               std::optional<int> extra = std::nullopt) {
    std::vector<int> qs;
    for (const auto& r : regs)
        for (int q : layout.qubits(r)) qs.push_back(q);
    if (extra) qs.push_back(*extra);
    return qs;
}

/// Elementary estimate for one map application, keyed on the declared kind.
long long map_step_cost(const LatticeMapSpec& spec, int w) {
    if (spec.kind == MapKind::twist)
        return cost::twist_step(spec.potential == Potential::standard, w);
    return cost::pair_matrix_step(w);
}

}  // namespace

GateOp controlled_modmul_block(const RegisterLayout& layout, const std::string& target_reg,
                               long long k, long long m, int control_qubit) {
    if (m < 1) throw std::invalid_argument("controlled_modmul: modulus must be >= 1");
    k = mod_reduce(k, m);
    if (std::gcd(k, m) != 1) throw std::invalid_argument("controlled_modmul: gcd(k, m) != 1");
    const auto& reg = layout.reg(target_reg);
    if ((1ll << reg.width) < m)
        throw std::invalid_argument("controlled_modmul: register narrower than the modulus");
    const long long kinv = mod_inverse(k, m);
    const int w = reg.width;
    const std::uint64_t ctrl_bit = 1ull << w;  // control packs above the target bits

    auto act = [m, w](std::uint64_t packed, long long mult) -> std::uint64_t {
        if (!(packed >> w)) return packed;  // control off
        const std::uint64_t v = packed & ((1ull << w) - 1ull);
        if (static_cast<long long>(v) >= m) return packed;  // unused code
        const std::uint64_t image =
            static_cast<std::uint64_t>(mod_reduce(static_cast<long long>(v) * mult, m));
        return (packed & ~((1ull << w) - 1ull)) | image;
    };
    (void)ctrl_bit;

    auto spec = make_permutation(
        "cmodmul[k=" + std::to_string(k) + ",m=" + std::to_string(m) + "]",
        concat_qubits(layout, {target_reg}, control_qubit), cost::controlled_mod_mul(w),
        [act, k](std::uint64_t p) { return act(p, k); },
        [act, kinv](std::uint64_t p) { return act(p, kinv); });
    return GateOp::permutation(spec);
}

GateOp matrix_step_block(const RegisterLayout& layout, const Mat2& step, long long g,
                         const std::string& reg_a, const std::string& reg_b,
                         const std::string& reg_c, const std::string& reg_d,
                         std::optional<int> control_qubit) {
    if (g < 1) throw std::invalid_argument("matrix_step: modulus must be >= 1");
    if (mod_reduce(step.det(), g) != mod_reduce(1, g))
        throw std::invalid_argument("matrix_step: step determinant is not 1 mod g");
    const int w = layout.reg(reg_a).width;
    if (layout.reg(reg_b).width != w || layout.reg(reg_c).width != w ||
        layout.reg(reg_d).width != w)
        throw std::invalid_argument("matrix_step: value registers must share one width");
    if ((1ll << w) < g) throw std::invalid_argument("matrix_step: registers narrower than g");

    const Mat2 fwd = mat_pow_mod(step, 1, g);
    const Mat2 inv = mat_inverse_mod(step, g);
    const bool controlled = control_qubit.has_value();

    auto act = [w, g, controlled](std::uint64_t packed, Mat2 m) -> std::uint64_t {
        const std::uint64_t mask = (1ull << w) - 1ull;
        if (controlled && !((packed >> (4 * w)) & 1ull)) return packed;
        long long vals[4];
        for (int i = 0; i < 4; ++i) {
            vals[i] = static_cast<long long>((packed >> (i * w)) & mask);
            if (vals[i] >= g) return packed;  // unused codes are fixed
        }
        // Row-vector times matrix on each of the two rows.
        const long long na = mod_reduce(vals[0] * m.a + vals[1] * m.c, g);
        const long long nb = mod_reduce(vals[0] * m.b + vals[1] * m.d, g);
        const long long nc = mod_reduce(vals[2] * m.a + vals[3] * m.c, g);
        const long long nd = mod_reduce(vals[2] * m.b + vals[3] * m.d, g);
        std::uint64_t out = packed;
        const long long nv[4] = {na, nb, nc, nd};
        for (int i = 0; i < 4; ++i) {
            out &= ~(mask << (i * w));
            out |= static_cast<std::uint64_t>(nv[i]) << (i * w);
        }
        return out;
    };

    auto spec = make_permutation(
        "matstep[a=" + std::to_string(fwd.a) + ",b=" + std::to_string(fwd.b) +
            ",c=" + std::to_string(fwd.c) + ",d=" + std::to_string(fwd.d) +
            ",g=" + std::to_string(g) + "]",
        controlled ? concat_qubits(layout, {reg_a, reg_b, reg_c, reg_d}, control_qubit)
                   : concat_qubits(layout, {reg_a, reg_b, reg_c, reg_d}),
        cost::matrix_entry_step(w), [act, fwd](std::uint64_t p) { return act(p, fwd); },
        [act, inv](std::uint64_t p) { return act(p, inv); });
    return GateOp::permutation(spec);
}

GateOp map_step_block(const RegisterLayout& layout, const LatticeMapSpec& spec,
                      const std::string& xreg, const std::string& yreg, bool inverse) {
    const int w = layout.reg(xreg).width;
    if (layout.reg(yreg).width != w)
        throw std::invalid_argument("map_step: coordinate registers must share one width");
    if ((1ll << w) < spec.modulus)
        throw std::invalid_argument("map_step: registers narrower than the lattice");
    const long long N = spec.modulus;

    // Precompute the twist force column so permutation evaluation is table
    // lookup, not directed rounding.
    std::vector<long long> delta;
    if (spec.kind == MapKind::twist) {
        delta.resize(static_cast<size_t>(N));
        for (long long x = 0; x < N; ++x) delta[static_cast<size_t>(x)] = twist_delta(spec, x);
    }

    auto forward = [spec, w, N, delta](std::uint64_t packed) -> std::uint64_t {
        const std::uint64_t mask = (1ull << w) - 1ull;
        const long long x = static_cast<long long>(packed & mask);
        const long long y = static_cast<long long>((packed >> w) & mask);
        if (x >= N || y >= N) return packed;
        LatticePoint q;
        if (spec.kind == MapKind::twist) {
            const long long yb = mod_reduce(y + delta[static_cast<size_t>(x)], N);
            q = {mod_reduce(x + yb, N), yb};
        } else {
            q = apply_map(spec, {x, y});
        }
        return (packed & ~(mask | (mask << w))) | static_cast<std::uint64_t>(q.x) |
               (static_cast<std::uint64_t>(q.y) << w);
    };
    auto backward = [spec, w, N, delta](std::uint64_t packed) -> std::uint64_t {
        const std::uint64_t mask = (1ull << w) - 1ull;
        const long long x = static_cast<long long>(packed & mask);
        const long long y = static_cast<long long>((packed >> w) & mask);
        if (x >= N || y >= N) return packed;
        LatticePoint q;
        if (spec.kind == MapKind::twist) {
            const long long px = mod_reduce(x - y, N);
            q = {px, mod_reduce(y - delta[static_cast<size_t>(px)], N)};
        } else {
            q = invert_map(spec, {x, y});
        }
        return (packed & ~(mask | (mask << w))) | static_cast<std::uint64_t>(q.x) |
               (static_cast<std::uint64_t>(q.y) << w);
    };

    const std::string name = std::string("map") + (inverse ? "_inv" : "") + "[" +
                             to_string(spec.kind) + ",N=" + std::to_string(N) + "]";
    auto pspec = inverse ? make_permutation(name, concat_qubits(layout, {xreg, yreg}),
                                            map_step_cost(spec, w), backward, forward)
                         : make_permutation(name, concat_qubits(layout, {xreg, yreg}),
                                            map_step_cost(spec, w), forward, backward);
    return GateOp::permutation(pspec);
}

GateOp map_power_block(const RegisterLayout& layout, const LatticeMapSpec& spec,
                       const std::string& xreg, const std::string& yreg, unsigned long long t,
                       std::optional<int> control_qubit, bool inverse) {
    const auto base = affine_form(spec);
    if (!base)
        throw std::invalid_argument(
            "map_power: map has no fast power form (twist with non-integer K)");
    const int w = layout.reg(xreg).width;
    if (layout.reg(yreg).width != w)
        throw std::invalid_argument("map_power: coordinate registers must share one width");
    if ((1ll << w) < spec.modulus)
        throw std::invalid_argument("map_power: registers narrower than the lattice");
    const long long N = spec.modulus;
    AffineForm fwd = base->power(t);
    AffineForm bwd = fwd.inverse();
    if (inverse) std::swap(fwd, bwd);
    const bool controlled = control_qubit.has_value();

    auto act = [w, N, controlled](std::uint64_t packed, const AffineForm& f) -> std::uint64_t {
        const std::uint64_t mask = (1ull << w) - 1ull;
        if (controlled && !((packed >> (2 * w)) & 1ull)) return packed;
        const long long x = static_cast<long long>(packed & mask);
        const long long y = static_cast<long long>((packed >> w) & mask);
        if (x >= N || y >= N) return packed;
        const LatticePoint q = f.apply({x, y});
        return (packed & ~(mask | (mask << w))) | static_cast<std::uint64_t>(q.x) |
               (static_cast<std::uint64_t>(q.y) << w);
    };

    auto pspec = make_permutation(
        std::string("mappow") + (inverse ? "_inv" : "") + "[" + to_string(spec.kind) +
            ",N=" + std::to_string(N) + ",t=" + std::to_string(t) + "]",
        controlled ? concat_qubits(layout, {xreg, yreg}, control_qubit)
                   : concat_qubits(layout, {xreg, yreg}),
        cost::pair_matrix_step(w), [act, fwd](std::uint64_t p) { return act(p, fwd); },
        [act, bwd](std::uint64_t p) { return act(p, bwd); });
    return GateOp::permutation(pspec);
}

GateOp translate_block(const RegisterLayout& layout, const std::string& xreg,
                       const std::string& yreg, long long dx, long long dy, long long N,
                       bool inverse) {
    const int w = layout.reg(xreg).width;
    if ((1ll << w) < N) throw std::invalid_argument("translate: registers narrower than N");
    if (inverse) {
        dx = -dx;
        dy = -dy;
    }
    dx = mod_reduce(dx, N);
    dy = mod_reduce(dy, N);

    auto shift = [w, N](std::uint64_t packed, long long sx, long long sy) -> std::uint64_t {
        const std::uint64_t mask = (1ull << w) - 1ull;
        const long long x = static_cast<long long>(packed & mask);
        const long long y = static_cast<long long>((packed >> w) & mask);
        if (x >= N || y >= N) return packed;
        return (packed & ~(mask | (mask << w))) |
               static_cast<std::uint64_t>(mod_reduce(x + sx, N)) |
               (static_cast<std::uint64_t>(mod_reduce(y + sy, N)) << w);
    };

    auto pspec = make_permutation(
        "translate[" + std::to_string(dx) + "," + std::to_string(dy) + ",N=" + std::to_string(N) +
            "]",
        concat_qubits(layout, {xreg, yreg}), cost::translate(w),
        [shift, dx, dy](std::uint64_t p) { return shift(p, dx, dy); },
        [shift, dx, dy, N](std::uint64_t p) {
            return shift(p, mod_reduce(-dx, N), mod_reduce(-dy, N));
        });
    return GateOp::permutation(pspec);
}

GateOp xor_pair_block(const RegisterLayout& layout, const std::string& xreg,
                      const std::string& yreg, const std::string& ureg, const std::string& vreg) {
    const int w = layout.reg(xreg).width;
    if (layout.reg(yreg).width != w || layout.reg(ureg).width != w ||
        layout.reg(vreg).width != w)
        throw std::invalid_argument("xor_pair: all four registers must share one width");

    auto act = [w](std::uint64_t packed) -> std::uint64_t {
        const std::uint64_t mask = (1ull << w) - 1ull;
        const std::uint64_t x = packed & mask;
        const std::uint64_t y = (packed >> w) & mask;
        std::uint64_t u = (packed >> (2 * w)) & mask;
        std::uint64_t v = (packed >> (3 * w)) & mask;
        u ^= x;
        v ^= y;
        return (packed & ~(((mask << w) | mask) << (2 * w))) | (u << (2 * w)) | (v << (3 * w));
    };
    auto pspec = make_permutation("xorpair", concat_qubits(layout, {xreg, yreg, ureg, vreg}),
                                  cost::xor_pair(w), act, act);
    return GateOp::permutation(pspec);
}

GateOp line_embed_block(const RegisterLayout& layout, const SymmetryLine& line,
                        const std::string& sreg, const std::string& xreg,
                        const std::string& yreg) {
    const int w = layout.reg(sreg).width;
    if (layout.reg(xreg).width != w || layout.reg(yreg).width != w)
        throw std::invalid_argument("line_embed: registers must share one width");
    if ((1ll << w) != line.size)
        throw std::invalid_argument("line_embed: line size must equal the register capacity");

    std::vector<std::uint64_t> lx(static_cast<size_t>(line.size)),
        ly(static_cast<size_t>(line.size));
    for (long long s = 0; s < line.size; ++s) {
        const LatticePoint p = line.at(s);
        lx[static_cast<size_t>(s)] = static_cast<std::uint64_t>(p.x);
        ly[static_cast<size_t>(s)] = static_cast<std::uint64_t>(p.y);
    }

    auto act = [w, lx, ly](std::uint64_t packed) -> std::uint64_t {
        const std::uint64_t mask = (1ull << w) - 1ull;
        const std::uint64_t s = packed & mask;
        std::uint64_t x = (packed >> w) & mask;
        std::uint64_t y = (packed >> (2 * w)) & mask;
        x ^= lx[s];
        y ^= ly[s];
        return (packed & mask) | (x << w) | (y << (2 * w));
    };
    auto pspec = make_permutation("line[" + line.id + "]",
                                  concat_qubits(layout, {sreg, xreg, yreg}), cost::line_embed(w),
                                  act, act);
    return GateOp::permutation(pspec);
}

void add_diffusion(Circuit& circuit, const std::vector<int>& qubits) {
    for (int q : qubits) circuit.push(GateOp::hadamard(q));
    std::vector<PatternBit> zeros;
    zeros.reserve(qubits.size());
    for (int q : qubits) zeros.push_back({q, 0});
    circuit.push(GateOp::multi_controlled_z(zeros));
    for (int q : qubits) circuit.push(GateOp::hadamard(q));
    // H (I - 2|0><0|) H = -(2|u><u| - I); the empty-pattern flip restores the
    // exact inversion about the mean.
    circuit.push(GateOp::multi_controlled_z({}));
}

}  // namespace qrec
