#include "qrec/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrec {

namespace {

using cd = std::complex<double>;

constexpr double prune_eps = 1e-14;  // compressed-backend zero threshold
constexpr double inv_sqrt2 = 0.7071067811865475244;

/// b[k] = 2^{-w/2} sum_t e^{sign 2 pi i t k / n} a[t], n = 2^w.
void fourier_pow2(std::vector<cd>& a, int sign) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = static_cast<double>(sign) * 2.0 * std::numbers::pi /
                           static_cast<double>(len);
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; ++j) {
                const cd w = std::polar(1.0, ang * static_cast<double>(j));
                const cd u = a[i + j];
                const cd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& x : a) x *= scale;
}

bool pattern_matches(std::uint64_t index, const std::vector<PatternBit>& pattern) {
    for (const auto& p : pattern)
        if (((index >> p.qubit) & 1ull) != static_cast<std::uint64_t>(p.value)) return false;
    return true;
}

std::uint64_t gather_bits(std::uint64_t index, const std::vector<int>& qubits) {
    std::uint64_t v = 0;
    for (size_t i = 0; i < qubits.size(); ++i) v |= ((index >> qubits[i]) & 1ull) << i;
    return v;
}

std::uint64_t scatter_bits(std::uint64_t index, const std::vector<int>& qubits, std::uint64_t v) {
    for (size_t i = 0; i < qubits.size(); ++i) {
        const std::uint64_t bit = (v >> i) & 1ull;
        index = (index & ~(1ull << qubits[i])) | (bit << qubits[i]);
    }
    return index;
}

}  // namespace

const char* to_string(Backend b) {
    switch (b) {
        case Backend::dense: return "dense";
        case Backend::compressed: return "compressed";
        case Backend::automatic: return "auto";
    }
    return "?";
}

std::vector<std::uint64_t> MeasurementRecord::outcomes() const {
    std::vector<std::uint64_t> out;
    out.reserve(histogram.size());
    for (const auto& [v, n] : histogram) out.push_back(v);
    return out;
}

PureState PureState::alloc(const RegisterLayout& layout, const std::vector<std::uint64_t>& values,
                           Backend backend) {
    PureState s;
    s.layout_ = layout;
    if (backend == Backend::automatic)
        backend = layout.total_width() <= 20 ? Backend::dense : Backend::compressed;
    s.backend_ = backend;
    const std::uint64_t index = layout.pack(values);
    if (backend == Backend::dense) {
        if (layout.total_width() > dense_qubit_limit)
            throw ResourceError("dense backend limited to 24 qubits");
        s.dense_.assign(1ull << layout.total_width(), cd{0.0, 0.0});
        s.dense_[index] = cd{1.0, 0.0};
    } else {
        s.sparse_.reserve(16);
        s.sparse_[index] = cd{1.0, 0.0};
    }
    return s;
}

void PureState::check_compressed_size(size_t projected) const {
    if (projected > compressed_entry_limit)
        throw ResourceError("compressed backend would exceed 2^20 nonzero basis states");
}

void PureState::apply(const GateOp& op) {
    if (op.max_qubit() >= width()) throw std::invalid_argument("apply: qubit outside layout");
    if (op.kind == GateKind::permutation && !op.perm->applicable())
        throw std::invalid_argument("apply: permutation '" + op.perm->name +
                                    "' carries no function (parsed from a netlist?)");
    if (backend_ == Backend::dense)
        apply_dense(op);
    else
        apply_compressed(op);
}

void PureState::apply_dense(const GateOp& op) {
    const size_t n = dense_.size();
    switch (op.kind) {
        case GateKind::hadamard: {
            const std::uint64_t bit = 1ull << op.q0;
            for (std::uint64_t i = 0; i < n; ++i) {
                if (i & bit) continue;
                const cd a0 = dense_[i], a1 = dense_[i | bit];
                dense_[i] = (a0 + a1) * inv_sqrt2;
                dense_[i | bit] = (a0 - a1) * inv_sqrt2;
            }
            break;
        }
        case GateKind::flip_x: {
            const std::uint64_t bit = 1ull << op.q0;
            for (std::uint64_t i = 0; i < n; ++i)
                if (!(i & bit)) std::swap(dense_[i], dense_[i | bit]);
            break;
        }
        case GateKind::phase_z: {
            const std::uint64_t bit = 1ull << op.q0;
            for (std::uint64_t i = 0; i < n; ++i)
                if (i & bit) dense_[i] = -dense_[i];
            break;
        }
        case GateKind::controlled_phase: {
            const std::uint64_t mask = (1ull << op.q0) | (1ull << op.q1);
            const cd phase = std::polar(1.0, op.angle);
            for (std::uint64_t i = 0; i < n; ++i)
                if ((i & mask) == mask) dense_[i] *= phase;
            break;
        }
        case GateKind::swap: {
            const std::uint64_t b0 = 1ull << op.q0, b1 = 1ull << op.q1;
            for (std::uint64_t i = 0; i < n; ++i) {
                if ((i & b0) && !(i & b1)) std::swap(dense_[i], dense_[(i ^ b0) | b1]);
            }
            break;
        }
        case GateKind::multi_controlled_z: {
            for (std::uint64_t i = 0; i < n; ++i)
                if (pattern_matches(i, op.pattern)) dense_[i] = -dense_[i];
            break;
        }
        case GateKind::permutation: {
            std::vector<cd> out(n, cd{0.0, 0.0});
            for (std::uint64_t i = 0; i < n; ++i) {
                const cd a = dense_[i];
                if (a == cd{0.0, 0.0}) continue;
                const std::uint64_t v = gather_bits(i, op.perm->qubits);
                out[scatter_bits(i, op.perm->qubits, op.perm->forward(v))] = a;
            }
            dense_ = std::move(out);
            break;
        }
    }
}

void PureState::apply_compressed(const GateOp& op) {
    switch (op.kind) {
        case GateKind::hadamard: {
            const std::uint64_t bit = 1ull << op.q0;
            std::unordered_map<std::uint64_t, cd> out;
            out.reserve(sparse_.size() * 2);
            for (const auto& [i, a] : sparse_) {
                const cd contrib = a * inv_sqrt2;
                out[i & ~bit] += contrib;
                out[i | bit] += (i & bit) ? -contrib : contrib;
            }
            for (auto it = out.begin(); it != out.end();)
                it = std::abs(it->second) < prune_eps ? out.erase(it) : std::next(it);
            check_compressed_size(out.size());
            sparse_ = std::move(out);
            break;
        }
        case GateKind::flip_x: {
            const std::uint64_t bit = 1ull << op.q0;
            std::unordered_map<std::uint64_t, cd> out;
            out.reserve(sparse_.size());
            for (const auto& [i, a] : sparse_) out[i ^ bit] = a;
            sparse_ = std::move(out);
            break;
        }
        case GateKind::phase_z: {
            const std::uint64_t bit = 1ull << op.q0;
            for (auto& [i, a] : sparse_)
                if (i & bit) a = -a;
            break;
        }
        case GateKind::controlled_phase: {
            const std::uint64_t mask = (1ull << op.q0) | (1ull << op.q1);
            const cd phase = std::polar(1.0, op.angle);
            for (auto& [i, a] : sparse_)
                if ((i & mask) == mask) a *= phase;
            break;
        }
        case GateKind::swap: {
            const std::uint64_t b0 = 1ull << op.q0, b1 = 1ull << op.q1;
            std::unordered_map<std::uint64_t, cd> out;
            out.reserve(sparse_.size());
            for (const auto& [i, a] : sparse_) {
                const std::uint64_t v0 = (i >> op.q0) & 1ull, v1 = (i >> op.q1) & 1ull;
                std::uint64_t j = i & ~(b0 | b1);
                j |= v1 << op.q0;
                j |= v0 << op.q1;
                out[j] = a;
            }
            sparse_ = std::move(out);
            break;
        }
        case GateKind::multi_controlled_z: {
            for (auto& [i, a] : sparse_)
                if (pattern_matches(i, op.pattern)) a = -a;
            break;
        }
        case GateKind::permutation: {
            std::unordered_map<std::uint64_t, cd> out;
            out.reserve(sparse_.size());
            for (const auto& [i, a] : sparse_) {
                const std::uint64_t v = gather_bits(i, op.perm->qubits);
                out[scatter_bits(i, op.perm->qubits, op.perm->forward(v))] = a;
            }
            sparse_ = std::move(out);
            break;
        }
    }
}

void PureState::apply_circuit(const Circuit& c) {
    if (!(c.layout() == layout_)) throw std::invalid_argument("apply_circuit: layout mismatch");
    for (const auto& op : c.ops()) apply(op);
}

void PureState::qft_register(const std::string& reg, bool inverse) {
    const auto& r = layout_.reg(reg);
    const size_t block = 1ull << r.width;
    const int sign = inverse ? -1 : 1;
    if (backend_ == Backend::dense) {
        const std::uint64_t low_mask = (1ull << r.offset) - 1ull;
        const size_t groups = dense_.size() >> r.width;
        std::vector<cd> buf(block);
        for (std::uint64_t gidx = 0; gidx < groups; ++gidx) {
            // Rebuild the full index with the register bits spliced out.
            const std::uint64_t rest = ((gidx & ~low_mask) << r.width) | (gidx & low_mask);
            for (std::uint64_t v = 0; v < block; ++v) buf[v] = dense_[rest | (v << r.offset)];
            fourier_pow2(buf, sign);
            for (std::uint64_t v = 0; v < block; ++v) dense_[rest | (v << r.offset)] = buf[v];
        }
    } else {
        const std::uint64_t reg_mask = (block - 1ull) << r.offset;
        std::unordered_map<std::uint64_t, std::vector<cd>> groups;
        for (const auto& [i, a] : sparse_) {
            auto& vec = groups[i & ~reg_mask];
            if (vec.empty()) vec.assign(block, cd{0.0, 0.0});
            vec[(i & reg_mask) >> r.offset] = a;
        }
        check_compressed_size(groups.size() * block);
        std::unordered_map<std::uint64_t, cd> out;
        out.reserve(groups.size() * block);
        for (auto& [rest, vec] : groups) {
            fourier_pow2(vec, sign);
            for (std::uint64_t v = 0; v < block; ++v)
                if (std::abs(vec[v]) >= prune_eps) out[rest | (v << r.offset)] = vec[v];
        }
        sparse_ = std::move(out);
    }
}

void PureState::scale(cd factor) {
    if (backend_ == Backend::dense)
        for (auto& a : dense_) a *= factor;
    else
        for (auto& [i, a] : sparse_) a *= factor;
}

double PureState::norm_sq() const {
    double s = 0.0;
    if (backend_ == Backend::dense)
        for (const auto& a : dense_) s += std::norm(a);
    else
        for (const auto& [i, a] : sparse_) s += std::norm(a);
    return s;
}

size_t PureState::nonzero_count() const {
    if (backend_ == Backend::compressed) return sparse_.size();
    size_t n = 0;
    for (const auto& a : dense_)
        if (std::abs(a) >= prune_eps) ++n;
    return n;
}

cd PureState::amplitude(std::uint64_t index) const {
    if (backend_ == Backend::dense) {
        if (index >= dense_.size()) throw std::out_of_range("amplitude: index outside state");
        return dense_[index];
    }
    const auto it = sparse_.find(index);
    return it == sparse_.end() ? cd{0.0, 0.0} : it->second;
}

std::vector<std::pair<std::uint64_t, cd>> PureState::entries() const {
    std::vector<std::pair<std::uint64_t, cd>> out;
    if (backend_ == Backend::dense) {
        for (std::uint64_t i = 0; i < dense_.size(); ++i)
            if (std::abs(dense_[i]) >= prune_eps) out.emplace_back(i, dense_[i]);
    } else {
        out.assign(sparse_.begin(), sparse_.end());
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::map<std::uint64_t, double> PureState::register_distribution(const std::string& reg) const {
    std::map<std::uint64_t, double> dist;
    if (backend_ == Backend::dense) {
        for (std::uint64_t i = 0; i < dense_.size(); ++i) {
            const double p = std::norm(dense_[i]);
            if (p > 0.0) dist[layout_.extract(i, reg)] += p;
        }
    } else {
        for (const auto& [i, a] : sparse_) dist[layout_.extract(i, reg)] += std::norm(a);
    }
    return dist;
}

MeasurementRecord PureState::measure(const std::string& reg, int shots, std::uint64_t seed) const {
    if (shots < 1) throw std::invalid_argument("measure: shots must be >= 1");
    const auto dist = register_distribution(reg);
    std::vector<std::pair<std::uint64_t, double>> cdf;
    cdf.reserve(dist.size());
    double acc = 0.0;
    for (const auto& [v, p] : dist) {
        acc += p;
        cdf.emplace_back(v, acc);
    }
    MeasurementRecord rec;
    rec.register_name = reg;
    rec.shots = shots;
    rec.seed = seed;
    Rng rng(seed);
    for (int s = 0; s < shots; ++s) {
        const double r = rng.uniform() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), r,
                                         [](const auto& e, double x) { return e.second <= x; });
        rec.histogram[it == cdf.end() ? cdf.back().first : it->first] += 1;
    }
    return rec;
}

std::uint64_t PureState::collapse_register(const std::string& reg, Rng& rng) {
    const auto dist = register_distribution(reg);
    double acc = 0.0;
    for (const auto& [v, p] : dist) acc += p;
    const double r = rng.uniform() * acc;
    double run = 0.0;
    std::uint64_t picked = dist.rbegin()->first;
    for (const auto& [v, p] : dist) {
        run += p;
        if (r < run) {
            picked = v;
            break;
        }
    }
    // Project and renormalize.
    double kept = 0.0;
    if (backend_ == Backend::dense) {
        for (std::uint64_t i = 0; i < dense_.size(); ++i) {
            if (layout_.extract(i, reg) != picked)
                dense_[i] = cd{0.0, 0.0};
            else
                kept += std::norm(dense_[i]);
        }
        const double f = 1.0 / std::sqrt(kept);
        for (auto& a : dense_) a *= f;
    } else {
        for (auto it = sparse_.begin(); it != sparse_.end();) {
            if (layout_.extract(it->first, reg) != picked)
                it = sparse_.erase(it);
            else {
                kept += std::norm(it->second);
                ++it;
            }
        }
        const double f = 1.0 / std::sqrt(kept);
        for (auto& [i, a] : sparse_) a *= f;
    }
    return picked;
}

PureState PureState::to_backend(Backend b) const {
    if (b == Backend::automatic) throw std::invalid_argument("to_backend: pick a concrete backend");
    if (b == backend_) return *this;
    PureState s;
    s.layout_ = layout_;
    s.backend_ = b;
    if (b == Backend::dense) {
        if (width() > dense_qubit_limit) throw ResourceError("dense backend limited to 24 qubits");
        s.dense_.assign(1ull << width(), cd{0.0, 0.0});
        for (const auto& [i, a] : sparse_) s.dense_[i] = a;
    } else {
        s.sparse_.reserve(nonzero_count());
        for (std::uint64_t i = 0; i < dense_.size(); ++i)
            if (std::abs(dense_[i]) >= prune_eps) s.sparse_[i] = dense_[i];
        s.check_compressed_size(s.sparse_.size());
    }
    return s;
}

void phase_flip_on_pattern(PureState& state, const std::vector<PatternBit>& pattern) {
    state.apply(GateOp::multi_controlled_z(pattern));
}

}  // namespace qrec
