#include "qrec/layout.hpp"

#include <stdexcept>

namespace qrec {

RegisterLayout::RegisterLayout(std::vector<std::pair<std::string, int>> regs) {
    int offset = 0;
    for (auto& [name, width] : regs) {
        if (name.empty()) throw std::invalid_argument("layout: empty register name");
        if (width < 1) throw std::invalid_argument("layout: register width must be >= 1");
        if (has(name)) throw std::invalid_argument("layout: duplicate register '" + name + "'");
        regs_.push_back({name, width, offset});
        offset += width;
    }
    total_width_ = offset;
    if (total_width_ > 63) throw std::invalid_argument("layout: total width above 63 qubits");
}

const Register& RegisterLayout::reg(const std::string& name) const {
    for (const auto& r : regs_)
        if (r.name == name) return r;
    throw std::invalid_argument("layout: no register named '" + name + "'");
}

bool RegisterLayout::has(const std::string& name) const {
    for (const auto& r : regs_)
        if (r.name == name) return true;
    return false;
}

std::vector<int> RegisterLayout::qubits(const std::string& name) const {
    const auto& r = reg(name);
    std::vector<int> out(static_cast<size_t>(r.width));
    for (int i = 0; i < r.width; ++i) out[static_cast<size_t>(i)] = r.offset + i;
    return out;
}

std::uint64_t RegisterLayout::extract(std::uint64_t basis_index, const std::string& name) const {
    const auto& r = reg(name);
    return (basis_index >> r.offset) & ((1ull << r.width) - 1ull);
}

std::uint64_t RegisterLayout::insert(std::uint64_t basis_index, const std::string& name,
                                     std::uint64_t value) const {
    const auto& r = reg(name);
    const std::uint64_t mask = ((1ull << r.width) - 1ull) << r.offset;
    return (basis_index & ~mask) | ((value << r.offset) & mask);
}

std::uint64_t RegisterLayout::pack(const std::vector<std::uint64_t>& values) const {
    if (values.size() != regs_.size())
        throw std::invalid_argument("layout: one value per register required");
    std::uint64_t index = 0;
    for (size_t i = 0; i < regs_.size(); ++i) {
        if (values[i] >= (1ull << regs_[i].width))
            throw std::invalid_argument("layout: value does not fit register '" + regs_[i].name +
                                        "'");
        index |= values[i] << regs_[i].offset;
    }
    return index;
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
    if (regs_.size() != other.regs_.size()) return false;
    for (size_t i = 0; i < regs_.size(); ++i)
        if (regs_[i].name != other.regs_[i].name || regs_[i].width != other.regs_[i].width)
            return false;
    return true;
}

}  // namespace qrec
