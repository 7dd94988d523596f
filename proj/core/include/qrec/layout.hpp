#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qrec {

struct Register {
    std::string name;
    int width = 1;
    int offset = 0;  // first (least significant) global qubit index
};

/// Ordered named registers; register 0 occupies the lowest bits of the basis
/// index. Names are unique, widths >= 1.
class RegisterLayout {
  public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<std::pair<std::string, int>> regs);

    int total_width() const { return total_width_; }
    const std::vector<Register>& registers() const { return regs_; }
    const Register& reg(const std::string& name) const;
    bool has(const std::string& name) const;

    /// Qubit indices of a register, LSB first.
    std::vector<int> qubits(const std::string& name) const;

    std::uint64_t extract(std::uint64_t basis_index, const std::string& name) const;
    std::uint64_t insert(std::uint64_t basis_index, const std::string& name,
                         std::uint64_t value) const;

    /// Basis index from per-register values (one per register, in order).
    std::uint64_t pack(const std::vector<std::uint64_t>& values) const;

    bool operator==(const RegisterLayout& other) const;

  private:
    std::vector<Register> regs_;
    int total_width_ = 0;
};

}  // namespace qrec
