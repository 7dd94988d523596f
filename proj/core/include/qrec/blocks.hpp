#pragma once

#include <optional>
#include <string>

#include "qrec/gates.hpp"
#include "qrec/involutions.hpp"
#include "qrec/lattice_map.hpp"
#include "qrec/layout.hpp"

namespace qrec {

/// On control = 1 maps |v> -> |k v mod m> on the target register; identity on
/// control = 0 and on the unused codes v >= m. Requires gcd(k, m) = 1.
GateOp controlled_modmul_block(const RegisterLayout& layout, const std::string& target_reg,
                               long long k, long long m, int control_qubit);

/// On control = 1, right-multiplies the matrix held in four registers by the
/// given step matrix mod g: (A,B) <- (A a + B c, A b + B d), same for (C,D).
/// Tuples with any entry >= g are fixed. Workspace registers are untouched.
GateOp matrix_step_block(const RegisterLayout& layout, const Mat2& step, long long g,
                         const std::string& reg_a, const std::string& reg_b,
                         const std::string& reg_c, const std::string& reg_d,
                         std::optional<int> control_qubit);

/// One application of the lattice map (or its inverse) on a coordinate
/// register pair. The permutation is exact; the elementary estimate follows
/// the map kind (adders for the sawtooth, fixed-point sine for the standard
/// potential, controlled multipliers for linear maps).
GateOp map_step_block(const RegisterLayout& layout, const LatticeMapSpec& spec,
                      const std::string& xreg, const std::string& yreg, bool inverse);

/// T^t in one block for maps with an affine fast form, optionally conditioned
/// on a control qubit.
GateOp map_power_block(const RegisterLayout& layout, const LatticeMapSpec& spec,
                       const std::string& xreg, const std::string& yreg, unsigned long long t,
                       std::optional<int> control_qubit, bool inverse = false);

/// (x, y) -> (x + dx, y + dy) mod N.
GateOp translate_block(const RegisterLayout& layout, const std::string& xreg,
                       const std::string& yreg, long long dx, long long dy, long long N,
                       bool inverse);

/// (x, y, u, v) -> (x, y, u xor x, v xor y); its own inverse.
GateOp xor_pair_block(const RegisterLayout& layout, const std::string& xreg,
                      const std::string& yreg, const std::string& ureg, const std::string& vreg);

/// (s, u, v) -> (s, u xor line(s).x, v xor line(s).y); its own inverse.
GateOp line_embed_block(const RegisterLayout& layout, const SymmetryLine& line,
                        const std::string& sreg, const std::string& xreg,
                        const std::string& yreg);

/// Inversion about the mean over the given qubits, appended as gates:
/// H^k, phase flip on all-zero, H^k, then a global flip (an empty-pattern Z)
/// so the block equals 2|u><u| - I exactly.
void add_diffusion(Circuit& circuit, const std::vector<int>& qubits);

}  // namespace qrec
