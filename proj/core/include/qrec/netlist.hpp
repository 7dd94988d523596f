#pragma once

#include <string>

#include "qrec/gates.hpp"

namespace qrec {

/// Line-based text form of a circuit: a layout header, then one gate per
/// line (variant, qubits, parameters). Permutation blocks are exported by
/// name with their register subset and elementary estimate; a parsed circuit
/// reproduces the gate statistics exactly but its permutations carry no
/// function and cannot be re-applied to a state.
std::string to_netlist(const Circuit& circuit);
Circuit circuit_from_netlist(const std::string& text);

}  // namespace qrec
