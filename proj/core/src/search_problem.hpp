#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrec/gates.hpp"
#include "qrec/lattice_map.hpp"
#include "qrec/orbit_sets.hpp"
#include "qrec/state.hpp"

namespace qrec::detail {

/// One concrete amplitude-search family: layout, uniform preparation, phase
/// oracle, diffusion qubits, and the decode/verify glue back to lattice
/// points. Shared by the Grover searches and quantum counting.
struct SearchProblem {
    RegisterLayout layout;
    Circuit prep;
    Circuit oracle;
    std::vector<int> search_qubits;
    std::vector<std::string> sample_regs;
    std::function<LatticePoint(std::uint64_t)> decode;
    std::function<bool(const LatticePoint&)> verify;
    long long search_space = 0;
};

SearchProblem make_return_problem(const LatticeMapSpec& spec, const Domain& domain, long long t);
SearchProblem make_periodic_problem(const LatticeMapSpec& spec, long long t);
SearchProblem make_line_problem(const LatticeMapSpec& spec, long long t,
                                const std::string& line_id);

Circuit make_iteration(const SearchProblem& prob);
PureState fresh_state(const SearchProblem& prob, Backend backend);
std::uint64_t packed_sample_value(const SearchProblem& prob, const RegisterLayout& layout,
                                  std::uint64_t index);

}  // namespace qrec::detail
