#include "qrec/netlist.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qrec {

std::string to_netlist(const Circuit& circuit) {
    std::ostringstream out;
    out << "# qrec netlist v1\n";
    out << "layout";
    for (const auto& r : circuit.layout().registers()) out << " " << r.name << ":" << r.width;
    out << "\n";
    char buf[64];
    for (const auto& op : circuit.ops()) {
        switch (op.kind) {
            case GateKind::hadamard:
            case GateKind::flip_x:
            case GateKind::phase_z:
                out << to_string(op.kind) << " " << op.q0 << "\n";
                break;
            case GateKind::controlled_phase:
                std::snprintf(buf, sizeof buf, "%.17g", op.angle);
                out << "cp " << buf << " " << op.q0 << " " << op.q1 << "\n";
                break;
            case GateKind::swap:
                out << "swap " << op.q0 << " " << op.q1 << "\n";
                break;
            case GateKind::multi_controlled_z:
                out << "mcz";
                for (const auto& p : op.pattern) out << " " << p.qubit << "=" << p.value;
                out << "\n";
                break;
            case GateKind::permutation: {
                out << "perm " << op.perm->name << " q=";
                for (size_t i = 0; i < op.perm->qubits.size(); ++i)
                    out << (i ? "," : "") << op.perm->qubits[i];
                out << " est=" << op.perm->elementary_estimate << "\n";
                break;
            }
        }
    }
    return out.str();
}

Circuit circuit_from_netlist(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Circuit circuit;
    bool have_layout = false;
    int lineno = 0;
    auto fail = [&lineno](const std::string& what) {
        throw std::invalid_argument("netlist line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "layout") {
            std::vector<std::pair<std::string, int>> regs;
            std::string tok;
            while (ls >> tok) {
                const auto colon = tok.find(':');
                if (colon == std::string::npos) fail("layout token wants name:width");
                regs.emplace_back(tok.substr(0, colon), std::stoi(tok.substr(colon + 1)));
            }
            circuit = Circuit(RegisterLayout(regs));
            have_layout = true;
            continue;
        }
        if (!have_layout) fail("gate before layout header");
        if (word == "h" || word == "x" || word == "z") {
            int q;
            if (!(ls >> q)) fail("qubit index expected");
            circuit.push(word == "h" ? GateOp::hadamard(q)
                                     : word == "x" ? GateOp::flip_x(q) : GateOp::phase_z(q));
        } else if (word == "cp") {
            double angle;
            int c, t;
            if (!(ls >> angle >> c >> t)) fail("cp wants angle control target");
            circuit.push(GateOp::controlled_phase(angle, c, t));
        } else if (word == "swap") {
            int a, b;
            if (!(ls >> a >> b)) fail("swap wants two qubits");
            circuit.push(GateOp::swap_qubits(a, b));
        } else if (word == "mcz") {
            std::vector<PatternBit> pattern;
            std::string tok;
            while (ls >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) fail("mcz token wants qubit=value");
                pattern.push_back(
                    {std::stoi(tok.substr(0, eq)), std::stoi(tok.substr(eq + 1))});
            }
            circuit.push(GateOp::multi_controlled_z(std::move(pattern)));
        } else if (word == "perm") {
            std::string name, qtok, etok;
            if (!(ls >> name >> qtok >> etok)) fail("perm wants name q=... est=...");
            if (qtok.rfind("q=", 0) != 0 || etok.rfind("est=", 0) != 0)
                fail("perm wants name q=... est=...");
            std::vector<int> qubits;
            std::istringstream qs(qtok.substr(2));
            std::string num;
            while (std::getline(qs, num, ',')) qubits.push_back(std::stoi(num));
            const long long est = std::stoll(etok.substr(4));
            circuit.push(GateOp::permutation(
                make_permutation(name, std::move(qubits), est, nullptr, nullptr)));
        } else {
            fail("unknown gate '" + word + "'");
        }
    }
    if (!have_layout) throw std::invalid_argument("netlist: missing layout header");
    return circuit;
}

}  // namespace qrec
