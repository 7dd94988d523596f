#include "qrec/results.hpp"

namespace qrec {

json to_json(const GateStats& s) {
    json j;
    for (int k = 0; k < gate_kind_count; ++k) {
        const auto kind = static_cast<GateKind>(k);
        if (s.count(kind) > 0) j[to_string(kind)] = s.count(kind);
    }
    j["total_ops"] = s.total_ops();
    j["elementary_estimate"] = s.elementary;
    return j;
}

json to_json(const MeasurementRecord& r) {
    json hist = json::object();
    for (const auto& [v, n] : r.histogram) hist[std::to_string(v)] = n;
    return json{{"register", r.register_name}, {"shots", r.shots}, {"seed", r.seed},
                {"histogram", hist}};
}

json to_json(const LatticePoint& p) { return json::array({p.x, p.y}); }

json to_json(const LatticeMapSpec& spec) {
    json j;
    j["kind"] = to_string(spec.kind);
    switch (spec.kind) {
        case MapKind::cat:
            j["g"] = spec.modulus;
            j["matrix"] = json::array({spec.matrix.a, spec.matrix.b, spec.matrix.c, spec.matrix.d});
            break;
        case MapKind::twist:
            j["potential"] = to_string(spec.potential);
            j["K"] = spec.K.str();
            j["N"] = spec.modulus;
            j["sign"] = to_string(spec.sign);
            break;
        case MapKind::affine:
            j["N"] = spec.modulus;
            j["matrix"] = json::array({spec.matrix.a, spec.matrix.b, spec.matrix.c, spec.matrix.d});
            j["shift"] = to_json(spec.shift);
            break;
    }
    return j;
}

json to_json(const AlphaResult& r) {
    json j{{"g", r.g}, {"alpha", r.alpha}, {"method", to_string(r.method)}};
    if (!r.details.empty()) {
        json d = json::object();
        for (const auto& [k, v] : r.details) d[k] = v;
        j["details"] = d;
    }
    return j;
}

json to_json(const ReturnSet& r) {
    json members = json::array();
    for (const auto& p : r.members) members.push_back(to_json(p));
    return json{{"domain",
                 {{"side", r.domain.side}, {"offset", to_json(r.domain.offset)}}},
                {"t", r.t},
                {"M", r.m()},
                {"members", members}};
}

json to_json(const PeriodicSet& r) {
    json members = json::array();
    for (const auto& p : r.members) members.push_back(to_json(p));
    json j{{"t", r.t}, {"M", r.m()}, {"members", members}};
    if (r.restricted_to_line) j["line"] = *r.restricted_to_line;
    return j;
}

json to_json(const PeriodResult& r) {
    json j;
    j["target"] = r.target;
    j["modulus"] = r.modulus;
    j["matrix"] = json::array({r.matrix.a, r.matrix.b, r.matrix.c, r.matrix.d});
    if (r.point) j["point"] = to_json(*r.point);
    j["p"] = r.p;
    j["width"] = r.width;
    j["backend"] = to_string(r.backend_used);
    j["shots"] = r.shots;
    j["seed"] = r.seed;
    j["simulation_path"] = r.simulation_path;
    j["outcomes"] = to_json(r.outcomes);
    j["period"] = r.period ? json(*r.period) : json(nullptr);
    j["verified"] = r.verified;
    if (!r.rejected_candidates.empty()) j["rejected_candidates"] = r.rejected_candidates;
    j["gates"] = to_json(r.gates);
    return j;
}

json to_json(const SearchResult& r) {
    json j;
    j["condition"] = r.condition;
    j["t"] = r.t;
    if (r.domain)
        j["domain"] = {{"side", r.domain->side}, {"offset", to_json(r.domain->offset)}};
    if (r.line) j["line"] = *r.line;
    j["search_space"] = r.search_space;
    j["iterations"] = r.iterations;
    j["auto_schedule"] = r.auto_schedule;
    if (r.m_used) j["m_used"] = *r.m_used;
    if (r.predicted_success) j["predicted_success"] = *r.predicted_success;
    if (r.exact_success_probability) j["exact_success_probability"] = *r.exact_success_probability;
    json found = json::array();
    for (const auto& f : r.found) {
        json e{{"point", to_json(f.point)}, {"count", f.count}};
        if (f.minimal_period) e["minimal_period"] = *f.minimal_period;
        found.push_back(e);
    }
    j["found"] = found;
    j["shots"] = r.shots;
    j["verified_count"] = r.verified_count;
    j["degenerate_all_marked"] = r.degenerate_all_marked;
    j["no_solutions_reported"] = r.no_solutions_reported;
    j["gates_per_iteration"] = to_json(r.gates_per_iteration);
    j["gates_total"] = to_json(r.gates_total);
    j["width"] = r.width;
    j["backend"] = to_string(r.backend_used);
    j["seed"] = r.seed;
    return j;
}

json to_json(const CountResult& r) {
    json j;
    j["search_space"] = r.search_space;
    j["c"] = r.c;
    j["observed_index"] = r.observed_index;
    j["theta"] = r.theta;
    j["m_estimate"] = r.m_estimate;
    j["interval"] = json::array({r.interval_lo, r.interval_hi});
    j["histogram"] = to_json(r.histogram);
    j["gates"] = to_json(r.gates);
    j["width"] = r.width;
    j["backend"] = to_string(r.backend_used);
    j["seed"] = r.seed;
    return j;
}

json to_json(const NewtonResult& r) {
    json orbit = json::array();
    for (const auto& p : r.orbit) orbit.push_back(json::array({p.x, p.y}));
    return json{{"converged", r.converged},
                {"residual", r.residual},
                {"iterations", r.iterations},
                {"orbit", orbit}};
}

}  // namespace qrec
