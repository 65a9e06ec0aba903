#include "treeprep/serialization.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace treeprep {

Json target_to_json(const TargetState& target) {
    Json amps = Json::array();
    for (Eigen::Index j = 0; j < target.amplitudes.size(); ++j) {
        amps.push_back({target.amplitudes(j).real(), target.amplitudes(j).imag()});
    }
    return Json{{"n", target.n}, {"amplitudes", amps}};
}

TargetState target_from_json(const Json& j) {
    TargetState t;
    t.n = j.at("n").get<int>();
    if (t.n < 1) throw std::invalid_argument("amplitude file: n must be >= 1");
    const auto& amps = j.at("amplitudes");
    if (static_cast<Eigen::Index>(amps.size()) != (Eigen::Index(1) << t.n)) {
        throw std::invalid_argument("amplitude file: expected exactly 2^n amplitudes");
    }
    t.amplitudes.resize(static_cast<Eigen::Index>(amps.size()));
    for (size_t i = 0; i < amps.size(); ++i) {
        t.amplitudes(static_cast<Eigen::Index>(i)) =
            Complex(amps[i].at(0).get<double>(), amps[i].at(1).get<double>());
    }
    return t;
}

Json architecture_to_json(const Architecture& arch) {
    Json qubits = Json::array();
    for (int id = 0; id < arch.qubit_count(); ++id) {
        const QubitId& q = arch.qubit(id);
        qubits.push_back({{"role", role_name(q.role)},
                          {"layer", q.layer},
                          {"index", q.index},
                          {"id", id}});
    }
    Json edges = Json::array();
    for (int a = 0; a < arch.qubit_count(); ++a) {
        for (int b : arch.neighbors(a)) {
            if (b > a) edges.push_back({a, b});
        }
    }
    return Json{{"variant", protocol_name(arch.variant())},
                {"n", arch.n()},
                {"qubits", qubits},
                {"edges", edges}};
}

namespace {

Json gate_to_json(const Gate& g) {
    Json out{{"kind", gate_kind_name(g.kind)}, {"qubits", g.qubits}};
    if (g.has_unitary()) {
        Json params = Json::array();
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                params.push_back(g.unitary(r, c).real());
                params.push_back(g.unitary(r, c).imag());
            }
        }
        out["params"] = params;
    }
    return out;
}

Gate gate_from_json(const Json& j) {
    Gate g;
    g.kind = gate_kind_from_name(j.at("kind").get<std::string>());
    g.qubits = j.at("qubits").get<std::vector<int>>();
    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (p.size() != 8) throw std::invalid_argument("circuit file: params must hold 8 values");
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                g.unitary(r, c) = Complex(p[size_t(4 * r + 2 * c)].get<double>(),
                                          p[size_t(4 * r + 2 * c + 1)].get<double>());
            }
        }
    }
    return g;
}

}  // namespace

Json circuit_to_json(const Circuit& circuit) {
    Json moments = Json::array();
    for (int m = 0; m < circuit.moment_count(); ++m) {
        Moment sorted = circuit.moment(m);
        std::sort(sorted.begin(), sorted.end(),
                  [](const Gate& a, const Gate& b) { return a.qubits < b.qubits; });
        Json step = Json::array();
        for (const Gate& g : sorted) step.push_back(gate_to_json(g));
        moments.push_back(std::move(step));
    }
    return Json{{"variant", protocol_name(circuit.arch().variant())},
                {"n", circuit.arch().n()},
                {"moments", moments}};
}

Circuit circuit_from_json(const Json& j) {
    auto arch = Architecture::make(protocol_from_name(j.at("variant").get<std::string>()),
                                   j.at("n").get<int>());
    std::vector<Moment> moments;
    for (const auto& step : j.at("moments")) {
        Moment m;
        for (const auto& gj : step) m.push_back(gate_from_json(gj));
        moments.push_back(std::move(m));
    }
    // Unchecked so that corrupted files surface through validate_connectivity.
    return Circuit::from_moments_unchecked(std::move(arch), std::move(moments));
}

Json config_to_json(const ErrorConfig& config) {
    Json events = Json::array();
    for (int m = 0; m < config.moment_count(); ++m) {
        for (const auto& e : config.moments[static_cast<size_t>(m)]) {
            const char* pauli = e.pauli == Pauli::X ? "X" : (e.pauli == Pauli::Y ? "Y" : "Z");
            events.push_back({{"moment", m}, {"qubit", e.qubit}, {"pauli", pauli}});
        }
    }
    return events;
}

ErrorConfig config_from_json(const Json& j, int num_moments, int num_qubits) {
    ErrorConfig config = ErrorConfig::none(num_moments, num_qubits);
    for (const auto& ej : j) {
        const int m = ej.at("moment").get<int>();
        if (m < 0 || m >= num_moments) throw std::invalid_argument("config: moment out of range");
        const std::string p = ej.at("pauli").get<std::string>();
        Pauli pauli = p == "X" ? Pauli::X : (p == "Y" ? Pauli::Y : Pauli::Z);
        if (p != "X" && p != "Y" && p != "Z") {
            throw std::invalid_argument("config: unknown pauli " + p);
        }
        config.moments[static_cast<size_t>(m)].push_back({ej.at("qubit").get<int>(), pauli});
    }
    for (auto& events : config.moments) {
        std::sort(events.begin(), events.end(),
                  [](const ErrorEvent& a, const ErrorEvent& b) { return a.qubit < b.qubit; });
    }
    return config;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::runtime_error("cannot parse " + path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace treeprep
