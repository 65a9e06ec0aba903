#pragma once

#include <cstdint>
#include <vector>

namespace treeprep {

enum class Pauli : uint8_t { X, Y, Z };

struct ErrorEvent {
    int qubit = 0;
    Pauli pauli = Pauli::X;
};

// One sampled space-time-polarization configuration: for each circuit moment,
// the set of (qubit, Pauli) errors injected after that moment's gates.
struct ErrorConfig {
    int num_qubits = 0;
    std::vector<std::vector<ErrorEvent>> moments;  // events sorted by qubit

    int moment_count() const { return static_cast<int>(moments.size()); }
    bool empty() const;
    size_t event_count() const;

    static ErrorConfig none(int num_moments, int num_qubits);
};

// Independent per-(moment, qubit) sampling: with probability eps include the
// pair with a Pauli uniform over {X,Y,Z}. Deterministic in (seed, index) via
// a counter-based integer-only stream, so sweeps parallelize reproducibly.
ErrorConfig sample_config(int num_moments, int num_qubits, double eps, uint64_t seed,
                          uint64_t index);

// log p_c = sum_m [(V - |Q_m|) log(1-eps) + |Q_m| log(eps/3)], with the
// eps = 0 / 1 boundaries mapped to -infinity where the config is impossible.
double config_log_probability(const ErrorConfig& config, double eps);

// Qubits never hit by any error in the configuration.
std::vector<bool> survived_mask(const ErrorConfig& config);

}  // namespace treeprep
