#include "treeprep/noise.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "treeprep/random.hpp"

namespace treeprep {

bool ErrorConfig::empty() const {
    for (const auto& m : moments) {
        if (!m.empty()) return false;
    }
    return true;
}

size_t ErrorConfig::event_count() const {
    size_t total = 0;
    for (const auto& m : moments) total += m.size();
    return total;
}

ErrorConfig ErrorConfig::none(int num_moments, int num_qubits) {
    ErrorConfig c;
    c.num_qubits = num_qubits;
    c.moments.resize(static_cast<size_t>(num_moments));
    return c;
}

ErrorConfig sample_config(int num_moments, int num_qubits, double eps, uint64_t seed,
                          uint64_t index) {
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("sample_config: eps outside [0,1]");
    ErrorConfig c = ErrorConfig::none(num_moments, num_qubits);
    for (int m = 0; m < num_moments; ++m) {
        auto& events = c.moments[static_cast<size_t>(m)];
        for (int q = 0; q < num_qubits; ++q) {
            uint64_t w = counter_word(seed, index, uint64_t(m), uint64_t(q), 0);
            if (u01(w) >= eps) continue;
            uint64_t p = counter_word(seed, index, uint64_t(m), uint64_t(q), 1);
            events.push_back({q, static_cast<Pauli>(p % 3)});
        }
    }
    return c;
}

double config_log_probability(const ErrorConfig& config, double eps) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (const auto& events : config.moments) {
        const long hit = static_cast<long>(events.size());
        const long clean = config.num_qubits - hit;
        if (hit > 0) total += (eps > 0.0) ? hit * std::log(eps / 3.0) : kNegInf;
        if (clean > 0) total += (eps < 1.0) ? clean * std::log1p(-eps) : kNegInf;
    }
    return total;
}

std::vector<bool> survived_mask(const ErrorConfig& config) {
    std::vector<bool> alive(static_cast<size_t>(config.num_qubits), true);
    for (const auto& events : config.moments) {
        for (const auto& e : events) alive[static_cast<size_t>(e.qubit)] = false;
    }
    return alive;
}

}  // namespace treeprep
