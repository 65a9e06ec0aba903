#include <cmath>
#include <stdexcept>

#include "treeprep/simulator.hpp"

namespace treeprep {

namespace {

constexpr Complex kI{0.0, 1.0};

using Vec = Eigen::VectorXcd;

inline bool bit(long i, int q) { return (i >> q) & 1; }
inline long flip(long i, int q) { return i ^ (1L << q); }

// Swaps the values of bits a and b of the index (basis-level swap gate).
inline long swap_bits(long i, int a, int b) {
    if (bit(i, a) == bit(i, b)) return i;
    return i ^ (1L << a) ^ (1L << b);
}

void dense_rot(Vec& v, int q, const Eigen::Matrix2cd& u) {
    const long size = v.size();
    for (long i = 0; i < size; ++i) {
        if (bit(i, q)) continue;
        const long j = flip(i, q);
        Complex a = v(i), b = v(j);
        v(i) = u(0, 0) * a + u(0, 1) * b;
        v(j) = u(1, 0) * a + u(1, 1) * b;
    }
}

void dense_controlled_rot(Vec& v, int c, int q, const Eigen::Matrix2cd& u, bool fire_on) {
    const long size = v.size();
    for (long i = 0; i < size; ++i) {
        if (bit(i, c) != fire_on || bit(i, q)) continue;
        const long j = flip(i, q);
        Complex a = v(i), b = v(j);
        v(i) = u(0, 0) * a + u(0, 1) * b;
        v(j) = u(1, 0) * a + u(1, 1) * b;
    }
}

// Applies an index permutation that is an involution, in place.
template <typename Perm>
void dense_involution(Vec& v, Perm perm) {
    const long size = v.size();
    for (long i = 0; i < size; ++i) {
        const long j = perm(i);
        if (j > i) std::swap(v(i), v(j));
    }
}

void dense_gate(Vec& v, const Gate& g) {
    const auto& q = g.qubits;
    switch (g.kind) {
        case GateKind::Rot1:
            dense_rot(v, q[0], g.unitary);
            return;
        case GateKind::CRot:
            dense_controlled_rot(v, q[0], q[1], g.unitary, true);
            return;
        case GateKind::OpenCRot:
            dense_controlled_rot(v, q[0], q[1], g.unitary, false);
            return;
        case GateKind::CNot:
            dense_involution(v, [&](long i) { return bit(i, q[0]) ? flip(i, q[1]) : i; });
            return;
        case GateKind::Swap:
            dense_involution(v, [&](long i) { return swap_bits(i, q[0], q[1]); });
            return;
        case GateKind::DistSwap:
            dense_involution(v, [&](long i) { return swap_bits(i, q[0], q[2]); });
            return;
        case GateKind::Route:
            dense_involution(v, [&](long i) {
                return swap_bits(i, q[1], bit(i, q[0]) ? q[3] : q[2]);
            });
            return;
        case GateKind::CRoute:
            dense_involution(v, [&](long i) {
                if (!bit(i, q[0])) return i;
                return swap_bits(i, q[2], bit(i, q[1]) ? q[4] : q[3]);
            });
            return;
    }
}

// One fused pass for all Paulis of a moment: index permutation i -> i ^ xmask
// with phase i^{#Y} * (-1)^{popcount(i & zmask)}.
void dense_errors(Vec& v, const std::vector<ErrorEvent>& events) {
    if (events.empty()) return;
    long xmask = 0, zmask = 0;
    int y_count = 0;
    for (const auto& e : events) {
        if (e.pauli != Pauli::Z) xmask |= 1L << e.qubit;
        if (e.pauli != Pauli::X) zmask |= 1L << e.qubit;
        if (e.pauli == Pauli::Y) ++y_count;
    }
    Complex global{1.0, 0.0};
    for (int k = 0; k < (y_count & 3); ++k) global *= kI;

    const long size = v.size();
    if (xmask == 0) {
        for (long i = 0; i < size; ++i) {
            v(i) *= global * ((__builtin_popcountl(i & zmask) & 1) ? -1.0 : 1.0);
        }
        return;
    }
    for (long i = 0; i < size; ++i) {
        const long j = i ^ xmask;
        if (j < i) continue;
        const Complex pi = global * ((__builtin_popcountl(i & zmask) & 1) ? -1.0 : 1.0);
        const Complex pj = global * ((__builtin_popcountl(j & zmask) & 1) ? -1.0 : 1.0);
        Complex a = v(i);
        v(i) = pj * v(j);
        v(j) = pi * a;
    }
}

}  // namespace

Eigen::VectorXcd dense_run(const Circuit& circuit, const ErrorConfig& config, int max_qubits,
                           const Eigen::VectorXcd* initial) {
    const int nq = circuit.arch().qubit_count();
    if (nq > max_qubits) {
        throw std::invalid_argument("dense_run: " + std::to_string(nq) +
                                    " qubits exceed the guard of " + std::to_string(max_qubits));
    }
    if (!config.moments.empty() && config.moment_count() != circuit.moment_count()) {
        throw std::invalid_argument("dense_run: config moment count does not match circuit");
    }
    Vec v;
    if (initial) {
        if (initial->size() != (1L << nq)) {
            throw std::invalid_argument("dense_run: initial state has the wrong dimension");
        }
        v = *initial;
    } else {
        v = Vec::Zero(1L << nq);
        v(1L << circuit.arch().root()) = 1.0;
    }
    for (int m = 0; m < circuit.moment_count(); ++m) {
        for (const Gate& g : circuit.moment(m)) dense_gate(v, g);
        if (!config.moments.empty()) dense_errors(v, config.moments[static_cast<size_t>(m)]);
    }
    return v;
}

Eigen::VectorXcd dense_expand(const SparseState& state, int num_qubits) {
    Vec v = Vec::Zero(1L << num_qubits);
    for (const auto& term : state.terms) {
        long base = 0;
        std::vector<std::pair<int, Factor>> supers;
        for (const auto& [q, f] : term.factors) {
            if (f.kind == Factor::Kind::One) base |= 1L << q;
            else if (f.kind == Factor::Kind::Super) supers.push_back({q, f});
        }
        const long combos = 1L << supers.size();
        for (long pattern = 0; pattern < combos; ++pattern) {
            long idx = base;
            Complex coeff = term.amp;
            for (size_t s = 0; s < supers.size(); ++s) {
                if (bit(pattern, static_cast<int>(s))) {
                    idx |= 1L << supers[s].first;
                    coeff *= supers[s].second.a1;
                } else {
                    coeff *= supers[s].second.a0;
                }
            }
            v(idx) += coeff;
        }
    }
    return v;
}

bool sparse_dense_equal(const Circuit& circuit, const ErrorConfig& config, double tol,
                        const RunOptions& opts) {
    Vec dense = dense_run(circuit, config);
    SparseState sparse = run(circuit, config, opts).state;
    Vec expanded = dense_expand(sparse, circuit.arch().qubit_count());
    return (dense - expanded).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace treeprep
