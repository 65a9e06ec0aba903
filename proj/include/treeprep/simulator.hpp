#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "treeprep/amplitude_tree.hpp"
#include "treeprep/circuit.hpp"
#include "treeprep/noise.hpp"

namespace treeprep {

// Single-qubit factor of a product term. Zero factors are never stored
// explicitly; Super holds a unit-norm pair with its largest component made
// real positive (the phase lives in the term amplitude).
struct Factor {
    enum class Kind : uint8_t { Zero, One, Super };
    Kind kind = Kind::Zero;
    Complex a0{1.0, 0.0};
    Complex a1{0.0, 0.0};

    static Factor zero() { return {}; }
    static Factor one() { return {Kind::One, {0.0, 0.0}, {1.0, 0.0}}; }
    static Factor super(Complex a0, Complex a1) { return {Kind::Super, a0, a1}; }
    static Factor bit(bool b) { return b ? one() : zero(); }

    Complex amp0() const { return kind == Kind::Zero ? Complex(1, 0) : (kind == Kind::One ? Complex(0, 0) : a0); }
    Complex amp1() const { return kind == Kind::Zero ? Complex(0, 0) : (kind == Kind::One ? Complex(1, 0) : a1); }

    bool operator==(const Factor& other) const {
        if (kind != other.kind) return false;
        if (kind != Kind::Super) return true;
        return a0 == other.a0 && a1 == other.a1;
    }
};

// amplitude * product of per-qubit factors; absent qubits are |0>.
struct ProductTerm {
    Complex amp{1.0, 0.0};
    std::vector<std::pair<int, Factor>> factors;  // sorted by qubit id, no Zero entries

    Factor factor(int q) const;
    // Canonicalizes: Zero entries are erased, Super entries with a component
    // below the prune threshold collapse to a basis factor, and the Super
    // phase pivot is folded into amp.
    void set_factor(int q, const Factor& f);
    void swap_factors(int a, int b);
};

class SparseState {
public:
    std::vector<ProductTerm> terms;

    static SparseState initial(const Architecture& arch);  // root pointer activated

    // Sum over terms of |amp|^2. Terms are pairwise orthogonal under this
    // gate set, so this is the state norm.
    double squared_norm() const;

    void merge_and_prune(bool merge);
    size_t term_count() const { return terms.size(); }
};

// Exact amplitude-collapse threshold; the only non-exactness in the sparse
// path, bounded by depth * term count * 1e-14.
constexpr double kPruneTolerance = 1e-14;

struct RunOptions {
    size_t term_cap = 0;   // 0: defaults to 2^(n+8) for the circuit's n
    bool merge = true;
    bool record_term_counts = false;
};

struct RunResult {
    SparseState state;
    std::vector<size_t> term_counts;  // per moment, when recorded
};

// Exact action of one gate; control/routing conditions on a Super factor
// split the term first (at most doubling per decision qubit).
void apply_gate(SparseState& state, const Gate& gate, size_t term_cap);

// Moment-m errors applied as unitary Paulis; no term growth.
void apply_errors(SparseState& state, const ErrorConfig& config, int m);

// Alternates gates and errors from the protocol initial state (root pointer
// activated). Throws CapacityError when the term cap is exceeded.
RunResult run(const Circuit& circuit, const ErrorConfig& config, const RunOptions& opts = {});
RunResult run_noiseless(const Circuit& circuit, const RunOptions& opts = {});

// Non-squared Uhlmann fidelity sqrt(<psi|rho_out|psi>) between the target and
// the output register's reduced state. Terms whose output factors ended up
// superposed (possible under noise: swaps can ferry a rotated factor into the
// output line) are expanded into basis components first, which is exact.
double output_fidelity(const SparseState& state, const TargetState& target,
                       const Architecture& arch);

// Splits every term with a superposed output-register factor into basis
// components. Exact; leaves other factors untouched.
SparseState expand_output_basis(const SparseState& state, const Architecture& arch);

// Output index of a term whose output factors are all basis (O_k holds bit
// k of j, most significant first); nullopt otherwise.
std::optional<long> output_index(const ProductTerm& term, const Architecture& arch);

// <a|b> over all qubits.
Complex state_inner_product(const SparseState& a, const SparseState& b);
double state_distance(const SparseState& a, const SparseState& b);

// ---- dense oracle (brute force) ----

// Full 2^V-dimensional evolution, bit q of the index = qubit id q. Starts
// from the protocol initial state (root activated) unless `initial` is given.
// Guarded: throws std::invalid_argument when qubit count exceeds max_qubits.
Eigen::VectorXcd dense_run(const Circuit& circuit, const ErrorConfig& config,
                           int max_qubits = 24, const Eigen::VectorXcd* initial = nullptr);
Eigen::VectorXcd dense_expand(const SparseState& state, int num_qubits);

// max_j |sparse_j - dense_j| <= tol for the same circuit and configuration.
bool sparse_dense_equal(const Circuit& circuit, const ErrorConfig& config, double tol = 1e-9,
                        const RunOptions& opts = {});

}  // namespace treeprep
