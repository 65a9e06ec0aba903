#pragma once

#include <cstdint>
#include <vector>

#include "treeprep/amplitude_tree.hpp"
#include "treeprep/circuit.hpp"
#include "treeprep/noise.hpp"
#include "treeprep/schedule.hpp"
#include "treeprep/simulator.hpp"

namespace treeprep {

// Per-trajectory outcome of the fidelity bound check. For the 3-per-node
// protocol the bound uses the good set, and lambda_prime mirrors lambda
// (error-free branches are a 2-per-node notion).
struct BranchReport {
    double fidelity = 0.0;
    double lambda = 0.0;
    double lambda_prime = 0.0;
    std::vector<long> good;
    std::vector<long> error_free;
    bool violation = false;
    bool capacity_exceeded = false;
    std::vector<size_t> term_counts;
};

// j is good iff its hat-ancestor set survived every moment untouched.
std::vector<long> good_branches(const ErrorConfig& config, const Architecture& arch);

// j is error-free iff j and every zero-padded prefix of j are good.
// Defined for the 2-per-node protocol only; throws std::logic_error on 3pn.
std::vector<long> error_free_branches(const ErrorConfig& config, const Architecture& arch);

// Runs the trajectory and checks F(c) >= Lambda'(c) - 1e-9 (2pn) resp.
// F(c) >= Lambda(c) - 1e-9 (3pn).
BranchReport per_config_bound_check(const Circuit& circuit, const AmplitudeTree& tree,
                                    const ErrorConfig& config, const RunOptions& opts = {});

// Verifies that the final-state components with output index in `indices`
// share one QRAM factor (as an unnormalized QRAM-space vector) and carry
// amplitudes proportional to psi_j with one common constant.
bool structural_coherence_check(const SparseState& final_state, const std::vector<long>& indices,
                                const AmplitudeTree& tree, const Architecture& arch,
                                double tol = 1e-9);

// Exact Pr[j in g'(c)] = (1-eps)^(M |H_j|) with H_j the union of the hat
// ancestors of j and of all its zero-padded prefixes (2pn); for 3pn,
// Pr[j in g(c)] = (1-eps)^(M |hat A_j|).
std::vector<int> error_free_support(const Architecture& arch, long j);  // H_j (2pn) / hat A_j (3pn)
double branch_survival_probability(const Architecture& arch, long j, double eps, int moments);

struct SweepRow {
    Protocol protocol = Protocol::TwoPerNode;
    int n = 0;
    double epsilon = 0.0;
    uint64_t seed = 0;
    int trajectories = 0;
    double mean_fidelity = 0.0;
    double mean_lambda = 0.0;
    double mean_lambda_prime = 0.0;
    double ratio_n3 = 0.0;  // (1 - mean F) / (eps n^3)
    double ratio_n2 = 0.0;  // (1 - mean F) / (eps n^2)
    long violations = 0;
    long capacity_errors = 0;
};

struct SweepSettings {
    std::vector<int> n_values;
    std::vector<double> epsilons;
    int trajectories = 1000;
    uint64_t seed = 1;
    int stagger = 0;              // <= 0: protocol default (3 for 2pn, 6 for 3pn)
    bool uniform_target = false;  // otherwise a seed-derived random target per n
};

// Monte-Carlo campaign over (n, epsilon) points; trajectories fan out across
// workers, rows and per-trajectory streams are deterministic in the seed.
std::vector<SweepRow> scaling_sweep(Protocol protocol, const SweepSettings& settings);

}  // namespace treeprep
