#pragma once

#include <cstdint>
#include <vector>

#include "treeprep/amplitude_tree.hpp"
#include "treeprep/architecture.hpp"

namespace treeprep {

enum class BudgetStrategy { Geometric, Uniform };

// Per-level synthesis precision budget with sum(eps_l) <= eps.
// Geometric: eps_l = eps / 2^(n-l); uniform: eps_l = eps / n.
struct TBudget {
    double total = 0.0;
    BudgetStrategy strategy = BudgetStrategy::Geometric;
    std::vector<double> per_level;  // size n

    double sum() const;
};

TBudget allocate_budget(double eps, int n, BudgetStrategy strategy);

// Cost model for approximating one z- or y-rotation to precision eps' with
// H and T gates: t(eps') = ceil(k * log2(1/eps')) + k0. The constants are a
// model, not a synthesized sequence. Each data rotation expands to 4
// approximate rotations at eps_l/4 plus 2 exact gates; all other gate kinds
// cost per-kind constants.
struct TCostModel {
    double k = 3.0;
    long k0 = 0;
    long exact_gate_count = 1;
    long exact_gate_depth = 1;

    long rotation_cost(double eps_prime) const;
};

struct CliffordTMetrics {
    long t_count = 0;
    long t_depth = 0;
    long sta = 0;
};

// Accounting over the synthesized circuit structure; no simulation. Depth
// takes the per-moment maximum; STA uses per-qubit active intervals on the
// expanded timeline, with a qubit's first gate aligned late and its last
// gate aligned early inside their moment windows (rotations at different
// levels have very different lengths, and nothing forces a qubit to sit
// active through a window it does not use).
CliffordTMetrics clifford_t_metrics(Protocol protocol, int n, double eps,
                                    BudgetStrategy strategy, const TCostModel& model = {});

struct PerturbationResult {
    double distance = 0.0;  // || |psi> - |psi~> || on the output register
    double bound = 0.0;     // sum of eps_l
    bool ok = false;        // distance <= bound + 1e-9
};

// Randomly perturbs every level-l rotation by an operator distance <= eps_l
// (random rotation axis, angle rescaled exactly), prepares both states
// noiselessly and compares against the triangle-inequality budget bound.
PerturbationResult perturbation_bound_check(const AmplitudeTree& tree, const TBudget& budget,
                                            uint64_t seed,
                                            Protocol protocol = Protocol::ThreePerNode);

}  // namespace treeprep
