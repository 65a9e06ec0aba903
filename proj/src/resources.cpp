#include "treeprep/resources.hpp"

#include <cmath>
#include <stdexcept>

#include "treeprep/random.hpp"
#include "treeprep/simulator.hpp"
#include "treeprep/synth_three.hpp"
#include "treeprep/synth_two.hpp"

namespace treeprep {

double TBudget::sum() const {
    double total = 0.0;
    for (double e : per_level) total += e;
    return total;
}

TBudget allocate_budget(double eps, int n, BudgetStrategy strategy) {
    if (eps <= 0.0) throw std::invalid_argument("budget: eps must be positive");
    if (n < 1) throw std::invalid_argument("budget: n must be >= 1");
    TBudget b;
    b.total = eps;
    b.strategy = strategy;
    b.per_level.resize(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
        b.per_level[static_cast<size_t>(l)] =
            strategy == BudgetStrategy::Geometric ? eps / std::pow(2.0, n - l) : eps / n;
    }
    // sum(eps_l) <= eps is a hard contract; n * fl(eps/n) can overshoot by an
    // ulp, so shave the last level until the rounded sum complies.
    while (b.sum() > eps) {
        double& last = b.per_level.back();
        last = std::nextafter(last, 0.0);
    }
    return b;
}

long TCostModel::rotation_cost(double eps_prime) const {
    if (eps_prime >= 1.0) return k0;
    return static_cast<long>(std::ceil(k * std::log2(1.0 / eps_prime))) + k0;
}

namespace {

// A data rotation is any unitary-payload gate targeting a lower-sublayer
// qubit; everything else (including the root NOT) is Clifford-exact.
bool is_data_rotation(const Architecture& arch, const Gate& g) {
    return g.has_unitary() && arch.qubit(g.target()).role == Role::Lower;
}

struct GateCost {
    long count = 0;
    long depth = 0;
};

GateCost gate_cost(const Architecture& arch, const Gate& g, const TBudget& budget,
                   const TCostModel& model) {
    GateCost c;
    if (is_data_rotation(arch, g)) {
        const int level = arch.qubit(g.target()).layer;
        const double eps_l = budget.per_level[static_cast<size_t>(level)];
        const long rot = model.rotation_cost(eps_l / 4.0);
        // 4 approximate rotations and 2 exact gates, applied serially
        c.count = 4 * rot + 2 * model.exact_gate_count;
        c.depth = 4 * rot + 2 * model.exact_gate_depth;
    } else {
        c.count = model.exact_gate_count;
        c.depth = model.exact_gate_depth;
    }
    return c;
}

}  // namespace

CliffordTMetrics clifford_t_metrics(Protocol protocol, int n, double eps, BudgetStrategy strategy,
                                    const TCostModel& model) {
    auto arch = Architecture::make(protocol, n);
    AmplitudeTree tree = AmplitudeTree::build(TargetState::uniform(n));
    Circuit circuit = protocol == Protocol::TwoPerNode
                          ? synth_full2(tree, arch, default_schedule(protocol))
                          : synth_full3(tree, arch, default_schedule(protocol));
    TBudget budget = allocate_budget(eps, n, strategy);

    // Expanded-timeline accounting with operand dependencies only: moments
    // give the gate order, but a short gate is not stretched to the longest
    // gate sharing its moment. Forward pass = earliest start/finish, backward
    // pass = latest start; a qubit is active from its first gate's latest
    // start to its last gate's earliest finish, which is the slack-compacted
    // active interval.
    CliffordTMetrics m;
    const int qubits = arch->qubit_count();
    std::vector<GateCost> costs;
    std::vector<long> asap_end_of;  // per gate, flattened in moment order
    {
        std::vector<long> clock(static_cast<size_t>(qubits), 0);
        for (int t = 0; t < circuit.moment_count(); ++t) {
            for (const Gate& g : circuit.moment(t)) {
                GateCost c = gate_cost(*arch, g, budget, model);
                m.t_count += c.count;
                long start = 0;
                for (int q : g.qubits) start = std::max(start, clock[static_cast<size_t>(q)]);
                const long end = start + c.depth;
                for (int q : g.qubits) clock[static_cast<size_t>(q)] = end;
                costs.push_back(c);
                asap_end_of.push_back(end);
            }
        }
        for (long c : clock) m.t_depth = std::max(m.t_depth, c);
    }

    std::vector<long> first_start(static_cast<size_t>(qubits), -1);
    std::vector<long> last_end(static_cast<size_t>(qubits), -1);
    std::vector<long> busy(static_cast<size_t>(qubits), 0);
    {
        std::vector<long> rclock(static_cast<size_t>(qubits), m.t_depth);
        size_t idx = costs.size();
        for (int t = circuit.moment_count() - 1; t >= 0; --t) {
            const Moment& moment = circuit.moment(t);
            for (auto it = moment.rbegin(); it != moment.rend(); ++it) {
                --idx;
                long end = m.t_depth;
                for (int q : it->qubits) end = std::min(end, rclock[static_cast<size_t>(q)]);
                const long alap_start = end - costs[idx].depth;
                for (int q : it->qubits) {
                    rclock[static_cast<size_t>(q)] = alap_start;
                    first_start[static_cast<size_t>(q)] = alap_start;  // overwritten downwards
                    busy[static_cast<size_t>(q)] += costs[idx].depth;
                    if (last_end[static_cast<size_t>(q)] < 0) {
                        last_end[static_cast<size_t>(q)] = asap_end_of[idx];
                    }
                }
            }
        }
    }
    for (int q = 0; q < qubits; ++q) {
        if (first_start[static_cast<size_t>(q)] >= 0) {
            // the slack-compacted span can undershoot a qubit's own busy time
            // when earliest and latest schedules disagree; active time is at
            // least the time spent inside gates
            m.sta += std::max(last_end[static_cast<size_t>(q)] - first_start[static_cast<size_t>(q)],
                              busy[static_cast<size_t>(q)]);
        }
    }
    return m;
}

namespace {

// Unitary V = exp(i theta n.sigma) has ||V - I|| = 2 sin(theta/2); scaling
// theta pins the perturbation distance exactly.
Eigen::Matrix2cd random_perturbation(double distance, uint64_t seed, int l, int j) {
    if (distance >= 2.0) distance = 2.0;
    const double theta = 2.0 * std::asin(distance / 2.0);
    uint64_t w0 = counter_word(seed, 0x706572ull, uint64_t(l), uint64_t(j), 0);
    uint64_t w1 = counter_word(seed, 0x706572ull, uint64_t(l), uint64_t(j), 1);
    const double z = 2.0 * u01(w0) - 1.0;
    const double phi = 2.0 * M_PI * u01(w1);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double nx = s * std::cos(phi), ny = s * std::sin(phi), nz = z;

    Eigen::Matrix2cd h;  // n.sigma
    h << Complex(nz, 0), Complex(nx, -ny), Complex(nx, ny), Complex(-nz, 0);
    return (std::cos(theta) * Eigen::Matrix2cd::Identity() +
            Complex(0, std::sin(theta)) * h);
}

Eigen::VectorXcd output_amplitudes(const SparseState& state, const Architecture& arch) {
    const int n = arch.n();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
    SparseState expanded = expand_output_basis(state, arch);
    for (const auto& term : expanded.terms) {
        bool qram_clear = true;
        for (const auto& [q, f] : term.factors) {
            if (!arch.is_output(q)) {
                qram_clear = false;
                break;
            }
        }
        if (!qram_clear) continue;  // residual QRAM weight shows up as a deficit
        out(*output_index(term, arch)) += term.amp;
    }
    return out;
}

}  // namespace

PerturbationResult perturbation_bound_check(const AmplitudeTree& tree, const TBudget& budget,
                                            uint64_t seed, Protocol protocol) {
    const int n = tree.n();
    if (static_cast<int>(budget.per_level.size()) != n) {
        throw std::invalid_argument("perturbation: budget level count does not match tree");
    }
    auto arch = Architecture::make(protocol, n);

    auto synth = [&](bool perturbed) {
        // Same construction as the protocol synth, with perturbed payloads.
        std::vector<std::vector<Eigen::Matrix2cd>> rot(static_cast<size_t>(n));
        for (int l = 0; l < n; ++l) {
            rot[static_cast<size_t>(l)].resize(size_t(1) << l);
            for (int j = 0; j < (1 << l); ++j) {
                Eigen::Matrix2cd r = tree.rotation(l, j).r;
                if (perturbed) {
                    uint64_t w = counter_word(seed, 0x7363616cull, uint64_t(l), uint64_t(j));
                    const double dist = budget.per_level[static_cast<size_t>(l)] *
                                        (0.5 + 0.5 * u01(w));
                    r = r * random_perturbation(dist, seed, l, j);
                }
                rot[static_cast<size_t>(l)][static_cast<size_t>(j)] = r;
            }
        }
        return rot;
    };

    auto run_with = [&](const std::vector<std::vector<Eigen::Matrix2cd>>& rot) {
        Circuit circuit(arch);
        if (protocol == Protocol::TwoPerNode) {
            for (int l = 0; l < n; ++l) {
                Moment rotations;
                for (int j = 0; j < (1 << l); ++j) {
                    rotations.push_back(Gate::crot(arch->upper(l, j), arch->lower(l, j),
                                                   rot[static_cast<size_t>(l)][static_cast<size_t>(j)]));
                }
                circuit.append_moment(std::move(rotations));
                Moment routes;
                for (int j = 0; j < (1 << l); ++j) {
                    routes.push_back(Gate::route(arch->lower(l, j), arch->upper(l, j),
                                                 arch->upper(l + 1, 2 * j),
                                                 arch->upper(l + 1, 2 * j + 1)));
                }
                circuit.append_moment(std::move(routes));
            }
            circuit = Circuit::concat(circuit, synth_fanout2(arch));
        } else {
            Moment pre;
            for (int l = 0; l < n; ++l) {
                for (int j = 0; j < (1 << l); ++j) {
                    pre.push_back(Gate::rot1(arch->lower(l, j),
                                             rot[static_cast<size_t>(l)][static_cast<size_t>(j)]));
                }
            }
            circuit.append_moment(std::move(pre));
            for (int l = 0; l < n; ++l) {
                Moment cnots;
                for (int j = 0; j < (1 << l); ++j) {
                    cnots.push_back(Gate::cnot(arch->upper(l, j), arch->middle(l, j)));
                }
                circuit.append_moment(std::move(cnots));
                Moment routes;
                for (int j = 0; j < (1 << l); ++j) {
                    routes.push_back(Gate::croute(arch->middle(l, j), arch->lower(l, j),
                                                  arch->upper(l, j), arch->upper(l + 1, 2 * j),
                                                  arch->upper(l + 1, 2 * j + 1)));
                }
                circuit.append_moment(std::move(routes));
            }
            Moment uncompute;
            for (int l = 0; l < n; ++l) {
                for (int j = 0; j < (1 << l); ++j) {
                    uncompute.push_back(Gate::open_crot(
                        arch->middle(l, j), arch->lower(l, j),
                        rot[static_cast<size_t>(l)][static_cast<size_t>(j)].adjoint()));
                }
            }
            circuit.append_moment(std::move(uncompute));
            circuit = Circuit::concat(circuit, synth_fanout3(arch));
        }
        return output_amplitudes(run_noiseless(circuit).state, *arch);
    };

    Eigen::VectorXcd ideal = run_with(synth(false));
    Eigen::VectorXcd approx = run_with(synth(true));

    PerturbationResult result;
    result.bound = budget.sum();
    result.distance = (ideal - approx).norm();
    result.ok = result.distance <= result.bound + 1e-9;
    return result;
}

}  // namespace treeprep
