#include "treeprep/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

#include "treeprep/errors.hpp"
#include "treeprep/parallel.hpp"
#include "treeprep/random.hpp"
#include "treeprep/synth_three.hpp"
#include "treeprep/synth_two.hpp"

namespace treeprep {

namespace {

long zero_padded_prefix(long j, int l, int n) { return (j >> (n - l)) << (n - l); }

std::vector<bool> good_mask(const ErrorConfig& config, const Architecture& arch) {
    const std::vector<bool> alive = survived_mask(config);
    const int n = arch.n();
    std::vector<bool> good(size_t(1) << n, false);
    for (long j = 0; j < (1L << n); ++j) {
        bool ok = true;
        for (int q : arch.hat_ancestors(n, static_cast<int>(j))) {
            if (!alive[static_cast<size_t>(q)]) {
                ok = false;
                break;
            }
        }
        good[static_cast<size_t>(j)] = ok;
    }
    return good;
}

std::vector<bool> error_free_mask(const std::vector<bool>& good, int n) {
    std::vector<bool> ef(good.size(), false);
    for (long j = 0; j < static_cast<long>(good.size()); ++j) {
        if (!good[static_cast<size_t>(j)]) continue;
        bool ok = true;
        for (int l = 0; l < n && ok; ++l) {
            ok = good[static_cast<size_t>(zero_padded_prefix(j, l, n))];
        }
        ef[static_cast<size_t>(j)] = ok;
    }
    return ef;
}

std::vector<long> mask_to_indices(const std::vector<bool>& mask) {
    std::vector<long> out;
    for (long j = 0; j < static_cast<long>(mask.size()); ++j) {
        if (mask[static_cast<size_t>(j)]) out.push_back(j);
    }
    return out;
}

double weight_sum(const AmplitudeTree& tree, const std::vector<long>& indices) {
    double total = 0.0;
    const Eigen::VectorXcd& leaf = tree.level(tree.n());
    for (long j : indices) total += std::norm(leaf(j));
    return total;
}

std::string qram_key(const ProductTerm& term, const Architecture& arch) {
    std::string key;
    for (const auto& [q, f] : term.factors) {
        if (arch.is_output(q)) continue;
        char buf[sizeof(int) + 1 + 4 * sizeof(double)];
        std::memcpy(buf, &q, sizeof(int));
        buf[sizeof(int)] = static_cast<char>(f.kind);
        double vals[4] = {f.a0.real(), f.a0.imag(), f.a1.real(), f.a1.imag()};
        std::memcpy(buf + sizeof(int) + 1, vals, sizeof(vals));
        key.append(buf, sizeof(buf));
    }
    return key;
}

}  // namespace

std::vector<long> good_branches(const ErrorConfig& config, const Architecture& arch) {
    return mask_to_indices(good_mask(config, arch));
}

std::vector<long> error_free_branches(const ErrorConfig& config, const Architecture& arch) {
    if (arch.variant() != Protocol::TwoPerNode) {
        throw std::logic_error(
            "error-free branches are defined for the 2-per-node protocol only");
    }
    return mask_to_indices(error_free_mask(good_mask(config, arch), arch.n()));
}

BranchReport per_config_bound_check(const Circuit& circuit, const AmplitudeTree& tree,
                                    const ErrorConfig& config, const RunOptions& opts) {
    const Architecture& arch = circuit.arch();
    BranchReport report;

    const std::vector<bool> good = good_mask(config, arch);
    report.good = mask_to_indices(good);
    report.lambda = weight_sum(tree, report.good);
    if (arch.variant() == Protocol::TwoPerNode) {
        report.error_free = mask_to_indices(error_free_mask(good, arch.n()));
        report.lambda_prime = weight_sum(tree, report.error_free);
    } else {
        report.lambda_prime = report.lambda;
    }

    try {
        RunResult result = run(circuit, config, opts);
        report.term_counts = std::move(result.term_counts);
        report.fidelity = output_fidelity(result.state, tree.target(), arch);
    } catch (const CapacityError&) {
        report.capacity_exceeded = true;
        return report;
    }

    const double bound =
        arch.variant() == Protocol::TwoPerNode ? report.lambda_prime : report.lambda;
    report.violation = report.fidelity < bound - 1e-9;
    return report;
}

bool structural_coherence_check(const SparseState& final_state, const std::vector<long>& indices,
                                const AmplitudeTree& tree, const Architecture& arch, double tol) {
    if (indices.empty()) return true;
    const Eigen::VectorXcd& psi = tree.level(tree.n());
    SparseState expanded = expand_output_basis(final_state, arch);

    // chi_j as keyed QRAM vectors
    std::map<long, std::map<std::string, Complex>> chi;
    for (const auto& term : expanded.terms) {
        auto j = output_index(term, arch);
        if (!j) continue;
        if (!std::binary_search(indices.begin(), indices.end(), *j)) continue;
        chi[*j][qram_key(term, arch)] += term.amp;
    }

    long ref = indices.front();
    for (long j : indices) {
        if (std::abs(psi(j)) > std::abs(psi(ref))) ref = j;
    }
    if (std::abs(psi(ref)) < 1e-12) return true;  // nothing to compare against

    std::map<std::string, Complex> v_ref;
    for (const auto& [key, amp] : chi[ref]) v_ref[key] = amp / psi(ref);

    for (long j : indices) {
        const auto& cj = chi[j];
        // every key of either side must agree: chi_j = psi_j * v_ref
        for (const auto& [key, amp] : cj) {
            auto it = v_ref.find(key);
            Complex expect = it == v_ref.end() ? Complex{0, 0} : it->second * psi(j);
            if (std::abs(amp - expect) > tol) return false;
        }
        for (const auto& [key, v] : v_ref) {
            if (cj.count(key)) continue;
            if (std::abs(v * psi(j)) > tol) return false;
        }
    }
    return true;
}

std::vector<int> error_free_support(const Architecture& arch, long j) {
    const int n = arch.n();
    std::vector<int> support = arch.hat_ancestors(n, static_cast<int>(j));
    if (arch.variant() == Protocol::TwoPerNode) {
        for (int l = 0; l < n; ++l) {
            auto hat = arch.hat_ancestors(n, static_cast<int>(zero_padded_prefix(j, l, n)));
            support.insert(support.end(), hat.begin(), hat.end());
        }
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
    }
    return support;
}

double branch_survival_probability(const Architecture& arch, long j, double eps, int moments) {
    const double count = static_cast<double>(error_free_support(arch, j).size());
    return std::pow(1.0 - eps, static_cast<double>(moments) * count);
}

std::vector<SweepRow> scaling_sweep(Protocol protocol, const SweepSettings& settings) {
    std::vector<SweepRow> rows;
    ScheduleOptions schedule = default_schedule(protocol);
    if (settings.stagger > 0) schedule.stagger = settings.stagger;

    for (int n : settings.n_values) {
        auto arch = Architecture::make(protocol, n);
        TargetState target = settings.uniform_target
                                 ? TargetState::uniform(n)
                                 : TargetState::random(n, counter_word(settings.seed, uint64_t(n)));
        AmplitudeTree tree = AmplitudeTree::build(target);
        Circuit circuit = protocol == Protocol::TwoPerNode ? synth_full2(tree, arch, schedule)
                                                           : synth_full3(tree, arch, schedule);
        const int moments = circuit.moment_count();
        const int qubits = arch->qubit_count();

        for (double eps : settings.epsilons) {
            uint64_t eps_bits;
            std::memcpy(&eps_bits, &eps, sizeof(eps));
            const uint64_t point_seed = counter_word(settings.seed, uint64_t(n), eps_bits);

            std::vector<BranchReport> reports(static_cast<size_t>(settings.trajectories));
            parallel_for(reports.size(), [&](size_t i) {
                ErrorConfig config = sample_config(moments, qubits, eps, point_seed, i);
                reports[i] = per_config_bound_check(circuit, tree, config);
            });

            SweepRow row;
            row.protocol = protocol;
            row.n = n;
            row.epsilon = eps;
            row.seed = settings.seed;
            row.trajectories = settings.trajectories;
            long valid = 0;
            for (const auto& r : reports) {
                if (r.capacity_exceeded) {
                    ++row.capacity_errors;
                    continue;
                }
                ++valid;
                row.mean_fidelity += r.fidelity;
                row.mean_lambda += r.lambda;
                row.mean_lambda_prime += r.lambda_prime;
                if (r.violation) ++row.violations;
            }
            if (valid > 0) {
                row.mean_fidelity /= static_cast<double>(valid);
                row.mean_lambda /= static_cast<double>(valid);
                row.mean_lambda_prime /= static_cast<double>(valid);
            }
            const double nd = static_cast<double>(n);
            row.ratio_n3 = (1.0 - row.mean_fidelity) / (eps * nd * nd * nd);
            row.ratio_n2 = (1.0 - row.mean_fidelity) / (eps * nd * nd);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace treeprep
