// Batch front-end: synthesize, validate, simulate, sweep, and estimate
// resources for the bucket-brigade tree state-preparation protocols.
//
// Exit codes: 0 ok, 1 validation finding, 2 usage error, 3 I/O failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "treeprep/parallel.hpp"
#include "treeprep/random.hpp"
#include "treeprep/resources.hpp"
#include "treeprep/robustness.hpp"
#include "treeprep/serialization.hpp"
#include "treeprep/synth_three.hpp"
#include "treeprep/synth_two.hpp"

namespace {

using namespace treeprep;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CommonSpec {
    std::string protocol = "2pn";
    int n = 0;
    std::string amplitudes_path;
    std::string preset = "uniform";
    uint64_t seed = 1;
    int stagger = 0;  // 0: protocol default
    std::string out;

    Protocol parsed_protocol() const { return protocol_from_name(protocol); }

    ScheduleOptions schedule() const {
        ScheduleOptions opts = default_schedule(parsed_protocol());
        if (stagger > 0) opts.stagger = stagger;
        return opts;
    }

    TargetState target() {
        TargetState t;
        if (!amplitudes_path.empty()) {
            t = target_from_json(read_json_file(amplitudes_path));
            if (n != 0 && n != t.n) {
                throw UsageError("--n (" + std::to_string(n) +
                                 ") does not match the amplitude file (n = " +
                                 std::to_string(t.n) + ")");
            }
            n = t.n;
            return t;
        }
        if (n < 1) throw UsageError("--n is required with a preset target");
        if (preset == "uniform") return TargetState::uniform(n);
        if (preset == "random") return TargetState::random(n, seed);
        if (preset.rfind("basis:", 0) == 0) {
            int k = 0;
            try {
                k = std::stoi(preset.substr(6));
            } catch (const std::exception&) {
                throw UsageError("--preset basis:<k> needs an integer index");
            }
            return TargetState::basis(n, k);
        }
        throw UsageError("unknown --preset '" + preset + "' (uniform | basis:<k> | random)");
    }
};

void add_common(CLI::App* cmd, CommonSpec& spec, bool needs_target) {
    cmd->add_option("--protocol", spec.protocol, "protocol variant: 2pn or 3pn")
        ->check(CLI::IsMember({"2pn", "3pn"}));
    cmd->add_option("--n", spec.n, "qubit count of the target register");
    if (needs_target) {
        cmd->add_option("--amplitudes", spec.amplitudes_path, "amplitude JSON file");
        cmd->add_option("--preset", spec.preset, "uniform | basis:<k> | random");
    }
    cmd->add_option("--seed", spec.seed, "random stream seed");
    cmd->add_option("--stagger", spec.stagger, "fanout stage stagger (0 = protocol default)");
    cmd->add_option("--out", spec.out, "output file path");
}

Circuit synth_circuit(const CommonSpec& spec, const AmplitudeTree& tree,
                      std::shared_ptr<const Architecture> arch) {
    return spec.parsed_protocol() == Protocol::TwoPerNode
               ? synth_full2(tree, arch, spec.schedule())
               : synth_full3(tree, arch, spec.schedule());
}

void emit(const std::string& path, const std::string& contents) {
    if (path.empty()) {
        std::cout << contents;
    } else {
        write_file(path, contents);
    }
}

int cmd_synth(CommonSpec& spec, const std::string& arch_out) {
    TargetState target = spec.target();
    auto arch = Architecture::make(spec.parsed_protocol(), spec.n);
    AmplitudeTree tree = AmplitudeTree::build(target);
    Circuit circuit = synth_circuit(spec, tree, arch);

    if (!spec.out.empty()) write_file(spec.out, circuit_to_json(circuit).dump(2) + "\n");
    if (!arch_out.empty()) write_file(arch_out, architecture_to_json(*arch).dump(2) + "\n");

    ResourceMetrics m = circuit.metrics();
    Json summary{{"variant", protocol_name(arch->variant())},
                 {"n", arch->n()},
                 {"depth", m.depth},
                 {"gate_count", m.gate_count},
                 {"sta", m.sta},
                 {"max_degree", arch->max_degree()},
                 {"qubits", arch->qubit_count()}};
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_simulate(CommonSpec& spec, double epsilon, int trajectories,
                 const std::string& dump_prefix) {
    TargetState target = spec.target();
    auto arch = Architecture::make(spec.parsed_protocol(), spec.n);
    AmplitudeTree tree = AmplitudeTree::build(target);
    Circuit circuit = synth_circuit(spec, tree, arch);
    const int moments = circuit.moment_count();
    const int qubits = arch->qubit_count();

    RunOptions run_opts;
    run_opts.record_term_counts = true;
    std::vector<BranchReport> reports(static_cast<size_t>(trajectories));
    parallel_for(reports.size(), [&](size_t i) {
        ErrorConfig cfg = sample_config(moments, qubits, epsilon, spec.seed, i);
        reports[i] = per_config_bound_check(circuit, tree, cfg, run_opts);
    });

    std::string csv = "index,fidelity,lambda,lambda_prime,good_count,error_free_count,"
                      "violation,capacity_exceeded,dump\n";
    for (size_t i = 0; i < reports.size(); ++i) {
        const BranchReport& r = reports[i];
        std::string dump_path;
        if (!dump_prefix.empty() && (r.violation || r.capacity_exceeded)) {
            dump_path = dump_prefix + std::to_string(i) + ".json";
            ErrorConfig cfg = sample_config(moments, qubits, epsilon, spec.seed, i);
            write_file(dump_path, config_to_json(cfg).dump(2) + "\n");
            // per-moment term counts, for performance analysis of the trajectory
            write_file(dump_prefix + std::to_string(i) + ".trace.json",
                       Json(r.term_counts).dump() + "\n");
        }
        csv += std::to_string(i) + "," + fmt(r.fidelity) + "," + fmt(r.lambda) + "," +
               fmt(r.lambda_prime) + "," + std::to_string(r.good.size()) + "," +
               std::to_string(r.error_free.size()) + "," + (r.violation ? "1" : "0") + "," +
               (r.capacity_exceeded ? "1" : "0") + "," + dump_path + "\n";
    }
    emit(spec.out, csv);
    return kExitOk;
}

int cmd_sweep(CommonSpec& spec, int n_min, int n_max, std::vector<double> epsilons,
              int trajectories, bool uniform_target) {
    if (n_min < 1 || n_max < n_min) throw UsageError("invalid --n-min/--n-max range");
    if (epsilons.empty()) throw UsageError("at least one --epsilon is required");

    SweepSettings settings;
    for (int n = n_min; n <= n_max; ++n) settings.n_values.push_back(n);
    settings.epsilons = std::move(epsilons);
    settings.trajectories = trajectories;
    settings.seed = spec.seed;
    settings.stagger = spec.stagger;
    settings.uniform_target = uniform_target;

    auto rows = scaling_sweep(spec.parsed_protocol(), settings);
    std::string csv = "protocol,n,epsilon,seed,trajectories,mean_F,mean_lambda,"
                      "mean_lambda_prime,ratio_n3,ratio_n2,violations\n";
    for (const SweepRow& r : rows) {
        csv += protocol_name(r.protocol) + "," + std::to_string(r.n) + "," + fmt(r.epsilon) +
               "," + std::to_string(r.seed) + "," + std::to_string(r.trajectories) + "," +
               fmt(r.mean_fidelity) + "," + fmt(r.mean_lambda) + "," +
               fmt(r.mean_lambda_prime) + "," + fmt(r.ratio_n3) + "," + fmt(r.ratio_n2) + "," +
               std::to_string(r.violations) + "\n";
        if (r.capacity_errors > 0) {
            std::cerr << "warning: " << r.capacity_errors
                      << " trajectories hit the term cap at n=" << r.n << " eps=" << r.epsilon
                      << "\n";
        }
    }
    emit(spec.out, csv);
    return kExitOk;
}

int cmd_resources(CommonSpec& spec, int n_min, int n_max, std::vector<double> epsilons,
                  const std::string& strategy) {
    if (spec.n != 0) n_min = n_max = spec.n;
    if (n_min < 1 || n_max < n_min) throw UsageError("invalid n range");
    if (epsilons.empty()) throw UsageError("at least one --epsilon is required");
    BudgetStrategy strat =
        strategy == "uniform" ? BudgetStrategy::Uniform : BudgetStrategy::Geometric;

    std::string csv =
        "protocol,n,epsilon,strategy,t_count,t_depth,sta,ratio_count,ratio_depth,ratio_sta\n";
    for (int n = n_min; n <= n_max; ++n) {
        for (double eps : epsilons) {
            auto m = clifford_t_metrics(spec.parsed_protocol(), n, eps, strat);
            const double N = std::pow(2.0, n);
            const double L = std::log2(1.0 / eps);
            csv += spec.protocol + "," + std::to_string(n) + "," + fmt(eps) + "," + strategy +
                   "," + std::to_string(m.t_count) + "," + std::to_string(m.t_depth) + "," +
                   std::to_string(m.sta) + "," + fmt(m.t_count / (N * L)) + "," +
                   fmt(m.t_depth / (n + L)) + "," + fmt(m.sta / (N * L)) + "\n";
        }
    }
    emit(spec.out, csv);
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    Json j = read_json_file(path);
    Circuit circuit = [&] {
        try {
            return circuit_from_json(j);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("malformed circuit file: ") + e.what());
        }
    }();
    auto violations = circuit.validate_connectivity();
    for (const Violation& v : violations) {
        std::cout << "moment " << v.moment << " gate " << v.gate << ": " << v.message << "\n";
    }
    ResourceMetrics m = circuit.metrics();
    Json summary{{"moments", circuit.moment_count()},
                 {"gate_count", m.gate_count},
                 {"sta", m.sta},
                 {"violations", violations.size()}};
    std::cout << summary.dump(2) << "\n";
    return violations.empty() ? kExitOk : kExitFinding;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bucket-brigade tree state preparation: synthesis, noisy simulation, "
                 "robustness sweeps and Clifford+T accounting"};
    app.require_subcommand(1);

    CommonSpec synth_spec, sim_spec, sweep_spec, res_spec;
    std::string arch_out, dump_prefix, validate_path, strategy = "geometric";
    double epsilon = 0.001;
    int trajectories = 1000;
    int n_min = 2, n_max = 6;
    std::vector<double> epsilons;
    bool uniform_target = false;

    CLI::App* synth = app.add_subcommand("synth", "synthesize a circuit and report metrics");
    add_common(synth, synth_spec, true);
    synth->add_option("--arch-out", arch_out, "write the architecture export JSON here");

    CLI::App* simulate =
        app.add_subcommand("simulate", "per-trajectory noisy simulation with bound checks");
    add_common(simulate, sim_spec, true);
    simulate->add_option("--epsilon", epsilon, "per-qubit per-moment depolarization rate");
    simulate->add_option("--trajectories", trajectories, "number of sampled error configs");
    simulate->add_option("--dump-prefix", dump_prefix,
                         "write flagged-config dumps to <prefix><index>.json");

    CLI::App* sweep = app.add_subcommand("sweep", "aggregated scaling campaign over n and epsilon");
    add_common(sweep, sweep_spec, false);
    sweep->add_option("--n-min", n_min, "smallest n");
    sweep->add_option("--n-max", n_max, "largest n");
    sweep->add_option("--epsilon", epsilons, "error rate (repeatable)");
    sweep->add_option("--trajectories", trajectories, "trajectories per (n, epsilon) point");
    sweep->add_flag("--uniform-target", uniform_target,
                    "sweep the uniform target instead of seed-derived random targets");

    CLI::App* resources =
        app.add_subcommand("resources", "Clifford+T count/depth/STA accounting (no simulation)");
    add_common(resources, res_spec, false);
    resources->add_option("--n-min", n_min, "smallest n");
    resources->add_option("--n-max", n_max, "largest n");
    resources->add_option("--epsilon", epsilons, "total rotation-synthesis budget (repeatable)");
    resources->add_option("--strategy", strategy, "budget split: geometric or uniform")
        ->check(CLI::IsMember({"geometric", "uniform"}));

    CLI::App* validate = app.add_subcommand("validate", "validate a circuit JSON file");
    validate->add_option("file", validate_path, "circuit JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (synth->parsed()) return cmd_synth(synth_spec, arch_out);
        if (simulate->parsed()) return cmd_simulate(sim_spec, epsilon, trajectories, dump_prefix);
        if (sweep->parsed())
            return cmd_sweep(sweep_spec, n_min, n_max, epsilons, trajectories, uniform_target);
        if (resources->parsed()) return cmd_resources(res_spec, n_min, n_max, epsilons, strategy);
        if (validate->parsed()) return cmd_validate(validate_path);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
