#include <doctest.h>

#include <cmath>

#include "treeprep/errors.hpp"
#include "treeprep/random.hpp"
#include "treeprep/simulator.hpp"
#include "treeprep/synth_two.hpp"

using namespace treeprep;

namespace {

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("single-factor gate actions") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 1);
    const int q = arch->lower(0, 0);

    SparseState s = SparseState::initial(*arch);
    apply_gate(s, Gate::rot1(q, pauli_x()), 64);
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].factor(q).kind == Factor::Kind::One);

    // Z on a superposed factor flips the sign of the |1> component
    apply_gate(s, Gate::rot1(q, hadamard()), 64);  // now (1,-1)/sqrt2 up to phase
    apply_gate(s, Gate::rot1(q, pauli_z()), 64);
    Factor f = s.terms[0].factor(q);
    REQUIRE(f.kind == Factor::Kind::Super);
    // state is back to (1,1)/sqrt2 modulo the term amplitude
    CHECK(std::abs(f.a0 / f.a1 - Complex(1, 0)) < 1e-12);
}

TEST_CASE("pauli error actions carry the right phases") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 1);
    const int q = arch->root();

    // Y on |1>: amplitude picks up -i and the factor drops to |0>
    SparseState s = SparseState::initial(*arch);  // root = |1>
    ErrorConfig cfg = ErrorConfig::none(1, arch->qubit_count());
    cfg.moments[0].push_back({q, Pauli::Y});
    apply_errors(s, cfg, 0);
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].factor(q).kind == Factor::Kind::Zero);
    CHECK(std::abs(s.terms[0].amp - Complex(0, -1)) < 1e-12);

    // X on |1> -> |0>, no phase
    SparseState s2 = SparseState::initial(*arch);
    ErrorConfig cfg2 = ErrorConfig::none(1, arch->qubit_count());
    cfg2.moments[0].push_back({q, Pauli::X});
    apply_errors(s2, cfg2, 0);
    CHECK(s2.terms[0].factor(q).kind == Factor::Kind::Zero);
    CHECK(std::abs(s2.terms[0].amp - Complex(1, 0)) < 1e-12);

    // empty moment is the identity
    SparseState s3 = SparseState::initial(*arch);
    apply_errors(s3, ErrorConfig::none(1, arch->qubit_count()), 0);
    CHECK(state_distance(s3, SparseState::initial(*arch)) < 1e-12);
}

TEST_CASE("route exchanges the selected pair") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 1);
    SparseState s = SparseState::initial(*arch);
    // activate rt = D[0,0], put a marker on in = U[0,0]
    apply_gate(s, Gate::rot1(arch->lower(0, 0), pauli_x()), 64);
    apply_gate(s, Gate::route(arch->lower(0, 0), arch->upper(0, 0), arch->upper(1, 0),
                              arch->upper(1, 1)),
               64);
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].factor(arch->upper(0, 0)).kind == Factor::Kind::Zero);
    CHECK(s.terms[0].factor(arch->upper(1, 1)).kind == Factor::Kind::One);  // rt = 1: in <-> ro
    CHECK(s.terms[0].factor(arch->upper(1, 0)).kind == Factor::Kind::Zero);
}

TEST_CASE("controlled rotation splits superposed controls") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 1);
    SparseState s = SparseState::initial(*arch);
    apply_gate(s, Gate::rot1(arch->root(), hadamard()), 64);
    apply_gate(s, Gate::crot(arch->root(), arch->lower(0, 0), pauli_x()), 64);
    s.merge_and_prune(true);
    REQUIRE(s.terms.size() == 2);
    CHECK(std::abs(s.squared_norm() - 1.0) < 1e-12);
    // the control-0 branch leaves the target alone, the control-1 branch flips it
    for (const auto& t : s.terms) {
        const bool control = t.factor(arch->root()).kind == Factor::Kind::One;
        const bool target = t.factor(arch->lower(0, 0)).kind == Factor::Kind::One;
        CHECK(control == target);
    }
}

TEST_CASE("noiseless full runs keep at most 2^n terms") {
    for (int n = 1; n <= 5; ++n) {
        auto arch = Architecture::make(Protocol::TwoPerNode, n);
        auto tree = AmplitudeTree::build(TargetState::random(n, counter_word(3, n)));
        RunOptions opts;
        opts.record_term_counts = true;
        auto result = run_noiseless(synth_full2(tree, arch), opts);
        for (size_t count : result.term_counts) CHECK(count <= size_t(1) << n);
        CHECK(std::abs(result.state.squared_norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("sparse equals dense across random noisy configs, 2pn") {
    for (int n : {1, 2}) {
        auto arch = Architecture::make(Protocol::TwoPerNode, n);
        auto tree = AmplitudeTree::build(TargetState::random(n, counter_word(11, n)));
        Circuit circuit = synth_full2(tree, arch);
        for (uint64_t i = 0; i < 40; ++i) {
            auto cfg = sample_config(circuit.moment_count(), arch->qubit_count(), 0.3, 77, i);
            CHECK(sparse_dense_equal(circuit, cfg, 1e-9));
        }
    }
}

TEST_CASE("norm is preserved after every moment") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 2);
    auto tree = AmplitudeTree::build(TargetState::random(2, 5));
    Circuit circuit = synth_full2(tree, arch);
    auto cfg = sample_config(circuit.moment_count(), arch->qubit_count(), 0.2, 9, 0);

    SparseState s = SparseState::initial(*arch);
    for (int m = 0; m < circuit.moment_count(); ++m) {
        for (const Gate& g : circuit.moment(m)) apply_gate(s, g, 1 << 10);
        apply_errors(s, cfg, m);
        s.merge_and_prune(true);
        CHECK(std::abs(s.squared_norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("fidelity examples") {
    const int n = 1;
    auto arch = Architecture::make(Protocol::TwoPerNode, n);
    auto target = TargetState::uniform(n);
    auto tree = AmplitudeTree::build(target);
    Circuit circuit = synth_full2(tree, arch);
    const int M = circuit.moment_count();

    SUBCASE("noiseless run prepares the target exactly") {
        auto state = run_noiseless(circuit).state;
        CHECK(output_fidelity(state, target, *arch) == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("a final-moment Z on the output of |+> kills the fidelity") {
        ErrorConfig cfg = ErrorConfig::none(M, arch->qubit_count());
        cfg.moments[M - 1].push_back({arch->output(1), Pauli::Z});
        auto state = run(circuit, cfg).state;
        CHECK(output_fidelity(state, target, *arch) < 1e-9);
    }

    SUBCASE("a final-moment X on any QRAM qubit is traced out") {
        for (int id = 0; id < arch->qubit_count(); ++id) {
            if (arch->is_output(id)) continue;
            ErrorConfig cfg = ErrorConfig::none(M, arch->qubit_count());
            cfg.moments[M - 1].push_back({id, Pauli::X});
            auto state = run(circuit, cfg).state;
            CHECK(output_fidelity(state, target, *arch) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("fidelity stays within [0, 1] under noise") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 2);
    auto target = TargetState::random(2, 21);
    auto tree = AmplitudeTree::build(target);
    Circuit circuit = synth_full2(tree, arch);
    for (uint64_t i = 0; i < 50; ++i) {
        auto cfg = sample_config(circuit.moment_count(), arch->qubit_count(), 0.25, 31, i);
        double f = output_fidelity(run(circuit, cfg).state, target, *arch);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-12);
    }
}

TEST_CASE("merging does not change reported fidelity") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 2);
    auto target = TargetState::random(2, 77);
    auto tree = AmplitudeTree::build(target);
    Circuit circuit = synth_full2(tree, arch);
    for (uint64_t i = 0; i < 20; ++i) {
        auto cfg = sample_config(circuit.moment_count(), arch->qubit_count(), 0.2, 13, i);
        RunOptions merged, unmerged;
        unmerged.merge = false;
        unmerged.term_cap = 1 << 16;
        double f1 = output_fidelity(run(circuit, cfg, merged).state, target, *arch);
        double f2 = output_fidelity(run(circuit, cfg, unmerged).state, target, *arch);
        CHECK(std::abs(f1 - f2) < 1e-10);
    }
}

TEST_CASE("term cap raises a capacity error") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 3);
    auto tree = AmplitudeTree::build(TargetState::uniform(3));
    Circuit circuit = synth_full2(tree, arch);
    RunOptions opts;
    opts.term_cap = 2;
    CHECK_THROWS_AS(run_noiseless(circuit, opts), CapacityError);
}

TEST_CASE("run rejects mismatched config length") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 1);
    auto tree = AmplitudeTree::build(TargetState::uniform(1));
    Circuit circuit = synth_full2(tree, arch);
    auto cfg = ErrorConfig::none(circuit.moment_count() + 1, arch->qubit_count());
    CHECK_THROWS_AS(run(circuit, cfg), std::invalid_argument);
}

TEST_CASE("dense guard rejects oversized architectures") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 2);
    Circuit c(arch);
    CHECK_THROWS_AS(dense_run(c, ErrorConfig{}, 5), std::invalid_argument);
}
