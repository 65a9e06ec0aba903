#include <doctest.h>

#include "treeprep/circuit.hpp"
#include "treeprep/errors.hpp"
#include "treeprep/serialization.hpp"

using namespace treeprep;

namespace {

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

}  // namespace

TEST_CASE("disjoint gates in one moment are accepted") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 3);
    Circuit c(arch);
    c.append_moment({Gate::swap(arch->output(1), arch->output(2)), Gate::rot1(arch->root(), hadamard())});
    CHECK(c.moment_count() == 1);
}

TEST_CASE("overlapping operands raise a conflict naming the qubit") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 3);
    Circuit c(arch);
    try {
        c.append_moment({Gate::swap(arch->output(1), arch->output(2)),
                         Gate::rot1(arch->output(2), hadamard())});
        FAIL("expected ConflictError");
    } catch (const ConflictError& e) {
        CHECK(std::string(e.what()).find("O[2]") != std::string::npos);
    }
}

TEST_CASE("non-adjacent operands raise a connectivity error naming the gate") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 3);
    Circuit c(arch);
    try {
        c.append_moment({Gate::swap(arch->root(), arch->output(3))});
        FAIL("expected ConnectivityError");
    } catch (const ConnectivityError& e) {
        CHECK(std::string(e.what()).find("Swap") != std::string::npos);
    }
}

TEST_CASE("non-unitary payloads are rejected") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 2);
    Circuit c(arch);
    Eigen::Matrix2cd bad;
    bad << 1, 1, 0, 1;
    CHECK_THROWS_AS(c.append_moment({Gate::rot1(arch->root(), bad)}), ConnectivityError);
}

TEST_CASE("route shape: star around the routing qubit") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 2);
    Circuit c(arch);
    c.append_moment({Gate::route(arch->lower(0, 0), arch->upper(0, 0), arch->upper(1, 0),
                                 arch->upper(1, 1))});
    CHECK(c.validate_connectivity().empty());
    // swapping rt and in breaks the star
    CHECK_THROWS_AS(c.append_moment({Gate::route(arch->upper(0, 0), arch->lower(0, 0),
                                                 arch->upper(1, 0), arch->upper(1, 1))}),
                    ConnectivityError);
}

TEST_CASE("dist swap requires 3pn and a real path") {
    auto arch3 = Architecture::make(Protocol::ThreePerNode, 2);
    Circuit c3(arch3);
    c3.append_moment(
        {Gate::dist_swap(arch3->upper(1, 0), arch3->middle(1, 0), arch3->lower(1, 0))});
    CHECK(c3.validate_connectivity().empty());

    auto arch2 = Architecture::make(Protocol::TwoPerNode, 2);
    Circuit c2(arch2);
    CHECK_THROWS_AS(
        c2.append_moment({Gate::dist_swap(arch2->upper(0, 0), arch2->lower(0, 0), arch2->upper(1, 0))}),
        ConnectivityError);
}

TEST_CASE("metrics: depth, count, sta") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 3);

    Circuit empty(arch);
    auto m0 = empty.metrics();
    CHECK(m0.depth == 0);
    CHECK(m0.gate_count == 0);
    CHECK(m0.sta == 0);

    Circuit one(arch);
    one.append_moment({Gate::swap(arch->output(1), arch->output(2))});
    auto m1 = one.metrics();
    CHECK(m1.depth == 1);
    CHECK(m1.gate_count == 1);
    CHECK(m1.sta == 2);
    CHECK(m1.per_kind[static_cast<size_t>(GateKind::Swap)] == 1);

    // a qubit touched at moments 2 and 5 contributes 4 (inclusive interval)
    Circuit gap(arch);
    for (int t = 0; t < 6; ++t) {
        if (t == 2 || t == 5) {
            gap.append_moment({Gate::rot1(arch->root(), hadamard())});
        } else {
            gap.append_moment({});
        }
    }
    CHECK(gap.metrics().sta == 4);
    CHECK(gap.metrics().depth == 6);
}

TEST_CASE("concat adds depth and count; sta stays below the padded sum") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 3);
    Circuit a(arch), b(arch);
    a.append_moment({Gate::swap(arch->output(1), arch->output(2))});
    a.append_moment({});
    b.append_moment({Gate::swap(arch->output(2), arch->output(3))});

    Circuit ab = Circuit::concat(a, b);
    CHECK(ab.moment_count() == a.moment_count() + b.moment_count());
    CHECK(ab.metrics().gate_count == a.metrics().gate_count + b.metrics().gate_count);
    long bound = a.metrics().sta + b.metrics().sta +
                 static_cast<long>(arch->qubit_count()) * a.moment_count();
    CHECK(ab.metrics().sta <= bound);
}

TEST_CASE("validate_connectivity reports corrupted loaded circuits") {
    auto arch = Architecture::make(Protocol::TwoPerNode, 3);
    std::vector<Moment> moments{{Gate::swap(arch->root(), arch->output(3))}};
    Circuit bad = Circuit::from_moments_unchecked(arch, std::move(moments));
    auto violations = bad.validate_connectivity();
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].moment == 0);
    CHECK(violations[0].message.find("not adjacent") != std::string::npos);
}
