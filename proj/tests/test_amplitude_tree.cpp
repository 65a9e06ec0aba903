#include <doctest.h>

#include <cmath>

#include "treeprep/amplitude_tree.hpp"
#include "treeprep/random.hpp"

using namespace treeprep;

namespace {

// Brute-force oracle: expand the tree top-down through the rotation entries
// and reproduce the leaf amplitudes.
Complex reconstruct_leaf(const AmplitudeTree& tree, long j) {
    const int n = tree.n();
    Complex amp = tree.value(0, 0);
    for (int l = 0; l < n; ++l) {
        const int prefix = static_cast<int>(j >> (n - l));
        const bool bit = (j >> (n - l - 1)) & 1;
        RotationParams rot = tree.rotation(l, prefix);
        amp *= bit ? rot.c1 : rot.c0;
    }
    return amp;
}

}  // namespace

TEST_CASE("uniform tree collapses to equal level magnitudes") {
    auto tree = AmplitudeTree::build(TargetState::uniform(2));
    CHECK(std::abs(tree.value(1, 0) - Complex(1.0 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(tree.value(1, 1) - Complex(1.0 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(tree.value(0, 0) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("basis state tree uses the arg(0) = 0 convention") {
    auto tree = AmplitudeTree::build(TargetState::basis(1, 1));
    CHECK(tree.value(1, 0) == Complex(0, 0));
    CHECK(tree.value(1, 1) == Complex(1, 0));
    CHECK(std::abs(tree.value(0, 0) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("n=1 complex pair") {
    TargetState t{1, Eigen::VectorXcd(2)};
    t.amplitudes << Complex(0.6, 0), Complex(0, 0.8);
    auto tree = AmplitudeTree::build(t);
    CHECK(std::abs(tree.value(0, 0) - Complex(1, 0)) < 1e-9);
    RotationParams rot = tree.rotation(0, 0);
    CHECK(std::abs(rot.c0 - Complex(0.6, 0)) < 1e-12);
    CHECK(std::abs(rot.c1 - Complex(0, 0.8)) < 1e-12);
    // column orthonormality
    Eigen::Matrix2cd gram = rot.r.adjoint() * rot.r;
    CHECK((gram - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(rot.r(0, 1) - Complex(0, 0.8)) < 1e-12);
    CHECK(std::abs(rot.r(1, 1) - Complex(0.6, 0)) < 1e-12);
}

TEST_CASE("trivial rotation is the identity") {
    auto tree = AmplitudeTree::build(TargetState::basis(1, 0));
    RotationParams rot = tree.rotation(0, 0);
    CHECK(rot.r.isApprox(Eigen::Matrix2cd::Identity(), 1e-14));
    CHECK(rot.alpha == 0.0);
    CHECK(rot.beta == 0.0);
}

TEST_CASE("zero-amplitude subtree gets the identity rotation") {
    auto tree = AmplitudeTree::build(TargetState::basis(2, 3));
    CHECK(std::abs(tree.value(1, 0)) == 0.0);
    RotationParams rot = tree.rotation(1, 0);
    CHECK(rot.r.isApprox(Eigen::Matrix2cd::Identity(), 1e-14));
}

TEST_CASE("normalization report") {
    TargetState pass{1, Eigen::VectorXcd(2)};
    pass.amplitudes << Complex(1, 0), Complex(0, 0);
    CHECK(validate_normalization(pass).pass);
    CHECK(validate_normalization(pass).norm == doctest::Approx(1.0));

    TargetState fail{1, Eigen::VectorXcd(2)};
    fail.amplitudes << Complex(1, 0), Complex(1, 0);
    auto report = validate_normalization(fail);
    CHECK_FALSE(report.pass);
    CHECK(report.norm == doctest::Approx(2.0));

    TargetState complex_pass{1, Eigen::VectorXcd(2)};
    complex_pass.amplitudes << Complex(0.6, 0), Complex(0, 0.8);
    CHECK(validate_normalization(complex_pass).pass);
}

TEST_CASE("non-normalized input is rejected unless auto-normalize is on") {
    TargetState bad{1, Eigen::VectorXcd(2)};
    bad.amplitudes << Complex(1, 0), Complex(1, 0);
    CHECK_THROWS_AS(AmplitudeTree::build(bad), std::invalid_argument);
    auto tree = AmplitudeTree::build(bad, {.tolerance = 1e-9, .auto_normalize = true});
    CHECK(std::abs(tree.value(1, 0) - Complex(1.0 / std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("rotation index range is enforced") {
    auto tree = AmplitudeTree::build(TargetState::uniform(2));
    CHECK_THROWS_AS(tree.rotation(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(tree.rotation(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(tree.rotation(-1, 0), std::invalid_argument);
}

TEST_CASE("tree invariants and reconstruction oracle on random targets") {
    for (int n = 1; n <= 6; ++n) {
        for (uint64_t seed = 0; seed < 8; ++seed) {
            auto target = TargetState::random(n, counter_word(42, n, seed));
            auto tree = AmplitudeTree::build(target);

            CHECK(std::abs(std::abs(tree.value(0, 0)) - 1.0) < 1e-9);
            for (int l = 0; l <= n; ++l) {
                CHECK(std::abs(tree.level(l).squaredNorm() - 1.0) < 1e-9);
            }
            for (int l = 0; l < n; ++l) {
                for (int j = 0; j < (1 << l); ++j) {
                    const double mag2 = std::norm(tree.value(l, j));
                    const double child2 =
                        std::norm(tree.value(l + 1, 2 * j)) + std::norm(tree.value(l + 1, 2 * j + 1));
                    CHECK(std::abs(mag2 - child2) < 1e-12);
                    if (std::abs(tree.value(l + 1, 2 * j)) > 0) {
                        CHECK(std::abs(std::arg(tree.value(l, j)) -
                                       std::arg(tree.value(l + 1, 2 * j))) < 1e-9);
                    }

                    RotationParams rot = tree.rotation(l, j);
                    CHECK(std::abs(std::norm(rot.c0) + std::norm(rot.c1) - 1.0) < 1e-12);
                    CHECK(rot.c0.imag() == doctest::Approx(0.0).epsilon(1e-12));
                    CHECK(rot.c0.real() >= -1e-12);
                    Eigen::Matrix2cd gram = rot.r.adjoint() * rot.r;
                    CHECK((gram - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
                    // angle split: c0 = cos(beta/2), c1 = e^{i alpha} sin(beta/2)
                    CHECK(std::abs(rot.c0 - Complex(std::cos(rot.beta / 2), 0)) < 1e-9);
                    CHECK(std::abs(rot.c1 - std::polar(std::sin(rot.beta / 2), rot.alpha)) < 1e-9);
                }
            }

            for (long j = 0; j < (1L << n); ++j) {
                CHECK(std::abs(reconstruct_leaf(tree, j) - target.amplitudes(j)) < 1e-12);
            }
        }
    }
}
