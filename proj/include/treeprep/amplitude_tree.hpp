#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace treeprep {

using Complex = std::complex<double>;

// Normalized amplitude vector to load. amplitudes[j] for j = 0..2^n-1.
// Preparation is exact when arg(amplitudes[0]) = 0 (the usual convention);
// otherwise the prepared state differs by the global phase exp(-i*arg(psi_0)).
struct TargetState {
    int n = 0;
    Eigen::VectorXcd amplitudes;

    static TargetState uniform(int n);
    static TargetState basis(int n, int k);
    static TargetState random(int n, uint64_t seed);
};

struct NormReport {
    double norm = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

NormReport validate_normalization(const TargetState& target, double tolerance = 1e-9);

// Level-l unit-norm pair c = (psi_{l+1,2j}, psi_{l+1,2j+1}) / psi_{l,j} and its
// unitary completion r = [[c0, -conj(c1)], [c1, conj(c0)]]. The angles satisfy
// c0 = cos(beta/2) and c1 = exp(i*alpha) sin(beta/2); c0 is real >= 0 by the
// phase recursion, so r|0> equals the z-phase-then-y-rotation action on |0>.
struct RotationParams {
    int level = 0;
    int index = 0;
    Complex c0, c1;
    Eigen::Matrix2cd r;
    double alpha = 0.0;
    double beta = 0.0;
};

struct TreeBuildOptions {
    double tolerance = 1e-9;
    bool auto_normalize = false;
};

// Recursive intermediate amplitudes: levels[l][j] = psi_{l,j}, with
// levels[n] = the target amplitudes and
// psi_{l,j} = exp(i*arg(psi_{l+1,2j})) * sqrt(|psi_{l+1,2j}|^2 + |psi_{l+1,2j+1}|^2),
// using arg(0) := 0. Index bits are most-significant-first: j = j_1 j_2 ... j_l.
class AmplitudeTree {
public:
    static AmplitudeTree build(const TargetState& target, const TreeBuildOptions& opts = {});

    int n() const { return n_; }
    const Eigen::VectorXcd& level(int l) const { return levels_[static_cast<size_t>(l)]; }
    Complex value(int l, int j) const { return levels_[static_cast<size_t>(l)](j); }

    // Zero-amplitude subtrees get the identity rotation.
    RotationParams rotation(int l, int j) const;

    TargetState target() const { return TargetState{n_, levels_.back()}; }

private:
    int n_ = 0;
    std::vector<Eigen::VectorXcd> levels_;
};

}  // namespace treeprep
