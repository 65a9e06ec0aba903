#include "treeprep/amplitude_tree.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "treeprep/random.hpp"

namespace treeprep {

namespace {

double arg_or_zero(Complex z) { return std::abs(z) > 0.0 ? std::arg(z) : 0.0; }

}  // namespace

TargetState TargetState::uniform(int n) {
    if (n < 1) throw std::invalid_argument("uniform target: n must be >= 1");
    const Eigen::Index size = Eigen::Index(1) << n;
    TargetState t{n, Eigen::VectorXcd::Constant(size, Complex(1.0 / std::sqrt(double(size)), 0.0))};
    return t;
}

TargetState TargetState::basis(int n, int k) {
    if (n < 1) throw std::invalid_argument("basis target: n must be >= 1");
    const Eigen::Index size = Eigen::Index(1) << n;
    if (k < 0 || k >= size) throw std::invalid_argument("basis target: index out of range");
    TargetState t{n, Eigen::VectorXcd::Zero(size)};
    t.amplitudes(k) = Complex(1.0, 0.0);
    return t;
}

TargetState TargetState::random(int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random target: n must be >= 1");
    const Eigen::Index size = Eigen::Index(1) << n;
    TargetState t{n, Eigen::VectorXcd(size)};
    for (Eigen::Index j = 0; j < size; ++j) {
        uint64_t w0 = counter_word(seed, 0x7a72676574ull, uint64_t(j), 0);
        uint64_t w1 = counter_word(seed, 0x7a72676574ull, uint64_t(j), 1);
        t.amplitudes(j) = gaussian_pair(w0, w1);
    }
    t.amplitudes.normalize();
    // Pin the global phase so preparation is exact, not just up to phase.
    if (std::abs(t.amplitudes(0)) > 1e-12) {
        t.amplitudes *= std::exp(Complex(0.0, -std::arg(t.amplitudes(0))));
    }
    return t;
}

NormReport validate_normalization(const TargetState& target, double tolerance) {
    NormReport report;
    report.tolerance = tolerance;
    report.norm = target.amplitudes.squaredNorm();
    report.pass = std::abs(report.norm - 1.0) <= tolerance;
    return report;
}

AmplitudeTree AmplitudeTree::build(const TargetState& target, const TreeBuildOptions& opts) {
    if (target.n < 1) throw std::invalid_argument("amplitude tree: n must be >= 1");
    const Eigen::Index size = Eigen::Index(1) << target.n;
    if (target.amplitudes.size() != size) {
        std::ostringstream msg;
        msg << "amplitude tree: expected " << size << " amplitudes, got "
            << target.amplitudes.size();
        throw std::invalid_argument(msg.str());
    }

    Eigen::VectorXcd leaf = target.amplitudes;
    NormReport norm = validate_normalization(target, opts.tolerance);
    if (!norm.pass) {
        if (!opts.auto_normalize || norm.norm <= 0.0) {
            std::ostringstream msg;
            msg << "amplitude tree: input not normalized (sum |psi|^2 = " << norm.norm << ")";
            throw std::invalid_argument(msg.str());
        }
        leaf /= std::sqrt(norm.norm);
    }

    AmplitudeTree tree;
    tree.n_ = target.n;
    tree.levels_.resize(static_cast<size_t>(target.n) + 1);
    tree.levels_[static_cast<size_t>(target.n)] = leaf;
    for (int l = target.n - 1; l >= 0; --l) {
        const Eigen::VectorXcd& child = tree.levels_[static_cast<size_t>(l) + 1];
        Eigen::VectorXcd& cur = tree.levels_[static_cast<size_t>(l)];
        cur.resize(Eigen::Index(1) << l);
        for (Eigen::Index j = 0; j < cur.size(); ++j) {
            Complex left = child(2 * j);
            Complex right = child(2 * j + 1);
            double mag = std::sqrt(std::norm(left) + std::norm(right));
            cur(j) = std::polar(mag, arg_or_zero(left));
        }
    }
    return tree;
}

RotationParams AmplitudeTree::rotation(int l, int j) const {
    if (l < 0 || l >= n_) throw std::invalid_argument("rotation: level out of range");
    if (j < 0 || j >= (1 << l)) throw std::invalid_argument("rotation: index out of range");

    RotationParams p;
    p.level = l;
    p.index = j;
    Complex parent = value(l, j);
    if (std::abs(parent) == 0.0) {
        p.c0 = Complex(1.0, 0.0);
        p.c1 = Complex(0.0, 0.0);
    } else {
        p.c0 = value(l + 1, 2 * j) / parent;
        p.c1 = value(l + 1, 2 * j + 1) / parent;
    }
    p.r << p.c0, -std::conj(p.c1), p.c1, std::conj(p.c0);
    p.beta = 2.0 * std::atan2(std::abs(p.c1), p.c0.real());
    p.alpha = std::abs(p.c1) > 0.0 ? std::arg(p.c1) : 0.0;
    return p;
}

}  // namespace treeprep
