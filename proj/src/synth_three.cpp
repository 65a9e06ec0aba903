#include "treeprep/synth_three.hpp"

#include <stdexcept>

namespace treeprep {

namespace {

void check_arch3(const Architecture& arch, int n) {
    if (arch.variant() != Protocol::ThreePerNode) {
        throw std::invalid_argument("expected the 3-per-node architecture");
    }
    if (n != 0 && arch.n() != n) {
        throw std::invalid_argument("tree depth does not match architecture depth");
    }
}

Moment parallel_croute(const Architecture& arch, int l) {
    Moment m;
    for (int j = 0; j < (1 << l); ++j) {
        m.push_back(Gate::croute(arch.middle(l, j), arch.lower(l, j), arch.upper(l, j),
                                 arch.upper(l + 1, 2 * j), arch.upper(l + 1, 2 * j + 1)));
    }
    return m;
}

Stage pointer_uncompute3(const Architecture& arch) {
    Stage s;
    for (int l = arch.n() - 1; l >= 0; --l) s.steps.push_back(parallel_croute(arch, l));
    s.steps.push_back({Gate::not_gate(arch.root())});
    return s;
}

// Stage k: sub-chain A clears the layer-k middle marker, sub-chain B (two
// steps behind) extracts bit j_{k+1} into O[k+1]. The lag keeps the two
// routing chains two layers apart, so they share moments without conflicts.
Stage fanout_stage3(const Architecture& arch, int k) {
    std::vector<Moment> a, b;

    Moment swap_um;
    for (int j = 0; j < (1 << k); ++j) {
        swap_um.push_back(Gate::swap(arch.upper(k, j), arch.middle(k, j)));
    }
    a.push_back(std::move(swap_um));
    for (int l = k - 1; l >= 0; --l) a.push_back(parallel_croute(arch, l));
    a.push_back({Gate::not_gate(arch.root())});

    Moment swap_ud;
    for (int j = 0; j < (1 << k); ++j) {
        swap_ud.push_back(Gate::dist_swap(arch.upper(k, j), arch.middle(k, j), arch.lower(k, j)));
    }
    b.push_back(std::move(swap_ud));
    for (int l = k - 1; l >= 0; --l) b.push_back(parallel_croute(arch, l));
    b.push_back({Gate::swap(arch.root(), arch.output(1))});
    for (int i = 1; i <= k; ++i) b.push_back({Gate::swap(arch.output(i), arch.output(i + 1))});

    Stage s;
    const size_t lag = 2;
    s.steps.resize(std::max(a.size(), b.size() + lag));
    for (size_t i = 0; i < a.size(); ++i) {
        s.steps[i].insert(s.steps[i].end(), a[i].begin(), a[i].end());
    }
    for (size_t i = 0; i < b.size(); ++i) {
        s.steps[i + lag].insert(s.steps[i + lag].end(), b[i].begin(), b[i].end());
    }
    return s;
}

}  // namespace

Circuit synth_fanin3(const AmplitudeTree& tree, std::shared_ptr<const Architecture> arch) {
    check_arch3(*arch, tree.n());
    const int n = tree.n();
    Circuit c(arch);

    Moment pre_rotations;
    for (int l = 0; l < n; ++l) {
        for (int j = 0; j < (1 << l); ++j) {
            pre_rotations.push_back(Gate::rot1(arch->lower(l, j), tree.rotation(l, j).r));
        }
    }
    c.append_moment(std::move(pre_rotations));

    for (int l = 0; l < n; ++l) {
        Moment cnots;
        for (int j = 0; j < (1 << l); ++j) {
            cnots.push_back(Gate::cnot(arch->upper(l, j), arch->middle(l, j)));
        }
        c.append_moment(std::move(cnots));
        c.append_moment(parallel_croute(*arch, l));
    }

    Moment uncompute;
    for (int l = 0; l < n; ++l) {
        for (int j = 0; j < (1 << l); ++j) {
            Eigen::Matrix2cd rd = tree.rotation(l, j).r.adjoint();
            uncompute.push_back(Gate::open_crot(arch->middle(l, j), arch->lower(l, j), rd));
        }
    }
    c.append_moment(std::move(uncompute));
    return c;
}

PackedSchedule fanout3_stages(const Architecture& arch, const ScheduleOptions& opts) {
    std::vector<Stage> stages;
    stages.push_back(pointer_uncompute3(arch));
    for (int k = arch.n() - 1; k >= 0; --k) stages.push_back(fanout_stage3(arch, k));
    return pack_stages(stages, opts);
}

Circuit synth_fanout3(std::shared_ptr<const Architecture> arch, const ScheduleOptions& opts) {
    check_arch3(*arch, 0);
    return circuit_from_moments(arch, fanout3_stages(*arch, opts).moments);
}

Circuit synth_full3(const AmplitudeTree& tree, std::shared_ptr<const Architecture> arch,
                    const ScheduleOptions& opts) {
    return Circuit::concat(synth_fanin3(tree, arch), synth_fanout3(arch, opts));
}

StateWitness3 fanin_witness3(const AmplitudeTree& tree, const Architecture& arch, int l) {
    check_arch3(arch, tree.n());
    const int n = tree.n();
    if (l < 0 || l > n) throw std::invalid_argument("fanin witness: level out of range");
    StateWitness3 w;
    w.stage = "fanin-" + std::to_string(l);
    for (int j = 0; j < (1 << l); ++j) {
        ProductTerm t;
        t.amp = tree.value(l, j);
        if (std::abs(t.amp) < kPruneTolerance) continue;
        t.set_factor(arch.upper(l, j), Factor::one());
        for (int lp = 0; lp < l; ++lp) {
            const int prefix = j >> (l - lp);
            const bool bit = (j >> (l - lp - 1)) & 1;
            t.set_factor(arch.middle(lp, prefix), Factor::one());
            t.set_factor(arch.lower(lp, prefix), Factor::bit(bit));
        }
        // unconsumed routing qubits keep their rotation factor
        for (int lp = 0; lp < n; ++lp) {
            for (int jp = 0; jp < (1 << lp); ++jp) {
                if (lp < l && jp == (j >> (l - lp))) continue;
                const RotationParams rot = tree.rotation(lp, jp);
                t.set_factor(arch.lower(lp, jp), Factor::super(rot.c0, rot.c1));
            }
        }
        w.state.terms.push_back(std::move(t));
    }
    w.state.merge_and_prune(true);
    return w;
}

StateWitness3 fanout_witness3(const AmplitudeTree& tree, const Architecture& arch, int l) {
    check_arch3(arch, tree.n());
    const int n = tree.n();
    if (l < 0 || l > n) throw std::invalid_argument("fanout witness: level out of range");
    StateWitness3 w;
    w.stage = "fanout-" + std::to_string(l);
    for (long j = 0; j < (1L << n); ++j) {
        ProductTerm t;
        t.amp = tree.value(n, static_cast<int>(j));
        if (std::abs(t.amp) < kPruneTolerance) continue;
        for (int lp = 0; lp < l; ++lp) {
            const int prefix = static_cast<int>(j >> (n - lp));
            const bool bit = (j >> (n - lp - 1)) & 1;
            t.set_factor(arch.middle(lp, prefix), Factor::one());
            t.set_factor(arch.lower(lp, prefix), Factor::bit(bit));
        }
        for (int k = l + 1; k <= n; ++k) {
            t.set_factor(arch.output(k), Factor::bit((j >> (n - k)) & 1));
        }
        w.state.terms.push_back(std::move(t));
    }
    w.state.merge_and_prune(true);
    return w;
}

}  // namespace treeprep
