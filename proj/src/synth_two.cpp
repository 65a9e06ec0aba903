#include "treeprep/synth_two.hpp"

#include <stdexcept>

namespace treeprep {

namespace {

void check_arch2(const Architecture& arch, int n) {
    if (arch.variant() != Protocol::TwoPerNode) {
        throw std::invalid_argument("expected the 2-per-node architecture");
    }
    if (n != 0 && arch.n() != n) {
        throw std::invalid_argument("tree depth does not match architecture depth");
    }
}

Moment parallel_route(const Architecture& arch, int l) {
    Moment m;
    for (int j = 0; j < (1 << l); ++j) {
        m.push_back(Gate::route(arch.lower(l, j), arch.upper(l, j), arch.upper(l + 1, 2 * j),
                                arch.upper(l + 1, 2 * j + 1)));
    }
    return m;
}

// Stage k extracts bit j_{k+1}: swap U/D at layer k, route the bit up to the
// root, then walk it along the output line into O[k+1].
Stage fanout_stage2(const Architecture& arch, int k) {
    Stage s;
    Moment swaps;
    for (int j = 0; j < (1 << k); ++j) {
        swaps.push_back(Gate::swap(arch.upper(k, j), arch.lower(k, j)));
    }
    s.steps.push_back(std::move(swaps));
    for (int l = k - 1; l >= 0; --l) s.steps.push_back(parallel_route(arch, l));
    s.steps.push_back({Gate::swap(arch.root(), arch.output(1))});
    for (int i = 1; i <= k; ++i) {
        s.steps.push_back({Gate::swap(arch.output(i), arch.output(i + 1))});
    }
    return s;
}

Stage pointer_uncompute2(const Architecture& arch) {
    Stage s;
    for (int l = arch.n() - 1; l >= 0; --l) s.steps.push_back(parallel_route(arch, l));
    s.steps.push_back({Gate::not_gate(arch.root())});
    return s;
}

}  // namespace

Circuit synth_fanin2(const AmplitudeTree& tree, std::shared_ptr<const Architecture> arch) {
    check_arch2(*arch, tree.n());
    Circuit c(arch);
    for (int l = 0; l < tree.n(); ++l) {
        Moment rotations;
        for (int j = 0; j < (1 << l); ++j) {
            rotations.push_back(
                Gate::crot(arch->upper(l, j), arch->lower(l, j), tree.rotation(l, j).r));
        }
        c.append_moment(std::move(rotations));
        c.append_moment(parallel_route(*arch, l));
    }
    return c;
}

PackedSchedule fanout2_stages(const Architecture& arch, const ScheduleOptions& opts) {
    std::vector<Stage> stages;
    stages.push_back(pointer_uncompute2(arch));
    for (int k = arch.n() - 1; k >= 0; --k) stages.push_back(fanout_stage2(arch, k));
    return pack_stages(stages, opts);
}

Circuit synth_fanout2(std::shared_ptr<const Architecture> arch, const ScheduleOptions& opts) {
    check_arch2(*arch, 0);
    return circuit_from_moments(arch, fanout2_stages(*arch, opts).moments);
}

Circuit synth_full2(const AmplitudeTree& tree, std::shared_ptr<const Architecture> arch,
                    const ScheduleOptions& opts) {
    return Circuit::concat(synth_fanin2(tree, arch), synth_fanout2(arch, opts));
}

StateWitness2 fanin_witness2(const AmplitudeTree& tree, const Architecture& arch, int l) {
    check_arch2(arch, tree.n());
    if (l < 0 || l > tree.n()) throw std::invalid_argument("fanin witness: level out of range");
    StateWitness2 w;
    w.stage = "fanin-" + std::to_string(l);
    for (int j = 0; j < (1 << l); ++j) {
        ProductTerm t;
        t.amp = tree.value(l, j);
        if (std::abs(t.amp) < kPruneTolerance) continue;
        t.set_factor(arch.upper(l, j), Factor::one());
        for (int lp = 0; lp < l; ++lp) {
            const int prefix = j >> (l - lp);
            const bool bit = (j >> (l - lp - 1)) & 1;
            t.set_factor(arch.lower(lp, prefix), Factor::bit(bit));
        }
        w.state.terms.push_back(std::move(t));
    }
    w.state.merge_and_prune(true);
    return w;
}

StateWitness2 fanout_witness2(const AmplitudeTree& tree, const Architecture& arch, int l) {
    check_arch2(arch, tree.n());
    const int n = tree.n();
    if (l < 0 || l > n) throw std::invalid_argument("fanout witness: level out of range");
    StateWitness2 w;
    w.stage = "fanout-" + std::to_string(l);
    for (long j = 0; j < (1L << n); ++j) {
        ProductTerm t;
        t.amp = tree.value(n, static_cast<int>(j));
        if (std::abs(t.amp) < kPruneTolerance) continue;
        for (int lp = 0; lp < l; ++lp) {
            const int prefix = static_cast<int>(j >> (n - lp));
            const bool bit = (j >> (n - lp - 1)) & 1;
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
