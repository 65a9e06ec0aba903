#pragma once

#include <string>

#include "treeprep/amplitude_tree.hpp"
#include "treeprep/schedule.hpp"
#include "treeprep/simulator.hpp"

namespace treeprep {

// Stage label plus the exact expected state, for comparison against the
// simulator at stage boundaries.
struct StateWitness2 {
    std::string stage;
    SparseState state;
};

// Fanin: for l = 0..n-1 a parallel controlled-rotation moment (U[l,j]
// controls r_{l,j} on D[l,j]) followed by a parallel routing moment
// (rt = D[l,j]). Depth 2n.
Circuit synth_fanin2(const AmplitudeTree& tree, std::shared_ptr<const Architecture> arch);

// Pipelined fanout. Stage order: pointer uncompute (routing chain from level
// n-1 to 0 plus NOT at the root), then for k = n-1..0 the stage that swaps
// the bit out of D[k], routes it to the root and walks it to O[k+1]. Default
// stagger 3; the packer proves disjointness and delays stages on conflict.
Circuit synth_fanout2(std::shared_ptr<const Architecture> arch, const ScheduleOptions& opts = {});

// Fanout stages packed sequentially, with per-stage boundary moments for
// witness checks.
PackedSchedule fanout2_stages(const Architecture& arch, const ScheduleOptions& opts);

Circuit synth_full2(const AmplitudeTree& tree, std::shared_ptr<const Architecture> arch,
                    const ScheduleOptions& opts = {});

// State after fanin step l (after 2l moments): sum_j psi_{l,j} |B_{l,j}>,
// pointer at U[l,j], D-ancestor at layer l' holding bit j_{l'+1}.
StateWitness2 fanin_witness2(const AmplitudeTree& tree, const Architecture& arch, int l);

// State after fanout stage l: QRAM bits above layer l cleared, output
// positions l+1..n holding j_{l+1}..j_n. l = n is the post-pointer-uncompute
// state; l = 0 the final state.
StateWitness2 fanout_witness2(const AmplitudeTree& tree, const Architecture& arch, int l);

}  // namespace treeprep
