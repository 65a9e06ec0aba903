#pragma once

#include <string>

#include "treeprep/amplitude_tree.hpp"
#include "treeprep/schedule.hpp"
#include "treeprep/simulator.hpp"

namespace treeprep {

struct StateWitness3 {
    std::string stage;
    SparseState state;
};

// Pre-rotation fanin: one moment rotating every routing qubit D[l,j] by
// r_{l,j}; for l = 0..n-1 a parallel CNOT moment (U -> M) and a parallel
// controlled-routing moment (m = M[l,j], d = D[l,j]); finally one moment of
// open-controlled inverse rotations that uncompute the unconsumed routing
// qubits. Depth 2n + 2.
Circuit synth_fanin3(const AmplitudeTree& tree, std::shared_ptr<const Architecture> arch);

// Pipelined fanout. Pointer uncompute first (controlled-routing chain from
// level n-1 to 0, then NOT at the root). Stage k = n-1..0 then runs two
// interleaved sub-chains at layer k: swap U/M and route the middle-marker up
// to the root where a NOT clears it; two steps later, swap U/D across the
// node (DistSwap), route the bit up and walk it into O[k+1]. Default
// stagger 6, packer-verified.
Circuit synth_fanout3(std::shared_ptr<const Architecture> arch,
                      const ScheduleOptions& opts = {.stagger = 6});

PackedSchedule fanout3_stages(const Architecture& arch, const ScheduleOptions& opts);

Circuit synth_full3(const AmplitudeTree& tree, std::shared_ptr<const Architecture> arch,
                    const ScheduleOptions& opts = {.stagger = 6});

// State after fanin step l (after 1 + 2l moments): activated set = pointer
// U[l,j], middle markers along the path, consumed D ancestors holding bits;
// every unconsumed routing qubit still carries its rotation factor.
StateWitness3 fanin_witness3(const AmplitudeTree& tree, const Architecture& arch, int l);

// State after fanout stage l: middle markers and D bits below layer l remain,
// outputs l+1..n filled. l = n is the post-pointer-uncompute state; l = 0 the
// final state.
StateWitness3 fanout_witness3(const AmplitudeTree& tree, const Architecture& arch, int l);

}  // namespace treeprep
