#pragma once

#include <vector>

#include "treeprep/circuit.hpp"

namespace treeprep {

struct ScheduleOptions {
    int stagger = 3;          // idle steps between consecutive stage starts
    bool sequential = false;  // place stages strictly back to back
};

// Paper defaults: stagger 3 for the 2-per-node fanout, 6 for 3-per-node.
ScheduleOptions default_schedule(Protocol protocol);

// One fanout stage: a fixed internal step sequence that the scheduler may
// overlay with other stages.
struct Stage {
    std::vector<Moment> steps;
};

struct PackedSchedule {
    std::vector<Moment> moments;
    std::vector<int> stage_ends;  // first moment index after each stage
};

// Packs stages into a shared timeline. Stage s prefers to start `stagger`
// moments after stage s-1 started; if any step would collide with already
// placed gates the start is pushed back until it fits, so the packer always
// terminates (the far end of the timeline is a sequential fallback). Idle
// moments materialize as empty moment slots.
PackedSchedule pack_stages(const std::vector<Stage>& stages, const ScheduleOptions& opts);

// Builds a circuit from packed moments with full append-time validation.
Circuit circuit_from_moments(std::shared_ptr<const Architecture> arch,
                             const std::vector<Moment>& moments);

}  // namespace treeprep
