#include "treeprep/schedule.hpp"

#include <unordered_set>

namespace treeprep {

namespace {

bool step_fits(const std::vector<Moment>& timeline, const Moment& step, size_t at) {
    if (at >= timeline.size()) return true;
    std::unordered_set<int> used;
    for (const Gate& g : timeline[at]) used.insert(g.qubits.begin(), g.qubits.end());
    for (const Gate& g : step) {
        for (int q : g.qubits) {
            if (used.count(q)) return false;
        }
    }
    return true;
}

bool stage_fits(const std::vector<Moment>& timeline, const Stage& stage, size_t start) {
    for (size_t k = 0; k < stage.steps.size(); ++k) {
        if (!step_fits(timeline, stage.steps[k], start + k)) return false;
    }
    return true;
}

void place(std::vector<Moment>& timeline, const Stage& stage, size_t start) {
    if (timeline.size() < start + stage.steps.size()) timeline.resize(start + stage.steps.size());
    for (size_t k = 0; k < stage.steps.size(); ++k) {
        Moment& slot = timeline[start + k];
        slot.insert(slot.end(), stage.steps[k].begin(), stage.steps[k].end());
    }
}

}  // namespace

ScheduleOptions default_schedule(Protocol protocol) {
    ScheduleOptions opts;
    opts.stagger = protocol == Protocol::TwoPerNode ? 3 : 6;
    return opts;
}

PackedSchedule pack_stages(const std::vector<Stage>& stages, const ScheduleOptions& opts) {
    PackedSchedule out;
    size_t preferred = 0;
    for (const Stage& stage : stages) {
        size_t start = opts.sequential ? out.moments.size() : preferred;
        while (!stage_fits(out.moments, stage, start)) ++start;
        place(out.moments, stage, start);
        out.stage_ends.push_back(static_cast<int>(start + stage.steps.size()));
        preferred = start + static_cast<size_t>(opts.stagger);
    }
    return out;
}

Circuit circuit_from_moments(std::shared_ptr<const Architecture> arch,
                             const std::vector<Moment>& moments) {
    Circuit c(std::move(arch));
    for (const Moment& m : moments) c.append_moment(m);
    return c;
}

}  // namespace treeprep
