#pragma once

// Minimum-on-time switching plan for one machine given its busy blocks.
// Decouples from the assignment search: any schedule whose op starts respect
// start >= 1 + startup_h admits a feasible timeline, and the cheapest one is
// chosen per machine independently.

#include <vector>

#include "fabsched/model.hpp"
#include "fabsched/verify.hpp"

namespace fabsched {

// blocks: disjoint sorted busy intervals (see machine_busy_blocks); every
// block's first hour is an operation start, so a covering run must switch on
// at least startup_h hours before it. A machine with work is switched on at
// t=1 (idle machines stay off entirely). A run may only end in a switch-off
// when it is at least min_on_h long; a run reaching the horizon needs no
// switch-off and has no minimum. Throws std::invalid_argument when the first
// block starts before 1 + startup_h or a block breaches the grid.
MachineTimeline optimize_timeline(const std::vector<Interval>& blocks,
                                  int machine_id,
                                  int startup_h,
                                  int min_on_h,
                                  int horizon);

} // namespace fabsched
