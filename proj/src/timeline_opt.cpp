#include "fabsched/timeline_opt.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace fabsched {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

} // namespace

// Hour-by-hour DP over the machine state: off, or on with the run age capped
// once it stops mattering (past both the warmup and the min-on threshold).
// Cost is one per on-hour; busy hours demand a warmed-up machine, switching
// off demands a run of min_on_h hours unless it ends at the horizon. This is
// exactly the switching rule set, so the cheapest state path is the cheapest
// legal timeline, including plans that idle between the hour-1 switch-on and
// the first block.
MachineTimeline optimize_timeline(const std::vector<Interval>& blocks,
                                  int machine_id,
                                  int startup_h,
                                  int min_on_h,
                                  int horizon) {
    MachineTimeline out;
    out.machine = machine_id;
    if (blocks.empty()) return out;

    const int grid_end = horizon + 1;
    for (size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        if (b.first < 1 || b.last < b.first || b.last > grid_end)
            throw std::invalid_argument("machine " + std::to_string(machine_id) +
                                        ": busy block outside the time grid");
        if (i > 0 && b.first <= blocks[i - 1].last)
            throw std::invalid_argument("machine " + std::to_string(machine_id) +
                                        ": busy blocks must be sorted and disjoint");
    }
    if (blocks.front().first - startup_h < 1)
        throw std::invalid_argument("machine " + std::to_string(machine_id) + ": busy at hour " +
                                    std::to_string(blocks.front().first) +
                                    " but startup takes " + std::to_string(startup_h) + " h");

    std::vector<char> busy(static_cast<size_t>(grid_end) + 1, 0);
    for (const auto& b : blocks)
        for (int h = b.first; h <= b.last; ++h) busy[static_cast<size_t>(h)] = 1;

    // state 0 = off, state s in 1..age_cap = on for s hours (capped)
    const int age_cap = std::max({min_on_h, startup_h + 1, 1});
    const int ns = age_cap + 1;
    std::vector<long long> dp(static_cast<size_t>(grid_end + 1) * static_cast<size_t>(ns), kInf);
    std::vector<int> from(dp.size(), -1);
    auto at = [&](int h, int s) { return static_cast<size_t>(h) * static_cast<size_t>(ns) + static_cast<size_t>(s); };
    auto ok = [&](int h, int s) {
        return !busy[static_cast<size_t>(h)] || s >= startup_h + 1;
    };

    // a machine that processes anything is switched on at hour 1
    if (ok(1, 1)) dp[at(1, 1)] = 1;
    for (int h = 1; h < grid_end; ++h) {
        for (int s = 0; s <= age_cap; ++s) {
            long long c = dp[at(h, s)];
            if (c >= kInf) continue;
            auto relax = [&](int s2, long long c2) {
                if (!ok(h + 1, s2)) return;
                size_t d = at(h + 1, s2);
                if (c2 < dp[d]) {
                    dp[d] = c2;
                    from[d] = s;
                }
            };
            if (s == 0) {
                relax(0, c);
                relax(1, c + 1);
            } else {
                relax(std::min(s + 1, age_cap), c + 1);
                // switching off ends the run at h: legal once the run is
                // min_on_h old, or for free at the horizon
                if (s >= min_on_h || h >= horizon) relax(0, c);
            }
        }
    }

    int end_s = -1;
    long long best = kInf;
    for (int s = 0; s <= age_cap; ++s)
        if (dp[at(grid_end, s)] < best) {
            best = dp[at(grid_end, s)];
            end_s = s;
        }
    if (end_s < 0)
        throw std::invalid_argument("machine " + std::to_string(machine_id) +
                                    ": no feasible switching timeline");

    std::vector<char> on(static_cast<size_t>(grid_end) + 1, 0);
    for (int h = grid_end, s = end_s; h >= 1; --h) {
        on[static_cast<size_t>(h)] = s > 0;
        s = from[at(h, s)];
    }
    for (int h = 1; h <= grid_end; ++h) {
        if (!on[static_cast<size_t>(h)]) continue;
        if (!out.runs.empty() && out.runs.back().off == h - 1) out.runs.back().off = h;
        else out.runs.push_back({h, h});
    }
    return out;
}

} // namespace fabsched
