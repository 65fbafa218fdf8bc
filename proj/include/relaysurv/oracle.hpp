#pragma once

#include "relaysurv/model.hpp"

#include <span>

namespace relaysurv {

// Grid densities for the exhaustive searches. The defaults are what the
// standalone checks use; the randomized verification suite passes smaller
// values to keep its runtime in budget.
struct GridSpec {
    int points_1d = 100001; // hop-1 jamming power axis
    int points_2d = 1001;   // each axis of the (alpha, q2) search
};

struct Mode2Brute {
    double q1 = 0.0;
    double rate = 0.0;
};

// Exhaustive mode-II search: evaluates the gated objective on a power grid
// over [0, budget] plus any caller-supplied extra candidates (closed-form
// thresholds and their nudges), scanning in ascending power order and
// keeping the smallest maximizer.
Mode2Brute brute_force_mode2(const ChannelState& ch, const SystemParams& p,
                             const GridSpec& grid = {},
                             std::span<const double> extra_q1 = {});

struct AlphaQ2 {
    double alpha = 0.0;
    double q2 = 0.0;
};

struct Mode3Brute {
    double alpha = 0.0;
    double q2 = 0.0;
    double rate = 0.0;
};

// Exhaustive mode-III search over the full control region: alpha grid over
// [0, alpha_budget], and for each alpha a q2 grid over the remaining budget,
// plus extra candidate pairs. Maximizes the gated objective.
Mode3Brute brute_force_mode3(const ChannelState& ch, const SystemParams& p,
                             const GridSpec& grid = {},
                             std::span<const AlphaQ2> extra = {});

// Same search region, but minimizing the destination's hop-2 rate instead of
// maximizing the gated objective. Checks the hop-2 suppression closed form.
Mode3Brute brute_force_min_bob(const ChannelState& ch, const SystemParams& p,
                               const GridSpec& grid = {},
                               std::span<const AlphaQ2> extra = {});

} // namespace relaysurv
