#pragma once

#include "relaysurv/model.hpp"

namespace relaysurv {

// Mode I: monitor stays silent and combines both phases.
ModeOutcome passive_mode(const ChannelState& ch, const SystemParams& p);

// Minimum hop-1 jamming power that drags the relay's decode rate down to the
// monitor's own mode-II listening rate. Returns +infinity when the monitor
// cannot reach that target with any finite power (degenerate channels).
double threshold_noise_power(const ChannelState& ch, const SystemParams& p);

// Mode II: jam the relay during hop 1 with the cheapest sufficient power.
ModeOutcome optimize_mode2(const ChannelState& ch, const SystemParams& p);

// Lowest destination rate reachable in mode III, together with the control
// that attains it. Q2 takes whatever budget the forwarding term leaves.
struct HybridMinResult {
    double alpha = 0.0;
    double q2 = 0.0;
    double rate = 0.0;
};

HybridMinResult min_bob_rate_hybrid(const ChannelState& ch, const SystemParams& p);

// Cheapest (alpha, q2) that pins the hybrid destination rate exactly onto
// `target` (ties broken toward smaller alpha). Throws std::domain_error when
// the target lies outside the reachable rate interval.
HybridJamDecision solve_hybrid_target(const ChannelState& ch, const SystemParams& p,
                                      double target);

// Mode III: forward-and-jam against the destination during hop 2.
ModeOutcome optimize_mode3(const ChannelState& ch, const SystemParams& p);

// Rate of the aggressive mode-III arm that spends the whole budget on
// forwarding (q2 = 0): past the cancellation point the forwarded copy starts
// to reinforce the destination instead, boosting the link toward the
// monitor's listening rate. The three-case policy never uses this arm; the
// verification oracle needs it to describe the full control region.
double amplification_rate(const ChannelState& ch, const SystemParams& p);

struct SelectionResult {
    ModeOutcome best;       // highest eavesdropping rate, ties to lowest mode index
    ModeOutcome per_mode[3];
};

SelectionResult select_mode(const ChannelState& ch, const SystemParams& p);

} // namespace relaysurv
