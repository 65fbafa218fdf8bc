#include "relaysurv/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace relaysurv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Amplitude of the relayed copy at the destination and of the monitor's
// forwarded copy per unit alpha. Shared by the closed forms below so their
// arithmetic matches rate_hop2_hybrid() bit for bit.
double relay_amp(const ChannelState& ch, const SystemParams& p) {
    return std::sqrt(p.power_relay) * std::abs(ch.h_rb);
}

double forward_amp_unit(const ChannelState& ch, const SystemParams& p) {
    return std::sqrt(p.power_alice) * std::abs(ch.h_am) * std::abs(ch.h_mb);
}

// Transmit power the monitor burns per unit alpha^2 when forwarding: it
// re-amplifies both the overheard signal and its own receiver noise.
double forward_power_unit(const ChannelState& ch, const SystemParams& p) {
    return p.power_alice * sq_mag(ch.h_am) + p.noise_power;
}

// Real roots of A x^2 + B x + C = 0, degenerating gracefully to the linear
// case. Appends onto `out`.
void quad_roots(double A, double B, double C, std::vector<double>& out) {
    if (A == 0.0) {
        if (B != 0.0) out.push_back(-C / B);
        return;
    }
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return;
    const double root = std::sqrt(disc);
    // Classic cancellation-free form.
    const double q = -0.5 * (B + std::copysign(root, B));
    out.push_back(q / A);
    if (q != 0.0) out.push_back(C / q);
}

} // namespace

ModeOutcome passive_mode(const ChannelState& ch, const SystemParams& p) {
    const double comm = end_to_end_rate(rate_hop1(ch, p), rate_hop2_plain(ch, p));
    const double listen = monitor_rate_mode1(ch, p);

    ModeOutcome out;
    out.mode = Mode::passive;
    out.comm_rate_under_jamming = comm;
    out.success = listen >= comm;
    out.eavesdropping_rate = eavesdrop_gate(listen, comm);
    out.decision = std::monostate{};
    return out;
}

double threshold_noise_power(const ChannelState& ch, const SystemParams& p) {
    const double relay_signal = sq_mag(ch.h_ar) * p.power_alice;
    const double listen_signal = sq_mag(ch.h_rm) * p.power_relay;
    const double num = (relay_signal - listen_signal) * p.noise_power;
    if (num <= 0.0) return 0.0; // relay already no better off than the monitor
    const double den = sq_mag(ch.h_mr) * sq_mag(ch.h_rm) * p.power_relay;
    if (den <= 0.0) return kInf; // jamming cannot move the relay, or nothing to listen to
    return num / den;
}

ModeOutcome optimize_mode2(const ChannelState& ch, const SystemParams& p) {
    const double r_relay = rate_hop1(ch, p);
    const double r_dest = rate_hop2_plain(ch, p);
    const double comm0 = end_to_end_rate(r_relay, r_dest);
    const double listen = monitor_rate_mode2(ch, p);

    ModeOutcome out;
    out.mode = Mode::noise_jam;

    if (listen >= comm0) {
        // Already decodable without interfering.
        out.decision = NoiseJamDecision{0.0};
        out.comm_rate_under_jamming = comm0;
        out.success = true;
        out.eavesdropping_rate = comm0;
        return out;
    }

    const double q1 = threshold_noise_power(ch, p);
    if (q1 <= p.jam_budget) {
        // Drag the relay's decode rate exactly onto the listening rate. The
        // jammed end-to-end rate equals `listen` by construction (it is below
        // r_dest because we are past the branch above), so we report it in
        // closed form rather than re-deriving it through the float quotient.
        out.decision = NoiseJamDecision{q1};
        out.comm_rate_under_jamming = listen;
        out.success = true;
        out.eavesdropping_rate = listen;
        return out;
    }

    // Budget too small to close the gap: jamming would only spend power to
    // shrink a rate the monitor still cannot decode.
    out.decision = NoiseJamDecision{0.0};
    out.comm_rate_under_jamming = comm0;
    out.success = false;
    out.eavesdropping_rate = 0.0;
    return out;
}

HybridMinResult min_bob_rate_hybrid(const ChannelState& ch, const SystemParams& p) {
    const double a = relay_amp(ch, p);
    const double b = forward_amp_unit(ch, p);
    const double g_mb = sq_mag(ch.h_mb);
    const double fpu = forward_power_unit(ch, p);
    const double alpha_budget = std::sqrt(p.jam_budget / fpu);

    // With the budget spent in full, the destination's SINR as a function of
    // alpha is (a - b*alpha)^2 / (c - b^2*alpha^2) with c as below. Its
    // stationary points are the cancellation gain a/b and the balance gain
    // c/(a*b); whichever of those (or the budget cap) comes first is the
    // minimiser, because the SINR falls until that point and rises after it.
    // When a^2 > c the cancellation gain sits beyond the budget-feasible
    // domain and the balance gain is the one that matters.
    const double c = p.noise_power + p.jam_budget * g_mb;

    double alpha = alpha_budget;
    if (b > 0.0) {
        alpha = std::min(alpha, a / b);
        if (a > 0.0) alpha = std::min(alpha, c / (a * b));
    }

    HybridMinResult res;
    res.alpha = alpha;
    res.q2 = std::max(0.0, p.jam_budget - fpu * alpha * alpha);
    res.rate = rate_hop2_hybrid(ch, p, res.alpha, res.q2);
    return res;
}

HybridJamDecision solve_hybrid_target(const ChannelState& ch, const SystemParams& p,
                                      double target) {
    const double r_dest_plain = rate_hop2_plain(ch, p);
    if (target > r_dest_plain || target < 0.0 || !std::isfinite(target))
        throw std::domain_error("hybrid target rate outside the reachable interval");
    if (target == r_dest_plain)
        return {0.0, 0.0}; // nothing to do, and (0,0) reproduces the plain rate exactly

    const double a = relay_amp(ch, p);
    const double b = forward_amp_unit(ch, p);
    const double g_mb = sq_mag(ch.h_mb);
    const double fpu = forward_power_unit(ch, p);
    const double alpha_budget = std::sqrt(p.jam_budget / fpu);
    const double gamma_t = std::exp2(2.0 * target) - 1.0;

    constexpr double kResidualTol = 1e-9;

    if (gamma_t == 0.0) {
        // Silencing the destination entirely needs exact amplitude
        // cancellation; jamming on top of a dead link is wasted power, so the
        // cheapest control is (a/b, 0).
        if (b <= 0.0)
            throw std::domain_error("hybrid target rate outside the reachable interval");
        const double alpha = a / b;
        if (alpha > alpha_budget * (1.0 + 1e-12))
            throw std::domain_error("hybrid target rate outside the reachable interval");
        return {std::min(alpha, alpha_budget), 0.0};
    }

    if (b == 0.0) {
        // No usable forwarded copy: alpha only recycles receiver noise, which
        // is never cheaper per delivered interference than direct jamming.
        if (g_mb <= 0.0)
            throw std::domain_error("hybrid target rate outside the reachable interval");
        const double q2 = (a * a / gamma_t - p.noise_power) / g_mb;
        if (q2 < 0.0 || q2 > p.jam_budget * (1.0 + 1e-12))
            throw std::domain_error("hybrid target rate outside the reachable interval");
        return {0.0, std::min(q2, p.jam_budget)};
    }

    // General case: for each alpha the jamming power that lands exactly on
    // the target is quadratic in alpha, and so is the total spend
    // fpu*alpha^2 + q2(alpha). The total is strictly convex here (both hop-1
    // pickup and the monitor-destination link are live), so the optimum is
    // either its vertex or a point where a constraint becomes active:
    // q2 = 0, the budget cap, or an endpoint of [0, alpha_budget].
    const double g_am = sq_mag(ch.h_am);
    const double A_total = p.power_alice * g_am * (1.0 + 1.0 / gamma_t);
    const double B_total = -2.0 * a * b / (gamma_t * g_mb);
    const double C_total = (a * a / gamma_t - p.noise_power) / g_mb;
    const double A_jam = A_total - fpu; // q2(alpha) shares B and C with the total

    const auto q2_of_alpha = [&](double alpha) {
        return (A_jam * alpha + B_total) * alpha + C_total;
    };

    const HybridMinResult floor = min_bob_rate_hybrid(ch, p);

    struct Cand {
        double alpha;
        double q2;
    };
    std::vector<Cand> cands;
    const auto push_alpha = [&](double alpha) {
        if (!std::isfinite(alpha)) return;
        alpha = std::clamp(alpha, 0.0, alpha_budget);
        const double cap = std::max(0.0, p.jam_budget - fpu * alpha * alpha);
        const double q2 = std::clamp(q2_of_alpha(alpha), 0.0, cap);
        cands.push_back({alpha, q2});
    };

    push_alpha(0.0);
    push_alpha(alpha_budget);
    push_alpha(-B_total / (2.0 * A_total)); // vertex of the total spend
    std::vector<double> roots;
    quad_roots(A_total, B_total, C_total - p.jam_budget, roots); // budget cap active
    quad_roots(A_jam, B_total, C_total, roots);                  // q2 = 0 active
    for (double r : roots) push_alpha(r);
    push_alpha(floor.alpha);
    cands.push_back({floor.alpha, floor.q2}); // exact pair for target == floor rate

    const auto pick_best = [&](const std::vector<Cand>& pool) -> const Cand* {
        const Cand* best = nullptr;
        double best_power = kInf;
        for (const Cand& cd : pool) {
            if (std::abs(rate_hop2_hybrid(ch, p, cd.alpha, cd.q2) - target) > kResidualTol)
                continue;
            const double power = fpu * cd.alpha * cd.alpha + cd.q2;
            if (best == nullptr || power < best_power ||
                (power == best_power && cd.alpha < best->alpha)) {
                best = &cd;
                best_power = power;
            }
        }
        return best;
    };

    if (const Cand* best = pick_best(cands))
        return {best->alpha, best->q2};

    // Dense fallback, in case float noise pushed every analytic candidate off
    // the residual window. In practice this never triggers.
    std::vector<Cand> sweep;
    constexpr int kSweep = 10001;
    sweep.reserve(kSweep);
    for (int i = 0; i < kSweep; ++i) {
        const double alpha = alpha_budget * static_cast<double>(i) / (kSweep - 1);
        const double cap = std::max(0.0, p.jam_budget - fpu * alpha * alpha);
        sweep.push_back({alpha, std::clamp(q2_of_alpha(alpha), 0.0, cap)});
    }
    if (const Cand* best = pick_best(sweep))
        return {best->alpha, best->q2};

    throw std::domain_error("hybrid target rate outside the reachable interval");
}

ModeOutcome optimize_mode3(const ChannelState& ch, const SystemParams& p) {
    const double r_relay = rate_hop1(ch, p);
    const double r_dest = rate_hop2_plain(ch, p);
    const double comm0 = end_to_end_rate(r_relay, r_dest);
    const double listen = monitor_rate_mode3(ch, p);

    ModeOutcome out;
    out.mode = Mode::hybrid_jam;

    if (listen >= comm0) {
        // Decodable as-is; interfering with hop 2 could only shrink the prize.
        out.decision = HybridJamDecision{0.0, 0.0};
        out.comm_rate_under_jamming = comm0;
        out.success = true;
        out.eavesdropping_rate = comm0;
        return out;
    }

    const HybridMinResult floor = min_bob_rate_hybrid(ch, p);
    if (floor.rate <= listen) {
        // The destination's rate can be pushed below what the monitor hears
        // from the source, so pin it exactly there: the gate then passes and
        // any further suppression would only reduce the decoded rate.
        out.decision = solve_hybrid_target(ch, p, listen);
        out.comm_rate_under_jamming = listen;
        out.success = true;
        out.eavesdropping_rate = listen;
        return out;
    }

    // Even full-budget suppression leaves the destination above the
    // monitor's listening rate: the gate fails across the control region.
    out.decision = HybridJamDecision{0.0, 0.0};
    out.comm_rate_under_jamming = comm0;
    out.success = false;
    out.eavesdropping_rate = 0.0;
    return out;
}

double amplification_rate(const ChannelState& ch, const SystemParams& p) {
    const double fpu = forward_power_unit(ch, p);
    const double alpha_budget = std::sqrt(p.jam_budget / fpu);
    const double r_relay = rate_hop1(ch, p);
    const double boosted = rate_hop2_hybrid(ch, p, alpha_budget, 0.0);
    const double comm = end_to_end_rate(r_relay, boosted);
    return eavesdrop_gate(monitor_rate_mode3(ch, p), comm);
}

SelectionResult select_mode(const ChannelState& ch, const SystemParams& p) {
    SelectionResult res;
    res.per_mode[0] = passive_mode(ch, p);
    res.per_mode[1] = optimize_mode2(ch, p);
    res.per_mode[2] = optimize_mode3(ch, p);
    res.best = res.per_mode[0];
    for (int i = 1; i < 3; ++i) {
        // Strict > keeps the lowest mode index on ties.
        if (res.per_mode[i].eavesdropping_rate > res.best.eavesdropping_rate)
            res.best = res.per_mode[i];
    }
    return res;
}

} // namespace relaysurv
