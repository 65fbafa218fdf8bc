#include "relaysurv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace relaysurv {

namespace {

double grid_point(double lo, double hi, int i, int n) {
    if (n <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

} // namespace

Mode2Brute brute_force_mode2(const ChannelState& ch, const SystemParams& p,
                             const GridSpec& grid, std::span<const double> extra_q1) {
    const double r_dest = rate_hop2_plain(ch, p);
    const double listen = monitor_rate_mode2(ch, p);

    std::vector<double> qs;
    qs.reserve(static_cast<std::size_t>(grid.points_1d) + extra_q1.size());
    for (int i = 0; i < grid.points_1d; ++i)
        qs.push_back(grid_point(0.0, p.jam_budget, i, grid.points_1d));
    for (double q : extra_q1) {
        if (!std::isfinite(q)) continue;
        qs.push_back(std::clamp(q, 0.0, p.jam_budget));
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());

    // Ascending scan with a strict improvement test: on plateaus the oracle
    // reports the cheapest power that attains the optimum.
    Mode2Brute best{0.0, -1.0};
    for (double q : qs) {
        const double comm = end_to_end_rate(rate_hop1(ch, p, q), r_dest);
        const double gated = eavesdrop_gate(listen, comm);
        if (gated > best.rate) best = {q, gated};
    }
    return best;
}

namespace {

template <typename Objective, typename Better>
Mode3Brute scan_control_region(const ChannelState& ch, const SystemParams& p,
                               const GridSpec& grid, std::span<const AlphaQ2> extra,
                               Objective objective, Better better, double init) {
    const double fpu = p.power_alice * sq_mag(ch.h_am) + p.noise_power;
    const double alpha_budget = std::sqrt(p.jam_budget / fpu);

    Mode3Brute best{0.0, 0.0, init};
    bool have = false;
    const auto consider = [&](double alpha, double q2) {
        const double value = objective(alpha, q2);
        if (!have || better(value, best.rate)) {
            best = {alpha, q2, value};
            have = true;
        }
    };

    for (int i = 0; i < grid.points_2d; ++i) {
        const double alpha = grid_point(0.0, alpha_budget, i, grid.points_2d);
        const double cap = std::max(0.0, p.jam_budget - fpu * alpha * alpha);
        for (int j = 0; j < grid.points_2d; ++j)
            consider(alpha, grid_point(0.0, cap, j, grid.points_2d));
    }
    for (const AlphaQ2& e : extra) {
        if (!std::isfinite(e.alpha) || !std::isfinite(e.q2)) continue;
        const double alpha = std::clamp(e.alpha, 0.0, alpha_budget);
        const double cap = std::max(0.0, p.jam_budget - fpu * alpha * alpha);
        consider(alpha, std::clamp(e.q2, 0.0, cap));
    }
    return best;
}

} // namespace

Mode3Brute brute_force_mode3(const ChannelState& ch, const SystemParams& p,
                             const GridSpec& grid, std::span<const AlphaQ2> extra) {
    const double r_relay = rate_hop1(ch, p);
    const double listen = monitor_rate_mode3(ch, p);
    const auto gated = [&](double alpha, double q2) {
        const double comm = end_to_end_rate(r_relay, rate_hop2_hybrid(ch, p, alpha, q2));
        return eavesdrop_gate(listen, comm);
    };
    return scan_control_region(
        ch, p, grid, extra, gated,
        [](double v, double b) { return v > b; }, -1.0);
}

Mode3Brute brute_force_min_bob(const ChannelState& ch, const SystemParams& p,
                               const GridSpec& grid, std::span<const AlphaQ2> extra) {
    const auto dest_rate = [&](double alpha, double q2) {
        return rate_hop2_hybrid(ch, p, alpha, q2);
    };
    return scan_control_region(
        ch, p, grid, extra, dest_rate,
        [](double v, double b) { return v < b; },
        std::numeric_limits<double>::infinity());
}

} // namespace relaysurv
