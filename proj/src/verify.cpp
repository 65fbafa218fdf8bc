#include "relaysurv/verify.hpp"

#include "relaysurv/geometry.hpp"
#include "relaysurv/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace relaysurv {

namespace {

// Seed lanes keep the instance streams of the individual checks independent
// of each other's draw counts.
constexpr std::uint64_t kLaneNoiseJam = 1;
constexpr std::uint64_t kLaneBobMin = 2;
constexpr std::uint64_t kLaneHybrid = 3;
constexpr std::uint64_t kLaneInvariants = 4;

std::string format_failure(std::uint64_t seed, const std::string& what) {
    std::ostringstream os;
    os << "instance seed " << seed << ": " << what;
    return os.str();
}

void record_failure(CheckResult& res, std::uint64_t seed, const std::string& what) {
    ++res.failures;
    if (res.detail.empty()) res.detail = format_failure(seed, what);
}

} // namespace

RandomInstance random_instance(std::uint64_t seed) {
    GaussianStream gs(seed);
    const auto unif = [&](double lo, double hi) {
        return lo + (hi - lo) * gs.uniform01();
    };
    // Log-uniform magnitudes spanning seven decades so every branch of the
    // closed forms comes up: tiny and huge SNRs, budgets from useless to
    // lavish, and both orderings of every rate comparison.
    const auto coeff = [&]() {
        const double mag = std::pow(10.0, 0.5 * unif(-12.0, -5.0));
        const double ang = 2.0 * M_PI * gs.uniform01();
        return std::complex<double>(mag * std::cos(ang), mag * std::sin(ang));
    };
    RandomInstance inst;
    inst.ch.h_ar = coeff();
    inst.ch.h_rb = coeff();
    inst.ch.h_am = coeff();
    inst.ch.h_mr = coeff();
    inst.ch.h_rm = coeff();
    inst.ch.h_mb = coeff();
    inst.params.power_alice = std::pow(10.0, unif(2.0, 5.0));
    inst.params.power_relay = std::pow(10.0, unif(2.0, 5.0));
    inst.params.noise_power = std::pow(10.0, unif(-9.0, -7.0));
    inst.params.jam_budget = std::pow(10.0, unif(0.0, 6.0));
    return inst;
}

namespace {

CheckResult check_noise_jam(const VerifyOptions& opt) {
    CheckResult res;
    res.name = "hop-1 jamming closed form vs exhaustive search";
    const GridSpec grid{opt.grid_1d, opt.grid_2d};

    for (int i = 0; i < opt.instances; ++i) {
        const std::uint64_t seed = substream_seed(opt.seed, kLaneNoiseJam, i);
        const RandomInstance inst = random_instance(seed);
        ++res.checked;

        const ModeOutcome closed = optimize_mode2(inst.ch, inst.params);
        const double q1t = threshold_noise_power(inst.ch, inst.params);
        std::vector<double> extras;
        if (std::isfinite(q1t)) {
            // The gated objective jumps exactly at the threshold; the nudged
            // copy keeps the scan robust to the last-ulp side of the jump.
            extras = {q1t, q1t * (1.0 + 1e-9)};
        }
        const Mode2Brute oracle = brute_force_mode2(inst.ch, inst.params, grid, extras);

        const double err = std::abs(closed.eavesdropping_rate - oracle.rate);
        res.worst_error = std::max(res.worst_error, err);
        if (err > opt.rate_tol) {
            record_failure(res, seed, "rate mismatch " + std::to_string(err));
            continue;
        }
        if (closed.eavesdropping_rate > 0.0 && oracle.rate > 0.0) {
            const double step = inst.params.jam_budget / (opt.grid_1d - 1);
            const double q1c = std::get<NoiseJamDecision>(closed.decision).jam_power;
            if (std::abs(q1c - oracle.q1) > step)
                record_failure(res, seed, "jam power off the oracle argmax");
        }
    }
    res.passed = res.failures == 0;
    return res;
}

CheckResult check_bob_min(const VerifyOptions& opt) {
    CheckResult res;
    res.name = "hop-2 suppression closed form vs exhaustive search";
    const GridSpec grid{opt.grid_1d, opt.grid_2d};

    for (int i = 0; i < opt.instances; ++i) {
        const std::uint64_t seed = substream_seed(opt.seed, kLaneBobMin, i);
        const RandomInstance inst = random_instance(seed);
        ++res.checked;

        const HybridMinResult floor = min_bob_rate_hybrid(inst.ch, inst.params);
        const AlphaQ2 exact{floor.alpha, floor.q2};
        const Mode3Brute oracle =
            brute_force_min_bob(inst.ch, inst.params, grid, std::span(&exact, 1));

        const double err = std::abs(floor.rate - oracle.rate);
        res.worst_error = std::max(res.worst_error, err);
        if (err > opt.rate_tol) {
            record_failure(res, seed, "suppressed rate mismatch " + std::to_string(err));
            continue;
        }

        const double fpu =
            inst.params.power_alice * sq_mag(inst.ch.h_am) + inst.params.noise_power;
        const double spend = fpu * floor.alpha * floor.alpha + floor.q2;
        const double slack = std::abs(spend - inst.params.jam_budget);
        if (slack > opt.power_tol * inst.params.jam_budget)
            record_failure(res, seed, "budget not tight, slack " + std::to_string(slack));
    }
    res.passed = res.failures == 0;
    return res;
}

struct HybridChecks {
    CheckResult policy;
    CheckResult complete;
    CheckResult residual;
    int amplification_instances = 0;
};

HybridChecks check_hybrid(const VerifyOptions& opt) {
    HybridChecks out;
    out.policy.name = "hop-2 policy vs exhaustive search (jamming-effective regime)";
    out.complete.name = "hop-2 policy plus amplification arm vs exhaustive search";
    out.residual.name = "hybrid target solver residual";
    const GridSpec grid{opt.grid_1d, opt.grid_2d};

    int qualifying = 0;
    int draws = 0;
    const int max_draws = 50 * opt.instances;
    while (qualifying < opt.instances && draws < max_draws) {
        const std::uint64_t seed = substream_seed(opt.seed, kLaneHybrid, draws);
        ++draws;
        const RandomInstance inst = random_instance(seed);
        const ChannelState& ch = inst.ch;
        const SystemParams& p = inst.params;

        const ModeOutcome closed = optimize_mode3(ch, p);
        const double amp = amplification_rate(ch, p);
        const double comm0 = end_to_end_rate(rate_hop1(ch, p), rate_hop2_plain(ch, p));
        const double listen = monitor_rate_mode3(ch, p);
        const HybridMinResult floor = min_bob_rate_hybrid(ch, p);

        std::vector<AlphaQ2> extras{{0.0, 0.0}, {floor.alpha, floor.q2}};
        if (const auto* d = std::get_if<HybridJamDecision>(&closed.decision)) {
            extras.push_back({d->forward_gain, d->jam_power});
            const double g_mb = sq_mag(ch.h_mb);
            if (g_mb > 0.0) {
                // A hair more jamming pushes the destination rate just below
                // the gate boundary the solver steered onto.
                const double den = g_mb * d->jam_power +
                                   d->forward_gain * d->forward_gain * g_mb * p.noise_power +
                                   p.noise_power;
                extras.push_back({d->forward_gain, d->jam_power + 1e-9 * den / g_mb});
            }
        }

        const bool case_pinned = closed.success && listen < comm0;
        if (case_pinned) {
            const auto& d = std::get<HybridJamDecision>(closed.decision);
            ++out.residual.checked;
            const double got = rate_hop2_hybrid(ch, p, d.forward_gain, d.jam_power);
            const double residual = std::abs(got - listen);
            out.residual.worst_error = std::max(out.residual.worst_error, residual);
            if (residual > opt.residual_tol)
                record_failure(out.residual, seed,
                               "solver residual " + std::to_string(residual));

            const double eps_target = listen - 1e-9 * std::max(1.0, std::abs(listen));
            if (eps_target >= floor.rate) {
                try {
                    const HybridJamDecision d2 = solve_hybrid_target(ch, p, eps_target);
                    extras.push_back({d2.forward_gain, d2.jam_power});
                } catch (const std::domain_error&) {
                    // right at the floor; the exact pair above already covers it
                }
            }
        }

        const Mode3Brute oracle = brute_force_mode3(ch, p, grid, extras);

        ++out.complete.checked;
        const double expected = std::max(closed.eavesdropping_rate, amp);
        const double cerr = std::abs(oracle.rate - expected);
        out.complete.worst_error = std::max(out.complete.worst_error, cerr);
        if (cerr > opt.rate_tol)
            record_failure(out.complete, seed,
                           "full-region optimum mismatch " + std::to_string(cerr));

        if (amp > closed.eavesdropping_rate + 1e-12) {
            // The aggressive forwarding arm beats jamming here; the three-case
            // policy is intentionally not chasing it, so this draw does not
            // count against the policy-vs-oracle comparison.
            ++out.amplification_instances;
            continue;
        }

        ++qualifying;
        ++out.policy.checked;
        const double err = std::abs(closed.eavesdropping_rate - oracle.rate);
        out.policy.worst_error = std::max(out.policy.worst_error, err);
        if (err > opt.rate_tol)
            record_failure(out.policy, seed, "rate mismatch " + std::to_string(err));
    }

    if (qualifying < opt.instances) {
        ++out.policy.failures;
        out.policy.detail = "only " + std::to_string(qualifying) +
                            " jamming-effective instances in " + std::to_string(draws) +
                            " draws";
    }
    out.policy.passed = out.policy.failures == 0;
    out.complete.passed = out.complete.failures == 0;
    // A residual check that never fired would be vacuous, so demand coverage.
    out.residual.passed = out.residual.failures == 0 && out.residual.checked > 0;
    if (out.residual.checked == 0) out.residual.detail = "no target-pinning instances seen";
    return out;
}

CheckResult check_invariants(const VerifyOptions& opt, int mode2_cases[3], int mode3_cases[3]) {
    CheckResult res;
    res.name = "selection invariants";
    constexpr double kLadder[] = {0.0, 0.5, 1.0, 2.0, 4.0};

    for (int i = 0; i < opt.invariant_instances; ++i) {
        const std::uint64_t seed = substream_seed(opt.seed, kLaneInvariants, i);
        const RandomInstance inst = random_instance(seed);
        const ChannelState& ch = inst.ch;
        const SystemParams& p = inst.params;
        ++res.checked;

        const SelectionResult sel = select_mode(ch, p);
        const double comm0 = end_to_end_rate(rate_hop1(ch, p), rate_hop2_plain(ch, p));
        const double listens[3] = {monitor_rate_mode1(ch, p), monitor_rate_mode2(ch, p),
                                   monitor_rate_mode3(ch, p)};

        for (int m = 0; m < 3; ++m) {
            const ModeOutcome& o = sel.per_mode[m];
            const double r = o.eavesdropping_rate;
            // Every mode's optimum lands on one of three exactly recomputable
            // values; anything else means the closed form drifted.
            if (!(r == 0.0 || r == listens[m] || r == comm0))
                record_failure(res, seed, "rate outside its value set, mode " +
                                              std::string(mode_label(o.mode)));
            const bool coherent =
                o.success ? r == o.comm_rate_under_jamming : r == 0.0;
            if (!coherent)
                record_failure(res, seed, "success flag inconsistent, mode " +
                                              std::string(mode_label(o.mode)));
        }

        double best_rate = sel.per_mode[0].eavesdropping_rate;
        int best_idx = 0;
        for (int m = 1; m < 3; ++m) {
            if (sel.per_mode[m].eavesdropping_rate > best_rate) {
                best_rate = sel.per_mode[m].eavesdropping_rate;
                best_idx = m;
            }
        }
        if (sel.best.eavesdropping_rate != best_rate ||
            sel.best.mode != static_cast<Mode>(best_idx))
            record_failure(res, seed, "selection is not the first argmax");

        double prev = -1.0;
        for (double scale : kLadder) {
            SystemParams ladder = p;
            ladder.jam_budget = p.jam_budget * scale;
            const double r = select_mode(ch, ladder).best.eavesdropping_rate;
            if (r < prev) {
                record_failure(res, seed, "best rate dropped when the budget grew");
                break;
            }
            prev = r;
        }

        // Case bookkeeping so coverage of every regime can be asserted.
        const ModeOutcome& m2 = sel.per_mode[1];
        if (listens[1] >= comm0)
            ++mode2_cases[0];
        else if (m2.success)
            ++mode2_cases[1];
        else
            ++mode2_cases[2];
        const ModeOutcome& m3 = sel.per_mode[2];
        if (listens[2] >= comm0)
            ++mode3_cases[0];
        else if (m3.success)
            ++mode3_cases[1];
        else
            ++mode3_cases[2];
    }

    std::ostringstream os;
    os << "hop-1 jamming cases " << mode2_cases[0] << "/" << mode2_cases[1] << "/"
       << mode2_cases[2] << ", hop-2 cases " << mode3_cases[0] << "/" << mode3_cases[1]
       << "/" << mode3_cases[2];
    if (res.detail.empty()) res.detail = os.str();
    res.passed = res.failures == 0;
    return res;
}

CheckResult check_channel_gain(const VerifyOptions& opt) {
    CheckResult res;
    res.name = "fading realizations average to the path-loss gain";

    Scenario sc;
    sc.alice = {0.0, 0.0};
    sc.relay = {500.0, 0.0};
    sc.bob = {1000.0, 0.0};
    sc.monitor = {300.0, 400.0};

    double sums[6] = {};
    GaussianStream gs(substream_seed(opt.seed, 5, 0));
    for (int i = 0; i < opt.gain_draws; ++i) {
        const ChannelState ch = rayleigh_channels(sc, gs);
        sums[0] += sq_mag(ch.h_ar);
        sums[1] += sq_mag(ch.h_rb);
        sums[2] += sq_mag(ch.h_am);
        sums[3] += sq_mag(ch.h_mr);
        sums[4] += sq_mag(ch.h_rm);
        sums[5] += sq_mag(ch.h_mb);
    }

    const ChannelState flat = awgn_channels(sc);
    const double gains[6] = {sq_mag(flat.h_ar), sq_mag(flat.h_rb), sq_mag(flat.h_am),
                             sq_mag(flat.h_mr), sq_mag(flat.h_rm), sq_mag(flat.h_mb)};
    res.checked = 6;
    for (int k = 0; k < 6; ++k) {
        const double ratio = sums[k] / opt.gain_draws / gains[k];
        res.worst_error = std::max(res.worst_error, std::abs(ratio - 1.0));
        if (ratio < 0.98 || ratio > 1.02) ++res.failures;
    }
    std::ostringstream os;
    os << "worst relative deviation " << res.worst_error << " over " << opt.gain_draws
       << " draws per link";
    res.detail = os.str();
    res.passed = res.failures == 0;
    return res;
}

} // namespace

VerifyReport run_verification(const VerifyOptions& opt) {
    VerifyReport rep;
    rep.noise_jam = check_noise_jam(opt);
    rep.bob_min = check_bob_min(opt);
    HybridChecks hybrid = check_hybrid(opt);
    rep.hybrid = std::move(hybrid.policy);
    rep.hybrid_complete = std::move(hybrid.complete);
    rep.target_residual = std::move(hybrid.residual);
    rep.amplification_instances = hybrid.amplification_instances;
    rep.invariants = check_invariants(opt, rep.mode2_case_counts, rep.mode3_case_counts);
    rep.channel_gain = check_channel_gain(opt);
    rep.all_passed = rep.noise_jam.passed && rep.bob_min.passed && rep.hybrid.passed &&
                     rep.hybrid_complete.passed && rep.target_residual.passed &&
                     rep.invariants.passed && rep.channel_gain.passed;
    return rep;
}

} // namespace relaysurv
