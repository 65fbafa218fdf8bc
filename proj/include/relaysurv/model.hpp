#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <variant>

namespace relaysurv {

// Complex baseband coefficients for the six links of the two-hop
// surveillance geometry. Naming: h_xy is the channel from node x to node y,
// with a = source, r = relay, b = destination, m = monitor.
struct ChannelState {
    std::complex<double> h_ar;
    std::complex<double> h_rb;
    std::complex<double> h_am;
    std::complex<double> h_mr;
    std::complex<double> h_rm;
    std::complex<double> h_mb;
};

// Transmit powers and noise in linear mW. dBm conversion happens at config
// ingestion only; everything past that boundary is linear.
struct SystemParams {
    double power_alice = 0.0;
    double power_relay = 0.0;
    double noise_power = 0.0;
    double jam_budget = 0.0;
};

enum class Mode {
    passive = 0,
    noise_jam = 1,
    hybrid_jam = 2,
};

std::string_view mode_label(Mode m); // "I", "II", "III"

struct NoiseJamDecision {
    double jam_power = 0.0; // Q1, spent against the relay during hop 1
};

struct HybridJamDecision {
    double forward_gain = 0.0; // alpha, amplitude scaling of the relayed copy
    double jam_power = 0.0;    // Q2, noise spent against the destination
};

// Outcome of evaluating one eavesdropping mode at a fixed channel state.
struct ModeOutcome {
    Mode mode = Mode::passive;
    double eavesdropping_rate = 0.0;       // what the monitor decodes, 0 if the gate fails
    double comm_rate_under_jamming = 0.0;  // end-to-end rate the link actually sustains
    bool success = false;                  // gate passed (monitor can decode what the link carries)
    std::variant<std::monostate, NoiseJamDecision, HybridJamDecision> decision;
};

double sq_mag(std::complex<double> h);

// 0.5 * log2(1 + snr); the 0.5 is the half-duplex two-phase penalty.
double half_rate_from_snr(double snr);

// Hop 1: source -> relay, optionally degraded by monitor noise power q1.
double rate_hop1(const ChannelState& ch, const SystemParams& p, double q1 = 0.0);

// Hop 2: relay -> destination, clean.
double rate_hop2_plain(const ChannelState& ch, const SystemParams& p);

// Hop 2 while the monitor forwards an amplitude-scaled copy of hop 1's
// signal (gain alpha, delayed to superpose destructively) and adds noise q2.
double rate_hop2_hybrid(const ChannelState& ch, const SystemParams& p,
                        double alpha, double q2);

// Monitor listening rates for the three modes.
double monitor_rate_mode1(const ChannelState& ch, const SystemParams& p); // MRC over both hops
double monitor_rate_mode2(const ChannelState& ch, const SystemParams& p); // relay phase only
double monitor_rate_mode3(const ChannelState& ch, const SystemParams& p); // source phase only

// min of the two hop rates under the given interference.
double end_to_end_rate(double r_hop1, double r_hop2);

// The monitor obtains the link's content iff its own rate covers it.
double eavesdrop_gate(double monitor_rate, double comm_rate);

} // namespace relaysurv
