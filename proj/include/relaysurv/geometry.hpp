#pragma once

#include "relaysurv/model.hpp"

#include <cstdint>
#include <random>

namespace relaysurv {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(Vec2 a, Vec2 b);

// Distance-based power gain: kappa * (d / d0)^(-zeta), floored at d = d0 so
// a node sitting on top of another does not produce an infinite gain.
struct PathLossModel {
    double kappa = 1e-6;  // gain at the reference distance (-60 dB)
    double ref_distance = 10.0;
    double exponent = 3.0;
};

double path_loss_gain(const PathLossModel& m, double d);

enum class FadingModel {
    awgn,     // deterministic: coefficient sqrt(gain), zero phase
    rayleigh, // coefficient sqrt(gain) * CN(0, 1)
};

// Node placement plus propagation assumptions; everything needed to realize
// a ChannelState.
struct Scenario {
    Vec2 alice;
    Vec2 relay;
    Vec2 bob;
    Vec2 monitor;
    PathLossModel path_loss;
};

std::uint64_t splitmix64(std::uint64_t x);

// Decorrelated seed for (lane, index) under one master seed. Lane separates
// usage domains (e.g. sweep trials vs verification instances); index is the
// position within the lane. Same inputs, same stream, on every platform.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t lane,
                             std::uint64_t index);

// Standard normal pairs via Box-Muller over raw mt19937_64 words. We do not
// use std::normal_distribution because its algorithm is implementation
// defined and the experiment CSVs must be byte-identical across toolchains.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    // One draw consumes exactly one engine word.
    double uniform01(); // in (0, 1]

    // One complex CN(0,1) consumes exactly two engine words.
    std::complex<double> complex_normal();

private:
    std::mt19937_64 engine_;
};

// Channel realizations. Draw order is fixed (h_ar, h_rb, h_am, h_mr, h_rm,
// h_mb) so a given seed always yields the same ChannelState.
ChannelState awgn_channels(const Scenario& sc);
ChannelState rayleigh_channels(const Scenario& sc, GaussianStream& gs);

} // namespace relaysurv
