#include "relaysurv/geometry.hpp"

#include <cmath>

namespace relaysurv {

double distance(Vec2 a, Vec2 b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double path_loss_gain(const PathLossModel& m, double d) {
    const double eff = std::max(d, m.ref_distance);
    return m.kappa * std::pow(eff / m.ref_distance, -m.exponent);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t lane,
                             std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(master) ^ lane) ^ index);
}

double GaussianStream::uniform01() {
    // Top 53 bits, shifted into (0, 1]; excluding 0 keeps log() finite below.
    const std::uint64_t word = engine_();
    return static_cast<double>((word >> 11) + 1) * 0x1.0p-53;
}

std::complex<double> GaussianStream::complex_normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    // Box-Muller with the sqrt(2) folded in: |z|^2 = -log(u1), mean 1.
    const double mag = std::sqrt(-std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

namespace {

double link_gain(const Scenario& sc, Vec2 a, Vec2 b) {
    return path_loss_gain(sc.path_loss, distance(a, b));
}

} // namespace

ChannelState awgn_channels(const Scenario& sc) {
    ChannelState ch;
    ch.h_ar = std::sqrt(link_gain(sc, sc.alice, sc.relay));
    ch.h_rb = std::sqrt(link_gain(sc, sc.relay, sc.bob));
    ch.h_am = std::sqrt(link_gain(sc, sc.alice, sc.monitor));
    ch.h_mr = std::sqrt(link_gain(sc, sc.monitor, sc.relay));
    ch.h_rm = std::sqrt(link_gain(sc, sc.relay, sc.monitor));
    ch.h_mb = std::sqrt(link_gain(sc, sc.monitor, sc.bob));
    return ch;
}

ChannelState rayleigh_channels(const Scenario& sc, GaussianStream& gs) {
    // Fixed draw order; monitor->relay and relay->monitor fade independently
    // (the monitor transmits and receives on different chains).
    ChannelState ch;
    ch.h_ar = std::sqrt(link_gain(sc, sc.alice, sc.relay)) * gs.complex_normal();
    ch.h_rb = std::sqrt(link_gain(sc, sc.relay, sc.bob)) * gs.complex_normal();
    ch.h_am = std::sqrt(link_gain(sc, sc.alice, sc.monitor)) * gs.complex_normal();
    ch.h_mr = std::sqrt(link_gain(sc, sc.monitor, sc.relay)) * gs.complex_normal();
    ch.h_rm = std::sqrt(link_gain(sc, sc.relay, sc.monitor)) * gs.complex_normal();
    ch.h_mb = std::sqrt(link_gain(sc, sc.monitor, sc.bob)) * gs.complex_normal();
    return ch;
}

} // namespace relaysurv
