/*
 * relaysurv: plans the best eavesdropping strategy for a legitimate monitor
 * observing a two-hop decode-and-forward link, and reproduces the reference
 * experiments (region map, fading sweep) plus a brute-force verification of
 * every closed form. See README.md for the subcommands.
 */

#include "relaysurv/cli.hpp"

#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return relaysurv::run_cli(args, std::cout, std::cerr);
}
