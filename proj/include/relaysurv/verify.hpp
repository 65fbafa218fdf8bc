#pragma once

#include "relaysurv/model.hpp"
#include "relaysurv/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace relaysurv {

// One randomized problem instance: channels and powers drawn log-uniformly
// over wide ranges so every qualitative regime shows up.
struct RandomInstance {
    ChannelState ch;
    SystemParams params;
};

RandomInstance random_instance(std::uint64_t seed);

struct VerifyOptions {
    int instances = 200;            // per closed-form-vs-oracle comparison
    int invariant_instances = 10000;
    std::uint64_t seed = 12345;
    double rate_tol = 1e-6;
    double residual_tol = 1e-9;
    double power_tol = 1e-12; // relative, on the budget-tightness identity
    int grid_1d = 1001;
    int grid_2d = 301;
    int gain_draws = 100000; // fading realizations for the mean-gain check
};

struct CheckResult {
    std::string name;
    bool passed = false;
    int checked = 0;       // instances examined
    int failures = 0;
    double worst_error = 0.0;
    std::string detail;    // first failure, or a summary note
};

struct VerifyReport {
    CheckResult noise_jam;        // mode II closed form vs exhaustive search
    CheckResult bob_min;          // hop-2 suppression closed form vs exhaustive search
    CheckResult hybrid;           // mode III policy vs exhaustive search, jamming-effective regime
    CheckResult hybrid_complete;  // policy + amplification arm covers the full control region
    CheckResult target_residual;  // hybrid solver lands on its target
    CheckResult invariants;       // value sets, best-of-three, budget monotonicity
    CheckResult channel_gain;     // fading realizations average back to the path-loss gain
    int amplification_instances = 0;   // draws where the aggressive arm beats the policy
    int mode2_case_counts[3] = {0, 0, 0}; // free listen / threshold jamming / infeasible
    int mode3_case_counts[3] = {0, 0, 0}; // free listen / target pinning / infeasible
    bool all_passed = false;
};

VerifyReport run_verification(const VerifyOptions& opt);

} // namespace relaysurv
