// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "irsopt/solver.hpp"

namespace irsopt {

struct HarnessOptions {
    SystemConfig config = SystemConfig::reference_default();
    std::uint64_t seed = 1;
    int trials = 30;
    int workers = 1;
    std::string out_path;  // empty = stdout
    bool json_mirror = false;  // also write <out>.json (requires out_path)
    std::optional<PhaseAlphabet> alphabet_override;  // convergence only
    std::vector<double> p_list_dbm = {-5, 0, 5, 10, 15, 20, 25};
    std::vector<int> n_list = {0, 20, 40, 60, 80, 100};
    SolveOptions solve_opt;
};

/// Per-iteration traces for each alphabet in {cp, dp:2, dp:4} (or the
/// override), one trace per trial.
/// Columns: scheme,trial,iteration,lambda,phi_lambda,sum_rate_nats,sum_rate_bits,infeasibility
int run_convergence(const HarnessOptions& opt);

/// Mean final rate and standard error per (scheme, P_max).
/// Columns: scheme,N,P_dBm,mean_rate_bits,se,trials,seed
int run_sweep_power(const HarnessOptions& opt);

/// Mean final rate per (scheme, N) at fixed P_max.
/// Columns: scheme,N,P_dBm,mean_rate_bits,se,trials,seed
int run_sweep_elements(const HarnessOptions& opt);

/// Deterministic index-parallel map; results ordered by index regardless of
/// worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace irsopt
