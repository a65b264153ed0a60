// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "irsopt/phase_solver.hpp"
#include "irsopt/wmmse.hpp"

namespace irsopt {

struct PenaltySchedule {
    double lambda0 = 0.01;
    double growth = 5.0;      // c, applied every J outer iterations
    int J = 5;
    double lambda_cap = 1e6;  // schedule freezes beyond the cap
};

struct StoppingRule {
    double tol = 1e-4;  // ||V_t - V_{t-1}||^2 + ||theta_t - theta_{t-1}||^2
    int max_outer = 30;
};

struct IterRecord {
    int iteration;
    double lambda;
    double phi;
    double sum_rate_nats;
    double infeasibility;  // max_n dist(theta_n, alphabet)
};

struct SolveReport {
    BeamformerSet V;          // refit at the strictly feasible theta
    Eigen::VectorXcd theta;   // strictly feasible (snapped)
    double sum_rate_nats = 0.0;
    std::vector<IterRecord> trace;  // length iterations + 1
    int iterations = 0;
    double wall_time_s = 0.0;
    std::string termination;
};

struct SolveOptions {
    PenaltySchedule schedule;
    StoppingRule stopping;
    InnerOptions inner;
    GemmOptions gemm;
    bool warm_start = true;  // reuse (V, u, w) across outer iterations
    // Number of independent runs from fresh random initializations; the report
    // with the best final sum rate is returned. The alternating scheme is
    // initialization-sensitive on small instances, so a few restarts recover
    // near-oracle solutions there. Default is a single run.
    int restarts = 1;
};

struct Initialization {
    BeamformerSet V;
    AuxState aux;
    Eigen::VectorXcd theta;
};

/// Random unit-phase theta projected onto the hull; matched-filter V scaled
/// to the full power budget; (u, w) from the closed-form updates.
Initialization default_init(const SystemConfig& config, const ChannelRealization& real,
                            std::mt19937_64& rng);

/// Nearest alphabet point per element. Continuous: theta/|theta| with 0 -> 1.
/// Discrete: nearest omega^m, ties broken toward the lowest index.
Eigen::VectorXcd snap_to_alphabet(const Eigen::VectorXcd& theta, const PhaseAlphabet& alphabet);

struct FinalizeResult {
    Eigen::VectorXcd theta;
    BeamformerSet V;
    AuxState aux;
    double sum_rate_nats;
};

/// Snap theta to the alphabet and refit the beamformers with one inner solve.
FinalizeResult finalize(const Eigen::VectorXcd& theta_relaxed, const PhaseAlphabet& alphabet,
                        const BeamformerSet& V, const AuxState& aux,
                        const ChannelRealization& real, const SystemConfig& config,
                        const InnerOptions& inner = {});

/// Alternating WMMSE / phase-gradient descent under the increasing penalty
/// schedule, then extraction of a strictly feasible solution.
SolveReport solve(const SystemConfig& config, const ChannelRealization& real,
                  const Initialization& init, const SolveOptions& opt = {});

SolveReport solve(const SystemConfig& config, const ChannelRealization& real,
                  std::mt19937_64& rng, const SolveOptions& opt = {});

}  // namespace irsopt
