// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "irsopt/solver.hpp"

namespace irsopt {

/// WMMSE on the direct channels only (IRS contribution removed).
SolveReport no_irs_wmmse(const SystemConfig& config, const ChannelRealization& real,
                         std::mt19937_64& rng, const SolveOptions& opt = {});

/// Snap a continuous-phase solution to the L-ary alphabet and refit V.
FinalizeResult quantize_baseline(const SolveReport& continuous_report, int L,
                                 const ChannelRealization& real, const SystemConfig& config,
                                 const InnerOptions& inner = {});

struct ExhaustiveResult {
    Eigen::VectorXcd theta;
    double sum_rate_nats = 0.0;
};

/// Enumerates all L^N discrete phase vectors (lexicographic in alphabet
/// indices), runs WMMSE to tolerance for each, returns the best. Ties broken
/// by first found. Enforces L^N <= 1e6.
ExhaustiveResult exhaustive_discrete(const SystemConfig& config, const ChannelRealization& real,
                                     int L, const InnerOptions& inner = {});

/// Central finite differences on the 2N-real parametrization, packed as a
/// complex vector (d/dRe + j d/dIm) to match the analytic gradient convention.
Eigen::VectorXcd fd_gradient(const std::function<double(const Eigen::VectorXcd&)>& f,
                             const Eigen::VectorXcd& point, double step);

/// Brute-force projection onto the hull of {omega^0,...,omega^{L-1}}:
/// argmin over all L vertices and L edge segments.
std::complex<double> polygon_projection_oracle(std::complex<double> z, int L);

}  // namespace irsopt
