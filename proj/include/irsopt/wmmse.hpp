// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "irsopt/rate_core.hpp"

namespace irsopt {

// Closed-form block updates for the fixed-theta subproblem:
// minimize phi_lambda over (V, u, w) subject to sum_k ||v_k||^2 <= p_max.

/// u_k = h_k^H v_k / (sigma_k^2 + sum_j |h_k^H v_j|^2)
Eigen::VectorXcd update_u(const BeamformerSet& V, const Eigen::VectorXcd& theta,
                          const ChannelRealization& real, const Eigen::VectorXd& sigma2);

/// w_k = 1 / e_k(u_k, V)
Eigen::VectorXd update_w(const Eigen::VectorXcd& u, const BeamformerSet& V,
                         const Eigen::VectorXcd& theta, const ChannelRealization& real,
                         const Eigen::VectorXd& sigma2);

/// v_k = u_k w_k (sum_j w_j|u_j|^2 h_j h_j^H + mu I)^{-1} h_k, with mu >= 0 from
/// bisection so the power constraint holds with complementary slackness.
/// All u_k = 0 leaves the system singular at mu = 0; returns V = 0 then.
BeamformerSet update_v(const Eigen::VectorXcd& u, const Eigen::VectorXd& w,
                       const Eigen::VectorXcd& theta, const ChannelRealization& real,
                       const Eigen::VectorXd& sigma2, double p_max);

struct InnerOptions {
    double tol = 1e-6;   // relative phi_lambda change
    int max_cycles = 100;
};

struct InnerResult {
    BeamformerSet V;
    AuxState aux;
    double phi;   // phi_lambda at the returned iterate
    int cycles;
};

/// Cyclic u -> w -> V updates until the relative phi_lambda change drops
/// below tol or max_cycles is hit. phi_lambda is non-increasing throughout.
InnerResult solve_inner(BeamformerSet V, AuxState aux, const Eigen::VectorXcd& theta,
                        const ChannelRealization& real, const Eigen::VectorXd& sigma2,
                        double p_max, double lambda, const InnerOptions& opt = {});

}  // namespace irsopt
