// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "irsopt/model.hpp"

namespace irsopt {

/// Transmit beamformers, one length-M vector per user.
struct BeamformerSet {
    std::vector<Eigen::VectorXcd> v;

    double total_power() const;
    static BeamformerSet zeros(int K, int M);
};

/// WMMSE auxiliaries: per-user receive equalizers u_k and MSE weights w_k >= 0.
struct AuxState {
    Eigen::VectorXcd u;
    Eigen::VectorXd w;
};

// All rates are in nats; the harness converts to bits at the reporting boundary.

double sinr(int k, const BeamformerSet& V, const Eigen::VectorXcd& theta,
            const ChannelRealization& real, const Eigen::VectorXd& sigma2);

double sum_rate(const BeamformerSet& V, const Eigen::VectorXcd& theta,
                const ChannelRealization& real, const Eigen::VectorXd& sigma2);

/// e_k = sigma_k^2 |u_k|^2 + |1 - u_k h_k^H v_k|^2 + sum_{j!=k} |u_k h_k^H v_j|^2
double mse(int k, std::complex<double> u_k, const BeamformerSet& V,
           const Eigen::VectorXcd& theta, const ChannelRealization& real,
           const Eigen::VectorXd& sigma2);

/// phi_lambda = sum_k (w_k e_k - ln w_k) - lambda ||theta||^2.
/// w_k = 0 yields +inf (ln 0 convention); never produced by the block updates.
double phi_lambda(const BeamformerSet& V, const AuxState& aux, const Eigen::VectorXcd& theta,
                  const ChannelRealization& real, const Eigen::VectorXd& sigma2, double lambda);

}  // namespace irsopt
