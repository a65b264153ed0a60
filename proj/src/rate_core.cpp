// SPDX-License-Identifier: Apache-2.0
#include "irsopt/rate_core.hpp"

#include <cmath>
#include <limits>

namespace irsopt {

double BeamformerSet::total_power() const {
    double p = 0.0;
    for (const auto& vk : v) p += vk.squaredNorm();
    return p;
}

BeamformerSet BeamformerSet::zeros(int K, int M) {
    BeamformerSet V;
    V.v.assign(K, Eigen::VectorXcd::Zero(M));
    return V;
}

double sinr(int k, const BeamformerSet& V, const Eigen::VectorXcd& theta,
            const ChannelRealization& real, const Eigen::VectorXd& sigma2) {
    const Eigen::VectorXcd h = effective_channel(real, k, theta);
    const int K = static_cast<int>(V.v.size());
    double interference = 0.0;
    for (int j = 0; j < K; ++j)
        if (j != k) interference += std::norm(h.dot(V.v[j]));
    return std::norm(h.dot(V.v[k])) / (sigma2[k] + interference);
}

double sum_rate(const BeamformerSet& V, const Eigen::VectorXcd& theta,
                const ChannelRealization& real, const Eigen::VectorXd& sigma2) {
    double rate = 0.0;
    for (int k = 0; k < real.num_users(); ++k)
        rate += std::log1p(sinr(k, V, theta, real, sigma2));
    return rate;
}

double mse(int k, std::complex<double> u_k, const BeamformerSet& V,
           const Eigen::VectorXcd& theta, const ChannelRealization& real,
           const Eigen::VectorXd& sigma2) {
    const Eigen::VectorXcd h = effective_channel(real, k, theta);
    const int K = static_cast<int>(V.v.size());
    double e = sigma2[k] * std::norm(u_k) + std::norm(1.0 - std::conj(u_k) * h.dot(V.v[k]));
    for (int j = 0; j < K; ++j)
        if (j != k) e += std::norm(u_k * h.dot(V.v[j]));
    return e;
}

double phi_lambda(const BeamformerSet& V, const AuxState& aux, const Eigen::VectorXcd& theta,
                  const ChannelRealization& real, const Eigen::VectorXd& sigma2, double lambda) {
    const int K = real.num_users();
    double phi = -lambda * theta.squaredNorm();
    for (int k = 0; k < K; ++k) {
        if (aux.w[k] == 0.0) return std::numeric_limits<double>::infinity();
        // floor guards user-supplied pathological states; updates never hit it
        const double e = std::max(mse(k, aux.u[k], V, theta, real, sigma2), 1e-300);
        phi += aux.w[k] * e - std::log(aux.w[k]);
    }
    return phi;
}

}  // namespace irsopt
