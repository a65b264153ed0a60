// SPDX-License-Identifier: Apache-2.0
#include "irsopt/model.hpp"

#include <numbers>
#include <stdexcept>

#include "irsopt/rng.hpp"

namespace irsopt {

PhaseAlphabet PhaseAlphabet::discrete(int L) {
    if (L < 2) throw std::invalid_argument("discrete alphabet needs L >= 2");
    return {PhaseKind::DiscreteLevels, L};
}

std::complex<double> PhaseAlphabet::vertex(int m) const {
    const double phi = 2.0 * std::numbers::pi * m / levels;
    return {std::cos(phi), std::sin(phi)};
}

void SystemConfig::validate() const {
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (N < 0) throw std::invalid_argument("N must be >= 0");
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in [0,1]");
    if (p_max <= 0.0) throw std::invalid_argument("p_max must be > 0");
    if (sigma2.size() != K) throw std::invalid_argument("sigma2 must have K entries");
    for (int k = 0; k < K; ++k)
        if (sigma2[k] <= 0.0) throw std::invalid_argument("sigma2 entries must be > 0");
    if (alphabet.is_discrete() && alphabet.levels < 2)
        throw std::invalid_argument("discrete alphabet needs L >= 2");
}

SystemConfig SystemConfig::reference_default() {
    SystemConfig c;
    c.M = 8;
    c.K = 8;
    c.N = 100;
    c.eta = 1.0;
    c.sigma2 = Eigen::VectorXd::Constant(c.K, dbm_to_watts(-80.0));
    c.p_max = dbm_to_watts(5.0);
    return c;
}

double path_loss(double d, double c0_zeta, double alpha) {
    if (d <= 0.0) throw std::domain_error("path_loss: distance must be > 0");
    return c0_zeta * std::pow(d, -alpha);
}

ChannelRealization sample_realization(const SystemConfig& config, std::mt19937_64& rng) {
    config.validate();
    const int M = config.M, K = config.K, N = config.N;
    const auto& geo = config.geometry;
    const auto& pl = config.pathloss;

    ChannelRealization real;
    real.user_pos.resize(K);

    // User drops: uniform in the disk via r = R*sqrt(U).
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < K; ++k) {
        const double r = geo.user_radius * std::sqrt(unif(rng));
        const double phi = 2.0 * std::numbers::pi * unif(rng);
        real.user_pos[k] = geo.user_center + Eigen::Vector2d(r * std::cos(phi), r * std::sin(phi));
    }

    const double d_bi = (geo.irs - geo.bs).norm();
    // Split the cascaded product gain evenly between the two hops.
    const double hop_c0 = std::sqrt(pl.c0_zeta_cascaded);

    const double gain_bs_irs = (N > 0) ? path_loss(d_bi, hop_c0, pl.alpha_bs_irs) : 0.0;
    real.G.resize(N, M);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m)
            real.G(n, m) = std::sqrt(gain_bs_irs) * randn_c(rng);

    real.h_d.resize(K);
    real.h_r.resize(K);
    real.H_r.resize(K);
    for (int k = 0; k < K; ++k) {
        const double d_bk = (real.user_pos[k] - geo.bs).norm();
        const double gain_direct = path_loss(d_bk, pl.c0_zeta_direct, pl.alpha_direct);
        real.h_d[k].resize(M);
        for (int m = 0; m < M; ++m) real.h_d[k][m] = std::sqrt(gain_direct) * randn_c(rng);

        const double d_ik = (real.user_pos[k] - geo.irs).norm();
        const double gain_irs_user = (N > 0) ? path_loss(d_ik, hop_c0, pl.alpha_irs_user) : 0.0;
        real.h_r[k].resize(N);
        for (int n = 0; n < N; ++n) real.h_r[k][n] = std::sqrt(gain_irs_user) * randn_c(rng);

        real.H_r[k] = std::sqrt(config.eta) * real.G.adjoint() * real.h_r[k].asDiagonal();
    }
    return real;
}

Eigen::VectorXcd effective_channel(const ChannelRealization& real, int k,
                                   const Eigen::VectorXcd& theta) {
    if (k < 0 || k >= real.num_users()) throw std::out_of_range("effective_channel: bad user index");
    if (theta.size() != real.H_r[k].cols())
        throw std::invalid_argument("effective_channel: theta length mismatch");
    return real.h_d[k] + real.H_r[k] * theta;
}

}  // namespace irsopt
