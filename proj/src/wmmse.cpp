// SPDX-License-Identifier: Apache-2.0
#include "irsopt/wmmse.hpp"

#include <cmath>
#include <stdexcept>

namespace irsopt {

Eigen::VectorXcd update_u(const BeamformerSet& V, const Eigen::VectorXcd& theta,
                          const ChannelRealization& real, const Eigen::VectorXd& sigma2) {
    const int K = real.num_users();
    Eigen::VectorXcd u(K);
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd h = effective_channel(real, k, theta);
        double denom = sigma2[k];
        for (int j = 0; j < K; ++j) denom += std::norm(h.dot(V.v[j]));
        u[k] = h.dot(V.v[k]) / denom;
    }
    return u;
}

Eigen::VectorXd update_w(const Eigen::VectorXcd& u, const BeamformerSet& V,
                         const Eigen::VectorXcd& theta, const ChannelRealization& real,
                         const Eigen::VectorXd& sigma2) {
    const int K = real.num_users();
    Eigen::VectorXd w(K);
    for (int k = 0; k < K; ++k) w[k] = 1.0 / mse(k, u[k], V, theta, real, sigma2);
    return w;
}

namespace {

struct VSolveContext {
    Eigen::MatrixXcd B;                  // sum_j w_j |u_j|^2 h_j h_j^H
    std::vector<Eigen::VectorXcd> h;     // effective channels
    Eigen::VectorXcd coef;               // u_k w_k
};

BeamformerSet beamformers_at(const VSolveContext& ctx, double mu, bool* ok = nullptr) {
    const int M = static_cast<int>(ctx.B.rows());
    const int K = static_cast<int>(ctx.h.size());
    Eigen::MatrixXcd S = ctx.B;
    S.diagonal().array() += mu;
    Eigen::LLT<Eigen::MatrixXcd> llt(S);
    if (llt.info() != Eigen::Success) {
        if (ok) *ok = false;
        return BeamformerSet::zeros(K, M);
    }
    if (ok) *ok = true;
    BeamformerSet V;
    V.v.resize(K);
    for (int k = 0; k < K; ++k) V.v[k] = ctx.coef[k] * llt.solve(ctx.h[k]);
    return V;
}

}  // namespace

BeamformerSet update_v(const Eigen::VectorXcd& u, const Eigen::VectorXd& w,
                       const Eigen::VectorXcd& theta, const ChannelRealization& real,
                       const Eigen::VectorXd& sigma2, double p_max) {
    (void)sigma2;
    const int K = real.num_users();
    const int M = static_cast<int>(real.h_d[0].size());

    VSolveContext ctx;
    ctx.B = Eigen::MatrixXcd::Zero(M, M);
    ctx.h.resize(K);
    ctx.coef.resize(K);
    for (int k = 0; k < K; ++k) {
        ctx.h[k] = effective_channel(real, k, theta);
        ctx.B.noalias() += w[k] * std::norm(u[k]) * ctx.h[k] * ctx.h[k].adjoint();
        ctx.coef[k] = u[k] * w[k];
    }
    if (ctx.coef.norm() == 0.0) return BeamformerSet::zeros(K, M);  // singular guard

    // mu = 0 first; accept if within budget. B is exactly singular when some
    // user's w_k|u_k|^2 underflows to zero while its coefficient u_k w_k does
    // not; a tiny ridge then stands in for the mu -> 0+ limit. Without it the
    // bisection below would chase mu toward the singular point and silently
    // return V = 0.
    bool ok = false;
    BeamformerSet V0 = beamformers_at(ctx, 0.0, &ok);
    if (!ok) V0 = beamformers_at(ctx, 1e-10 * (1.0 + ctx.B.trace().real() / M), &ok);
    if (ok) {
        const double p0 = V0.total_power();
        if (std::isfinite(p0) && p0 <= p_max) return V0;
    }

    // power(mu) is strictly decreasing; bracket by doubling from 1.
    double mu_lo = 0.0, mu_hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        if (beamformers_at(ctx, mu_hi).total_power() <= p_max) break;
        mu_lo = mu_hi;
        mu_hi *= 2.0;
    }
    double mu = mu_hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (mu_lo + mu_hi);
        const double p = beamformers_at(ctx, mid).total_power();
        if (p > p_max)
            mu_lo = mid;
        else
            mu_hi = mid;
        mu = mu_hi;
        if (std::abs(p - p_max) <= 1e-8 * p_max) {
            mu = mid;
            break;
        }
    }
    BeamformerSet V = beamformers_at(ctx, mu);
    // Final guard: mu_hi side always satisfies the budget.
    if (V.total_power() > p_max * (1.0 + 1e-8)) V = beamformers_at(ctx, mu_hi);
    return V;
}

InnerResult solve_inner(BeamformerSet V, AuxState aux, const Eigen::VectorXcd& theta,
                        const ChannelRealization& real, const Eigen::VectorXd& sigma2,
                        double p_max, double lambda, const InnerOptions& opt) {
    double phi = phi_lambda(V, aux, theta, real, sigma2, lambda);
    int cycles = 0;
    for (; cycles < opt.max_cycles; ++cycles) {
        aux.u = update_u(V, theta, real, sigma2);
        aux.w = update_w(aux.u, V, theta, real, sigma2);
        V = update_v(aux.u, aux.w, theta, real, sigma2, p_max);
        const double phi_next = phi_lambda(V, aux, theta, real, sigma2, lambda);
        const double rel = std::abs(phi - phi_next) / std::max(1.0, std::abs(phi));
        phi = phi_next;
        if (rel < opt.tol) {
            ++cycles;
            break;
        }
    }
    return {std::move(V), std::move(aux), phi, cycles};
}

}  // namespace irsopt
