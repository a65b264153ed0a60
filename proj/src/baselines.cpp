// SPDX-License-Identifier: Apache-2.0
#include "irsopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irsopt {

namespace {

// Matched-filter beamformers at the given theta, full power budget.
Initialization matched_filter_init(const SystemConfig& config, const ChannelRealization& real,
                                   const Eigen::VectorXcd& theta) {
    Initialization init;
    init.theta = theta;
    init.V.v.resize(config.K);
    double hnorm2 = 0.0;
    std::vector<Eigen::VectorXcd> h(config.K);
    for (int k = 0; k < config.K; ++k) {
        h[k] = effective_channel(real, k, theta);
        hnorm2 += h[k].squaredNorm();
    }
    const double scale = hnorm2 > 0.0 ? std::sqrt(config.p_max / hnorm2) : 0.0;
    for (int k = 0; k < config.K; ++k) init.V.v[k] = scale * h[k];
    init.aux.u = update_u(init.V, theta, real, config.sigma2);
    init.aux.w = update_w(init.aux.u, init.V, theta, real, config.sigma2);
    return init;
}

}  // namespace

SolveReport no_irs_wmmse(const SystemConfig& config, const ChannelRealization& real,
                         std::mt19937_64& rng, const SolveOptions& opt) {
    SystemConfig direct_cfg = config;
    direct_cfg.N = 0;

    ChannelRealization direct;
    direct.G.resize(0, config.M);
    direct.h_d = real.h_d;
    direct.h_r.assign(config.K, Eigen::VectorXcd::Zero(0));
    direct.H_r.assign(config.K, Eigen::MatrixXcd::Zero(config.M, 0));
    direct.user_pos = real.user_pos;

    return solve(direct_cfg, direct, rng, opt);
}

FinalizeResult quantize_baseline(const SolveReport& continuous_report, int L,
                                 const ChannelRealization& real, const SystemConfig& config,
                                 const InnerOptions& inner) {
    SystemConfig cfg = config;
    cfg.alphabet = PhaseAlphabet::discrete(L);
    AuxState aux;
    aux.u = update_u(continuous_report.V, continuous_report.theta, real, config.sigma2);
    aux.w = update_w(aux.u, continuous_report.V, continuous_report.theta, real, config.sigma2);
    return finalize(continuous_report.theta, cfg.alphabet, continuous_report.V, aux, real, cfg,
                    inner);
}

ExhaustiveResult exhaustive_discrete(const SystemConfig& config, const ChannelRealization& real,
                                     int L, const InnerOptions& inner) {
    const int N = config.N;
    const double total = std::pow(static_cast<double>(L), N);
    if (total > 1e6) throw std::invalid_argument("exhaustive_discrete: L^N exceeds 1e6");
    const PhaseAlphabet alphabet = PhaseAlphabet::discrete(L);

    ExhaustiveResult best;
    best.sum_rate_nats = -std::numeric_limits<double>::infinity();

    std::vector<int> idx(N, 0);
    Eigen::VectorXcd theta(N);
    const long count = static_cast<long>(total);
    for (long c = 0; c < count; ++c) {
        for (int n = 0; n < N; ++n) theta[n] = alphabet.vertex(idx[n]);
        const Initialization init = matched_filter_init(config, real, theta);
        const InnerResult res = solve_inner(init.V, init.aux, theta, real, config.sigma2,
                                            config.p_max, /*lambda=*/0.0, inner);
        const double rate = sum_rate(res.V, theta, real, config.sigma2);
        if (rate > best.sum_rate_nats) {
            best.sum_rate_nats = rate;
            best.theta = theta;
        }
        // lexicographic increment, last index fastest
        for (int n = N - 1; n >= 0; --n) {
            if (++idx[n] < L) break;
            idx[n] = 0;
        }
    }
    return best;
}

Eigen::VectorXcd fd_gradient(const std::function<double(const Eigen::VectorXcd&)>& f,
                             const Eigen::VectorXcd& point, double step) {
    const Eigen::Index N = point.size();
    Eigen::VectorXcd grad(N);
    Eigen::VectorXcd x = point;
    for (Eigen::Index n = 0; n < N; ++n) {
        const std::complex<double> z = point[n];
        x[n] = z + step;
        const double fp_re = f(x);
        x[n] = z - step;
        const double fm_re = f(x);
        x[n] = z + std::complex<double>(0.0, step);
        const double fp_im = f(x);
        x[n] = z - std::complex<double>(0.0, step);
        const double fm_im = f(x);
        x[n] = z;
        grad[n] = {(fp_re - fm_re) / (2.0 * step), (fp_im - fm_im) / (2.0 * step)};
    }
    return grad;
}

std::complex<double> polygon_projection_oracle(std::complex<double> z, int L) {
    if (L < 2) throw std::invalid_argument("polygon_projection_oracle: L must be >= 2");
    const PhaseAlphabet alphabet = PhaseAlphabet::discrete(L);

    // Membership first: z inside every edge's supporting half-plane projects
    // to itself. Normals come from the vertex midpoints, so the test is
    // derived purely from the vertex set. (L = 2 has no interior; the edge
    // search below covers it.)
    if (L >= 3) {
        bool inside = true;
        for (int m = 0; m < L && inside; ++m) {
            const std::complex<double> a = alphabet.vertex(m);
            const std::complex<double> b = alphabet.vertex((m + 1) % L);
            const std::complex<double> mid = 0.5 * (a + b);
            const std::complex<double> n = mid / std::abs(mid);
            if ((z * std::conj(n)).real() > (a * std::conj(n)).real() + 1e-15) inside = false;
        }
        if (inside) return z;
    }

    std::complex<double> best = alphabet.vertex(0);
    double best_d = std::abs(z - best);
    auto consider = [&](std::complex<double> p) {
        const double d = std::abs(z - p);
        if (d < best_d) {
            best_d = d;
            best = p;
        }
    };
    for (int m = 0; m < L; ++m) {
        const std::complex<double> a = alphabet.vertex(m);
        const std::complex<double> b = alphabet.vertex((m + 1) % L);
        consider(a);
        const std::complex<double> edge = b - a;
        const double e2 = std::norm(edge);
        if (e2 > 0.0) {
            const double t = std::clamp(((z - a) * std::conj(edge)).real() / e2, 0.0, 1.0);
            consider(a + t * edge);
        }
    }
    return best;
}

}  // namespace irsopt
