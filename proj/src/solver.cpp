// SPDX-License-Identifier: Apache-2.0
#include "irsopt/solver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsopt {

Initialization default_init(const SystemConfig& config, const ChannelRealization& real,
                            std::mt19937_64& rng) {
    const int K = config.K, M = config.M, N = config.N;
    Initialization init;

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    init.theta.resize(N);
    for (int n = 0; n < N; ++n)
        init.theta[n] = std::polar(1.0, 2.0 * std::numbers::pi * unif(rng));
    init.theta = project_hull(init.theta, config.alphabet);

    // Matched filters to the effective channels, scaled to the power budget.
    init.V.v.resize(K);
    double hnorm2 = 0.0;
    std::vector<Eigen::VectorXcd> h(K);
    for (int k = 0; k < K; ++k) {
        h[k] = effective_channel(real, k, init.theta);
        hnorm2 += h[k].squaredNorm();
    }
    const double scale = hnorm2 > 0.0 ? std::sqrt(config.p_max / hnorm2) : 0.0;
    for (int k = 0; k < K; ++k) init.V.v[k] = scale * h[k];

    init.aux.u = update_u(init.V, init.theta, real, config.sigma2);
    init.aux.w = update_w(init.aux.u, init.V, init.theta, real, config.sigma2);
    (void)M;
    return init;
}

Eigen::VectorXcd snap_to_alphabet(const Eigen::VectorXcd& theta, const PhaseAlphabet& alphabet) {
    Eigen::VectorXcd out(theta.size());
    for (Eigen::Index n = 0; n < theta.size(); ++n) {
        const std::complex<double> z = theta[n];
        if (!alphabet.is_discrete()) {
            const double r = std::abs(z);
            out[n] = r > 0.0 ? z / r : std::complex<double>(1.0, 0.0);
        } else {
            int best = 0;
            double best_d = std::abs(z - alphabet.vertex(0));
            for (int m = 1; m < alphabet.levels; ++m) {
                const double d = std::abs(z - alphabet.vertex(m));
                if (d < best_d - 1e-15) {  // ties keep the lowest index
                    best_d = d;
                    best = m;
                }
            }
            out[n] = alphabet.vertex(best);
        }
    }
    return out;
}

FinalizeResult finalize(const Eigen::VectorXcd& theta_relaxed, const PhaseAlphabet& alphabet,
                        const BeamformerSet& V, const AuxState& aux,
                        const ChannelRealization& real, const SystemConfig& config,
                        const InnerOptions& inner) {
    FinalizeResult fin;
    fin.theta = snap_to_alphabet(theta_relaxed, alphabet);
    InnerResult res = solve_inner(V, aux, fin.theta, real, config.sigma2, config.p_max,
                                  /*lambda=*/0.0, inner);
    fin.V = std::move(res.V);
    fin.aux = std::move(res.aux);
    fin.sum_rate_nats = sum_rate(fin.V, fin.theta, real, config.sigma2);
    return fin;
}

namespace {

double stacked_diff2(const BeamformerSet& a, const BeamformerSet& b) {
    double d = 0.0;
    for (size_t k = 0; k < a.v.size(); ++k) d += (a.v[k] - b.v[k]).squaredNorm();
    return d;
}

}  // namespace

SolveReport solve(const SystemConfig& config, const ChannelRealization& real,
                  const Initialization& init, const SolveOptions& opt) {
    const auto t_start = std::chrono::steady_clock::now();
    config.validate();

    BeamformerSet V = init.V;
    AuxState aux = init.aux;
    Eigen::VectorXcd theta = init.theta;
    double lambda = opt.schedule.lambda0;

    SolveReport report;
    auto record = [&](int t) {
        report.trace.push_back({t, lambda, phi_lambda(V, aux, theta, real, config.sigma2, lambda),
                                sum_rate(V, theta, real, config.sigma2),
                                max_alphabet_distance(theta, config.alphabet)});
    };
    record(0);

    report.termination = "max_outer";
    for (int t = 1; t <= opt.stopping.max_outer; ++t) {
        const BeamformerSet V_prev = V;
        const Eigen::VectorXcd theta_prev = theta;

        InnerResult inner = opt.warm_start
                                ? solve_inner(std::move(V), std::move(aux), theta, real,
                                              config.sigma2, config.p_max, lambda, opt.inner)
                                : solve_inner(init.V, init.aux, theta, real, config.sigma2,
                                              config.p_max, lambda, opt.inner);
        V = std::move(inner.V);
        aux = std::move(inner.aux);

        if (config.N > 0) {
            const QuadraticForm qf = assemble_quadratic(V, aux.u, aux.w, real, config.sigma2);
            // Seed the phase subproblem from the better of the current iterate
            // and the projected unconstrained minimizer of the convex part.
            // The subproblem objective is nonconvex once the penalty is
            // subtracted, so the extra candidate helps escape poor basins;
            // descent is preserved because the seed never scores worse than
            // the current iterate and the subproblem returns its best visited
            // point.
            Eigen::VectorXcd start = theta;
            Eigen::MatrixXcd ridged = qf.A;
            ridged.diagonal().array() += 1e-12 * (1.0 + qf.A.trace().real() / config.N);
            const Eigen::VectorXcd newton =
                project_hull((-ridged.ldlt().solve(qf.b)).eval(), config.alphabet);
            if (newton.allFinite() &&
                qf.f_lambda(newton, lambda) < qf.f_lambda(start, lambda))
                start = newton;
            theta = gemm_solve(qf, lambda, start, config.alphabet, opt.gemm).theta;
        }

        record(t);
        report.iterations = t;
        if (!std::isfinite(report.trace.back().phi))
            throw std::runtime_error("solve: non-finite objective");

        const double diff = stacked_diff2(V, V_prev) + (theta - theta_prev).squaredNorm();
        if (diff < opt.stopping.tol) {
            report.termination = "converged";
            break;
        }
        if (t % opt.schedule.J == 0 && lambda < opt.schedule.lambda_cap)
            lambda = std::min(lambda * opt.schedule.growth, opt.schedule.lambda_cap);
    }

    FinalizeResult fin = finalize(theta, config.alphabet, V, aux, real, config, opt.inner);
    report.theta = std::move(fin.theta);
    report.V = std::move(fin.V);
    report.sum_rate_nats = fin.sum_rate_nats;
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

SolveReport solve(const SystemConfig& config, const ChannelRealization& real,
                  std::mt19937_64& rng, const SolveOptions& opt) {
    SolveReport best = solve(config, real, default_init(config, real, rng), opt);
    for (int r = 1; r < opt.restarts; ++r) {
        SolveReport cand = solve(config, real, default_init(config, real, rng), opt);
        if (cand.sum_rate_nats > best.sum_rate_nats) best = std::move(cand);
    }
    return best;
}

}  // namespace irsopt
