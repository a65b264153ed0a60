// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irsopt/baselines.hpp"
#include "irsopt/rng.hpp"

using namespace irsopt;

namespace {

SystemConfig unit_config(int M, int K, int N) {
    SystemConfig c;
    c.M = M;
    c.K = K;
    c.N = N;
    c.sigma2 = Eigen::VectorXd::Ones(K);
    c.p_max = 10.0;
    c.pathloss = {1.0, 0.0, 1.0, 0.0, 0.0};
    return c;
}

}  // namespace

TEST_CASE("single-user no-IRS rate equals the MISO capacity") {
    const SystemConfig c = unit_config(4, 1, 6);
    for (int trial = 0; trial < 5; ++trial) {
        auto rng = trial_stream(61, trial);
        const ChannelRealization real = sample_realization(c, rng);
        const SolveReport rep = no_irs_wmmse(c, real, rng);
        const double capacity = std::log1p(c.p_max * real.h_d[0].squaredNorm() / c.sigma2[0]);
        CHECK(rep.sum_rate_nats == doctest::Approx(capacity).epsilon(1e-6));
    }
}

TEST_CASE("exhaustive search with N=1, L=2 picks the better of the two candidates") {
    SystemConfig c = unit_config(2, 2, 1);
    auto rng = trial_stream(62, 0);
    const ChannelRealization real = sample_realization(c, rng);
    const ExhaustiveResult best = exhaustive_discrete(c, real, 2);

    // recompute both candidates directly
    double best_direct = -1.0;
    for (double s : {1.0, -1.0}) {
        Eigen::VectorXcd theta(1);
        theta << std::complex<double>(s, 0.0);
        SystemConfig dp = c;
        dp.alphabet = PhaseAlphabet::discrete(2);
        auto r2 = trial_stream(62, 1);
        Initialization init = default_init(dp, real, r2);
        const InnerResult res = solve_inner(init.V, init.aux, theta, real, c.sigma2, c.p_max, 0.0,
                                            {1e-10, 500});
        best_direct = std::max(best_direct, sum_rate(res.V, theta, real, c.sigma2));
    }
    CHECK(best.sum_rate_nats == doctest::Approx(best_direct).epsilon(1e-4));
}

TEST_CASE("exhaustive search is deterministic and enforces the size cap") {
    SystemConfig c = unit_config(2, 2, 3);
    auto rng = trial_stream(63, 0);
    const ChannelRealization real = sample_realization(c, rng);
    const ExhaustiveResult a = exhaustive_discrete(c, real, 2);
    const ExhaustiveResult b = exhaustive_discrete(c, real, 2);
    CHECK(a.sum_rate_nats == b.sum_rate_nats);
    CHECK(a.theta == b.theta);

    SystemConfig too_big = unit_config(2, 2, 21);
    const ChannelRealization real2 = sample_realization(too_big, rng);
    CHECK_THROWS_AS(exhaustive_discrete(too_big, real2, 2), std::invalid_argument);
}

TEST_CASE("oracle dominates the proposed and quantized rates on tiny instances") {
    SystemConfig c = unit_config(2, 2, 4);
    c.alphabet = PhaseAlphabet::discrete(2);
    for (int trial = 0; trial < 5; ++trial) {
        auto rng = trial_stream(64, trial);
        const ChannelRealization real = sample_realization(c, rng);
        const SolveReport proposed = solve(c, real, rng);

        SystemConfig cp = c;
        cp.alphabet = PhaseAlphabet::continuous();
        const SolveReport cont = solve(cp, real, rng);
        const FinalizeResult quant = quantize_baseline(cont, 2, real, c);

        const ExhaustiveResult oracle = exhaustive_discrete(c, real, 2);
        CHECK(oracle.sum_rate_nats >= proposed.sum_rate_nats - 1e-6);
        CHECK(oracle.sum_rate_nats >= quant.sum_rate_nats - 1e-6);
    }
}

TEST_CASE("fine quantization recovers the continuous rate") {
    SystemConfig c = unit_config(3, 2, 6);
    auto rng = trial_stream(65, 0);
    const ChannelRealization real = sample_realization(c, rng);
    const SolveReport cont = solve(c, real, rng);
    const FinalizeResult q = quantize_baseline(cont, 1024, real, c);
    CHECK(q.sum_rate_nats == doctest::Approx(cont.sum_rate_nats).epsilon(1e-3));
}

TEST_CASE("coarse quantization cannot beat the continuous solution on average") {
    SystemConfig c = unit_config(3, 2, 6);
    double cont_mean = 0.0, quant_mean = 0.0;
    const int trials = 10;
    for (int trial = 0; trial < trials; ++trial) {
        auto rng = trial_stream(66, trial);
        const ChannelRealization real = sample_realization(c, rng);
        const SolveReport cont = solve(c, real, rng);
        cont_mean += cont.sum_rate_nats;
        quant_mean += quantize_baseline(cont, 2, real, c).sum_rate_nats;
    }
    CHECK(quant_mean / trials <= cont_mean / trials + 1e-9);
}

TEST_CASE("fd_gradient recovers the analytic gradient of a quadratic") {
    auto rng = trial_stream(67, 0);
    const int N = 4;
    Eigen::MatrixXcd R(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) R(i, j) = randn_c(rng);
    const Eigen::MatrixXcd A = R.adjoint() * R;
    Eigen::VectorXcd b(N), x(N);
    for (int n = 0; n < N; ++n) {
        b[n] = randn_c(rng);
        x[n] = randn_c(rng);
    }
    auto f = [&](const Eigen::VectorXcd& t) {
        return (t.dot(A * t)).real() + 2.0 * b.dot(t).real();
    };
    const Eigen::VectorXcd analytic = 2.0 * (A * x + b);
    const Eigen::VectorXcd fd = fd_gradient(f, x, 1e-6);
    CHECK((analytic - fd).norm() <= 1e-5 * std::max(1.0, analytic.norm()));
}

TEST_CASE("polygon oracle: L=2 is the segment projection and outputs stay in the hull") {
    auto rng = trial_stream(68, 0);
    for (int i = 0; i < 200; ++i) {
        const std::complex<double> z = 3.0 * randn_c(rng);
        const std::complex<double> p2 = polygon_projection_oracle(z, 2);
        CHECK(std::abs(p2.imag()) <= 1e-12);
        CHECK(p2.real() == doctest::Approx(std::clamp(z.real(), -1.0, 1.0)));

        for (int L : {3, 4, 8}) {
            const std::complex<double> p = polygon_projection_oracle(z, L);
            // hull membership: inside every supporting half-plane
            for (int m = 0; m < L; ++m) {
                const std::complex<double> normal =
                    std::polar(1.0, (2.0 * m + 1.0) * std::numbers::pi / L);
                CHECK((p * std::conj(normal)).real() <=
                      std::cos(std::numbers::pi / L) + 1e-12);
            }
        }
    }
}
