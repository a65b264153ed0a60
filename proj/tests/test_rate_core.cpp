// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irsopt/rate_core.hpp"
#include "irsopt/rng.hpp"
#include "irsopt/wmmse.hpp"

using namespace irsopt;

namespace {

// Scalar single-link fixture: M = N = 1, all channels 1.
ChannelRealization scalar_real(int K) {
    ChannelRealization real;
    real.G = Eigen::MatrixXcd::Ones(1, 1);
    for (int k = 0; k < K; ++k) {
        real.h_d.push_back(Eigen::VectorXcd::Ones(1));
        real.h_r.push_back(Eigen::VectorXcd::Ones(1));
        real.H_r.push_back(real.G.adjoint() * real.h_r[k].asDiagonal());
    }
    return real;
}

ChannelRealization random_real(int M, int K, int N, std::mt19937_64& rng) {
    ChannelRealization real;
    real.G.resize(N, M);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < M; ++m) real.G(n, m) = randn_c(rng);
    for (int k = 0; k < K; ++k) {
        Eigen::VectorXcd hd(M), hr(N);
        for (int m = 0; m < M; ++m) hd[m] = randn_c(rng);
        for (int n = 0; n < N; ++n) hr[n] = randn_c(rng);
        real.h_d.push_back(hd);
        real.h_r.push_back(hr);
        real.H_r.push_back(real.G.adjoint() * hr.asDiagonal());
    }
    return real;
}

BeamformerSet random_V(int M, int K, std::mt19937_64& rng) {
    BeamformerSet V;
    V.v.resize(K);
    for (int k = 0; k < K; ++k) {
        V.v[k].resize(M);
        for (int m = 0; m < M; ++m) V.v[k][m] = randn_c(rng);
    }
    return V;
}

}  // namespace

TEST_CASE("single-user SINR has no interference term") {
    const ChannelRealization real = scalar_real(1);
    BeamformerSet V;
    V.v = {Eigen::VectorXcd::Ones(1) * 2.0};
    const Eigen::VectorXcd theta = Eigen::VectorXcd::Zero(1);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Constant(1, 0.5);
    // |h^H v|^2 / sigma^2 = 4 / 0.5
    CHECK(sinr(0, V, theta, real, sigma2) == doctest::Approx(8.0));
}

TEST_CASE("two-user scalar SINR is 0.5 with unit entries") {
    const ChannelRealization real = scalar_real(2);
    BeamformerSet V;
    V.v = {Eigen::VectorXcd::Ones(1), Eigen::VectorXcd::Ones(1)};
    const Eigen::VectorXcd theta = Eigen::VectorXcd::Zero(1);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Ones(2);
    CHECK(sinr(0, V, theta, real, sigma2) == doctest::Approx(0.5));
}

TEST_CASE("sinr matches a direct recomputation from effective channels") {
    auto rng = trial_stream(11, 0);
    const int M = 3, K = 3, N = 4;
    const ChannelRealization real = random_real(M, K, N, rng);
    const BeamformerSet V = random_V(M, K, rng);
    Eigen::VectorXcd theta(N);
    for (int n = 0; n < N; ++n) theta[n] = randn_c(rng);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Constant(K, 0.3);
    for (int k = 0; k < K; ++k) {
        const Eigen::VectorXcd h = effective_channel(real, k, theta);
        double interf = 0.0;
        for (int j = 0; j < K; ++j)
            if (j != k) interf += std::norm(h.dot(V.v[j]));
        const double expect = std::norm(h.dot(V.v[k])) / (sigma2[k] + interf);
        CHECK(sinr(k, V, theta, real, sigma2) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("sum rate is zero with zero beamformers and ln 2 in the unit scalar case") {
    const ChannelRealization real = scalar_real(1);
    const Eigen::VectorXcd theta = Eigen::VectorXcd::Zero(1);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Ones(1);
    BeamformerSet V0 = BeamformerSet::zeros(1, 1);
    CHECK(sum_rate(V0, theta, real, sigma2) == doctest::Approx(0.0));
    BeamformerSet V1;
    V1.v = {Eigen::VectorXcd::Ones(1)};
    CHECK(sum_rate(V1, theta, real, sigma2) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("mse trivial evaluations") {
    const ChannelRealization real = scalar_real(1);
    const Eigen::VectorXcd theta = Eigen::VectorXcd::Zero(1);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Ones(1);
    BeamformerSet V;
    V.v = {Eigen::VectorXcd::Ones(1)};
    CHECK(mse(0, 0.0, V, theta, real, sigma2) == doctest::Approx(1.0));
    // sigma^2 |u|^2 + |1 - u|^2 = 0.25 + 0.25
    CHECK(mse(0, 0.5, V, theta, real, sigma2) == doctest::Approx(0.5));
}

TEST_CASE("rate-MMSE identity: e_k at the optimal u equals 1/(1+SINR)") {
    auto rng = trial_stream(12, 0);
    const int M = 3, K = 3, N = 4;
    const ChannelRealization real = random_real(M, K, N, rng);
    const BeamformerSet V = random_V(M, K, rng);
    Eigen::VectorXcd theta(N);
    for (int n = 0; n < N; ++n) theta[n] = randn_c(rng);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Constant(K, 0.7);
    const Eigen::VectorXcd u = update_u(V, theta, real, sigma2);
    for (int k = 0; k < K; ++k) {
        const double e = mse(k, u[k], V, theta, real, sigma2);
        CHECK(e == doctest::Approx(1.0 / (1.0 + sinr(k, V, theta, real, sigma2))).epsilon(1e-9));
        CHECK(std::log1p(sinr(k, V, theta, real, sigma2)) ==
              doctest::Approx(-std::log(e)).epsilon(1e-8));
    }
}

TEST_CASE("variational identity: max_w (-wx + ln w + 1) = -ln x at w = 1/x") {
    auto rng = trial_stream(13, 0);
    std::uniform_real_distribution<double> expo(-6.0, 6.0);
    for (int i = 0; i < 100; ++i) {
        const double x = std::pow(10.0, expo(rng));
        const double w_star = 1.0 / x;
        const double at_star = -w_star * x + std::log(w_star) + 1.0;
        CHECK(at_star == doctest::Approx(-std::log(x)).epsilon(1e-12));
        // nearby w never beats the maximizer
        for (double f : {0.5, 0.9, 1.1, 2.0}) {
            const double w = w_star * f;
            CHECK(-w * x + std::log(w) + 1.0 <= at_star + 1e-12);
        }
    }
}

TEST_CASE("phi_lambda trivial cases and the w=0 convention") {
    const ChannelRealization real = scalar_real(2);
    const Eigen::VectorXcd theta = Eigen::VectorXcd::Zero(1);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Ones(2);
    const BeamformerSet V = BeamformerSet::zeros(2, 1);
    AuxState aux;
    aux.u = Eigen::VectorXcd::Zero(2);
    aux.w = Eigen::VectorXd::Ones(2);
    // u=0, w=1 -> each term w*1 - ln 1 = 1
    CHECK(phi_lambda(V, aux, theta, real, sigma2, 0.0) == doctest::Approx(2.0));
    // theta = 0 kills the penalty regardless of lambda
    CHECK(phi_lambda(V, aux, theta, real, sigma2, 123.0) == doctest::Approx(2.0));
    aux.w[0] = 0.0;
    CHECK(std::isinf(phi_lambda(V, aux, theta, real, sigma2, 0.0)));
}

TEST_CASE("phi_0 at the WMMSE-optimal auxiliaries equals K minus the sum rate") {
    auto rng = trial_stream(14, 0);
    const int M = 3, K = 3, N = 4;
    const ChannelRealization real = random_real(M, K, N, rng);
    const BeamformerSet V = random_V(M, K, rng);
    Eigen::VectorXcd theta(N);
    for (int n = 0; n < N; ++n) theta[n] = randn_c(rng);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Constant(K, 0.4);
    AuxState aux;
    aux.u = update_u(V, theta, real, sigma2);
    aux.w = update_w(aux.u, V, theta, real, sigma2);
    const double phi0 = phi_lambda(V, aux, theta, real, sigma2, 0.0);
    CHECK(phi0 == doctest::Approx(K - sum_rate(V, theta, real, sigma2)).epsilon(1e-9));
}

TEST_CASE("appendix identity: sum rate equals the variational maximum") {
    auto rng = trial_stream(15, 0);
    const int M = 2, K = 2, N = 3;
    const ChannelRealization real = random_real(M, K, N, rng);
    const BeamformerSet V = random_V(M, K, rng);
    Eigen::VectorXcd theta(N);
    for (int n = 0; n < N; ++n) theta[n] = randn_c(rng);
    const Eigen::VectorXd sigma2 = Eigen::VectorXd::Constant(K, 0.9);
    const Eigen::VectorXcd u = update_u(V, theta, real, sigma2);
    const Eigen::VectorXd w = update_w(u, V, theta, real, sigma2);
    double total = 0.0;
    for (int k = 0; k < K; ++k) {
        const double e = mse(k, u[k], V, theta, real, sigma2);
        total += -w[k] * e + std::log(w[k]) + 1.0;
    }
    CHECK(total == doctest::Approx(sum_rate(V, theta, real, sigma2)).epsilon(1e-9));
}
