// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace irsopt {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

enum class PhaseKind { ContinuousUnitModulus, DiscreteLevels };

/// Per-element feasible set: unit circle, or L equally spaced unit-modulus points.
struct PhaseAlphabet {
    PhaseKind kind = PhaseKind::ContinuousUnitModulus;
    int levels = 0;  // L, only for DiscreteLevels (L >= 2)

    static PhaseAlphabet continuous() { return {PhaseKind::ContinuousUnitModulus, 0}; }
    static PhaseAlphabet discrete(int L);

    bool is_discrete() const { return kind == PhaseKind::DiscreteLevels; }
    /// omega^m for the discrete alphabet, omega = exp(j*2*pi/L).
    std::complex<double> vertex(int m) const;
};

struct Geometry {
    Eigen::Vector2d bs{0.0, 0.0};
    Eigen::Vector2d irs{50.0, 0.0};
    Eigen::Vector2d user_center{40.0, 20.0};
    double user_radius = 10.0;
};

struct PathLossModel {
    double c0_zeta_direct = 1e-3;    // -30 dB at 1 m, BS -> user
    double alpha_direct = 3.6;
    double c0_zeta_cascaded = 1e-4;  // -40 dB product gain, BS -> IRS -> user
    double alpha_bs_irs = 2.2;
    double alpha_irs_user = 2.2;
};

struct SystemConfig {
    int M = 8;   // BS antennas
    int K = 8;   // users
    int N = 100; // IRS elements (0 = no IRS)
    double eta = 1.0;           // reflection coefficient, in [0,1]
    Eigen::VectorXd sigma2;     // per-user noise power, watts
    double p_max = dbm_to_watts(5.0);  // transmit power budget, watts
    PhaseAlphabet alphabet = PhaseAlphabet::continuous();
    Geometry geometry;
    PathLossModel pathloss;

    void validate() const;  // throws std::invalid_argument on violation
    static SystemConfig reference_default();
};

struct ChannelRealization {
    Eigen::MatrixXcd G;                 // N x M, BS -> IRS
    std::vector<Eigen::VectorXcd> h_d;  // K vectors of length M, BS -> user
    std::vector<Eigen::VectorXcd> h_r;  // K vectors of length N, IRS -> user
    std::vector<Eigen::MatrixXcd> H_r;  // K matrices M x N, sqrt(eta) G^H Diag(h_r)
    std::vector<Eigen::Vector2d> user_pos;

    int num_users() const { return static_cast<int>(h_d.size()); }
};

/// L(d) = c0_zeta * d^(-alpha). Throws std::domain_error for d <= 0.
double path_loss(double d, double c0_zeta, double alpha);

/// Draws one channel realization: user positions uniform in the disk, all
/// small-scale fading i.i.d. circularly-symmetric complex Gaussian with
/// per-entry variance equal to the link's large-scale gain. The cascaded
/// product gain is split evenly (sqrt each) between the two hops.
ChannelRealization sample_realization(const SystemConfig& config, std::mt19937_64& rng);

/// h_k(theta) = h_{d,k} + H_{r,k} theta. Throws on dimension mismatch.
Eigen::VectorXcd effective_channel(const ChannelRealization& real, int k,
                                   const Eigen::VectorXcd& theta);

}  // namespace irsopt
