// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "irsopt/rate_core.hpp"

namespace irsopt {

/// Theta-subproblem data: sum_k w_k e_k = theta^H A theta + 2 Re(b^H theta) + c0.
struct QuadraticForm {
    Eigen::MatrixXcd A;   // Hermitian PSD, N x N
    Eigen::VectorXcd b;   // length N
    double c0 = 0.0;

    /// theta^H A theta + 2 Re(b^H theta)
    double quad(const Eigen::VectorXcd& theta) const;
    /// f_lambda(theta) = quad(theta) - lambda ||theta||^2
    double f_lambda(const Eigen::VectorXcd& theta, double lambda) const;
};

QuadraticForm assemble_quadratic(const BeamformerSet& V, const Eigen::VectorXcd& u,
                                 const Eigen::VectorXd& w, const ChannelRealization& real,
                                 const Eigen::VectorXd& sigma2);

/// G_lambda(theta | theta_bar): f_lambda with the concave -lambda||theta||^2
/// term linearized at theta_bar. Tight at theta = theta_bar.
double surrogate_value(const QuadraticForm& qf, const Eigen::VectorXcd& theta,
                       const Eigen::VectorXcd& theta_bar, double lambda);

/// Real-parametrization gradient packed as a complex vector: 2(A theta + b - lambda theta_bar).
Eigen::VectorXcd surrogate_gradient(const QuadraticForm& qf, const Eigen::VectorXcd& theta,
                                    const Eigen::VectorXcd& theta_bar, double lambda);

/// Projection onto the unit disk.
std::complex<double> project_disk(std::complex<double> z);

/// Exact Euclidean projection onto the convex hull of {omega^0,...,omega^{L-1}},
/// omega = exp(j*2*pi/L). For L = 2 the hull is the real segment [-1, 1].
std::complex<double> project_polygon(std::complex<double> z, int L);

std::complex<double> project_hull(std::complex<double> z, const PhaseAlphabet& alphabet);
Eigen::VectorXcd project_hull(const Eigen::VectorXcd& z, const PhaseAlphabet& alphabet);

/// Distance from z to the alphabet itself (not the hull).
double alphabet_distance(std::complex<double> z, const PhaseAlphabet& alphabet);
double max_alphabet_distance(const Eigen::VectorXcd& theta, const PhaseAlphabet& alphabet);

struct GemmOptions {
    double eps = 1e-5;       // ||theta_next - theta|| stopping threshold
    int max_iter = 500;
    bool exact_mm = false;   // full APG per MM linearization instead of one step
    int exact_inner_max = 200;
    bool alt_momentum = false;  // zeta_l = (eta_{l-1} - 1)/eta_l variant
};

struct GemmResult {
    Eigen::VectorXcd theta;
    int iterations = 0;
};

/// Extrapolated projected-gradient descent on the MM surrogate of
/// f_lambda over the per-element hull, with backtracking on the step.
/// Throws std::runtime_error on a non-finite gradient.
GemmResult gemm_solve(const QuadraticForm& qf, double lambda, const Eigen::VectorXcd& theta0,
                      const PhaseAlphabet& alphabet, const GemmOptions& opt = {});

}  // namespace irsopt
