// SPDX-License-Identifier: Apache-2.0
#include "irsopt/phase_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irsopt {

double QuadraticForm::quad(const Eigen::VectorXcd& theta) const {
    return (theta.dot(A * theta)).real() + 2.0 * b.dot(theta).real();
}

double QuadraticForm::f_lambda(const Eigen::VectorXcd& theta, double lambda) const {
    return quad(theta) - lambda * theta.squaredNorm();
}

QuadraticForm assemble_quadratic(const BeamformerSet& V, const Eigen::VectorXcd& u,
                                 const Eigen::VectorXd& w, const ChannelRealization& real,
                                 const Eigen::VectorXd& sigma2) {
    const int K = real.num_users();
    const int N = static_cast<int>(real.G.rows());

    QuadraticForm qf;
    qf.A = Eigen::MatrixXcd::Zero(N, N);
    qf.b = Eigen::VectorXcd::Zero(N);
    qf.c0 = 0.0;

    for (int k = 0; k < K; ++k) {
        const double wu2 = w[k] * std::norm(u[k]);
        double c0_k = sigma2[k] * std::norm(u[k]);
        for (int j = 0; j < K; ++j) {
            const std::complex<double> a_kj = real.h_d[k].dot(V.v[j]);  // h_d^H v_j
            const Eigen::VectorXcd c_kj = real.H_r[k].adjoint() * V.v[j];
            qf.A.noalias() += wu2 * c_kj * c_kj.adjoint();
            qf.b += wu2 * std::conj(a_kj) * c_kj;
            if (j == k) {
                qf.b -= w[k] * std::conj(u[k]) * c_kj;
                c0_k += std::norm(1.0 - std::conj(u[k]) * a_kj);
            } else {
                c0_k += std::norm(u[k]) * std::norm(a_kj);
            }
        }
        qf.c0 += w[k] * c0_k;
    }
    qf.A = 0.5 * (qf.A + qf.A.adjoint()).eval();  // enforce exact Hermitian symmetry
    return qf;
}

double surrogate_value(const QuadraticForm& qf, const Eigen::VectorXcd& theta,
                       const Eigen::VectorXcd& theta_bar, double lambda) {
    return qf.quad(theta) -
           lambda * (theta_bar.squaredNorm() + 2.0 * theta_bar.dot(theta - theta_bar).real());
}

Eigen::VectorXcd surrogate_gradient(const QuadraticForm& qf, const Eigen::VectorXcd& theta,
                                    const Eigen::VectorXcd& theta_bar, double lambda) {
    return 2.0 * (qf.A * theta + qf.b - lambda * theta_bar);
}

std::complex<double> project_disk(std::complex<double> z) {
    const double r = std::abs(z);
    return r <= 1.0 ? z : z / r;
}

std::complex<double> project_polygon(std::complex<double> z, int L) {
    if (L < 2) throw std::invalid_argument("project_polygon: L must be >= 2");
    if (L == 2) {
        // hull degenerates to the real segment [-1, 1]
        return std::clamp(z.real(), -1.0, 1.0);
    }
    const double sector = 2.0 * std::numbers::pi / L;
    double phi = std::arg(z);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    int m = static_cast<int>(std::floor(phi / sector));
    m = std::clamp(m, 0, L - 1);

    // The binding half-plane for a point with angle in sector m is the edge
    // between omega^m and omega^{m+1}, outward normal at angle (2m+1)pi/L.
    const std::complex<double> normal = std::polar(1.0, (2.0 * m + 1.0) * std::numbers::pi / L);
    if ((z * std::conj(normal)).real() <= std::cos(std::numbers::pi / L)) return z;

    const std::complex<double> a = std::polar(1.0, sector * m);
    const std::complex<double> b = std::polar(1.0, sector * (m + 1));
    const std::complex<double> edge = b - a;
    const double t = std::clamp(((z - a) * std::conj(edge)).real() / std::norm(edge), 0.0, 1.0);
    return a + t * edge;
}

std::complex<double> project_hull(std::complex<double> z, const PhaseAlphabet& alphabet) {
    return alphabet.is_discrete() ? project_polygon(z, alphabet.levels) : project_disk(z);
}

Eigen::VectorXcd project_hull(const Eigen::VectorXcd& z, const PhaseAlphabet& alphabet) {
    Eigen::VectorXcd out(z.size());
    for (Eigen::Index n = 0; n < z.size(); ++n) out[n] = project_hull(z[n], alphabet);
    return out;
}

double alphabet_distance(std::complex<double> z, const PhaseAlphabet& alphabet) {
    if (!alphabet.is_discrete()) return std::abs(std::abs(z) - 1.0);
    double d = std::numeric_limits<double>::infinity();
    for (int m = 0; m < alphabet.levels; ++m) d = std::min(d, std::abs(z - alphabet.vertex(m)));
    return d;
}

double max_alphabet_distance(const Eigen::VectorXcd& theta, const PhaseAlphabet& alphabet) {
    double d = 0.0;
    for (Eigen::Index n = 0; n < theta.size(); ++n)
        d = std::max(d, alphabet_distance(theta[n], alphabet));
    return d;
}

namespace {

double estimate_rho(const Eigen::MatrixXcd& A) {
    const int N = static_cast<int>(A.rows());
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(N);
    for (int n = 0; n < N; ++n) v[n] += std::complex<double>(0.0, 1e-3 * (n + 1));
    v.normalize();
    double lmax = 0.0;
    for (int i = 0; i < 10; ++i) {
        Eigen::VectorXcd av = A * v;
        lmax = av.norm();
        if (lmax == 0.0) break;
        v = av / lmax;
    }
    return std::max(2.0 * lmax, 1e-8);
}

struct Momentum {
    double eta_prev = 0.0;  // eta_{-1} = 0
    bool alt = false;

    double next() {
        const double eta = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * eta_prev * eta_prev));
        const double zeta = alt ? (eta_prev - 1.0) / eta : (eta - 1.0) / eta;
        eta_prev = eta;
        return zeta;
    }
};

// One backtracked projected-gradient step on G_lambda(.|theta_bar) from
// extrapolated point z. Doubles rho until the quadratic upper bound holds.
Eigen::VectorXcd apg_step(const QuadraticForm& qf, double lambda,
                          const Eigen::VectorXcd& theta_bar, const Eigen::VectorXcd& z,
                          const PhaseAlphabet& alphabet, double& rho) {
    const Eigen::VectorXcd grad = surrogate_gradient(qf, z, theta_bar, lambda);
    if (!grad.allFinite()) throw std::runtime_error("gemm_solve: non-finite gradient");
    const double gz = surrogate_value(qf, z, theta_bar, lambda);
    for (int bt = 0; bt < 60; ++bt) {
        const Eigen::VectorXcd cand = project_hull(z - grad / rho, alphabet);
        const Eigen::VectorXcd d = cand - z;
        const double bound = gz + grad.dot(d).real() + 0.5 * rho * d.squaredNorm();
        const double gc = surrogate_value(qf, cand, theta_bar, lambda);
        if (gc <= bound + 1e-12 * (1.0 + std::abs(gc))) return cand;
        rho *= 2.0;
    }
    return project_hull(z - grad / rho, alphabet);
}

}  // namespace

GemmResult gemm_solve(const QuadraticForm& qf, double lambda, const Eigen::VectorXcd& theta0,
                      const PhaseAlphabet& alphabet, const GemmOptions& opt) {
    GemmResult res;
    res.theta = theta0;
    if (theta0.size() == 0) return res;

    double rho = estimate_rho(qf.A);

    if (!opt.exact_mm) {
        Eigen::VectorXcd theta = theta0, theta_prev = theta0;
        // Extrapolation makes the raw iterates non-monotone in f_lambda;
        // returning the best visited iterate keeps the outer loop a descent.
        Eigen::VectorXcd best = theta0;
        double best_f = qf.f_lambda(theta0, lambda);
        Momentum mom{0.0, opt.alt_momentum};
        for (int l = 0; l < opt.max_iter; ++l) {
            const double zeta = mom.next();
            const Eigen::VectorXcd z = theta + zeta * (theta - theta_prev);
            Eigen::VectorXcd next = apg_step(qf, lambda, theta, z, alphabet, rho);
            const double delta = (next - theta).norm();
            theta_prev = std::move(theta);
            theta = std::move(next);
            const double f = qf.f_lambda(theta, lambda);
            if (f < best_f) {
                best_f = f;
                best = theta;
            }
            ++res.iterations;
            if (delta < opt.eps) break;
        }
        res.theta = std::move(best);
        return res;
    }

    // Exact MM: solve each linearized problem with a full APG run.
    Eigen::VectorXcd bar = theta0;
    Eigen::VectorXcd best = theta0;
    double best_f = qf.f_lambda(theta0, lambda);
    for (int l = 0; l < opt.max_iter; ++l) {
        Eigen::VectorXcd theta = bar, theta_prev = bar;
        Momentum mom{0.0, opt.alt_momentum};
        for (int i = 0; i < opt.exact_inner_max; ++i) {
            const double zeta = mom.next();
            const Eigen::VectorXcd z = theta + zeta * (theta - theta_prev);
            Eigen::VectorXcd next = apg_step(qf, lambda, bar, z, alphabet, rho);
            const double delta = (next - theta).norm();
            theta_prev = std::move(theta);
            theta = std::move(next);
            if (delta < opt.eps) break;
        }
        const double outer_delta = (theta - bar).norm();
        bar = std::move(theta);
        const double f = qf.f_lambda(bar, lambda);
        if (f < best_f) {
            best_f = f;
            best = bar;
        }
        ++res.iterations;
        if (outer_delta < opt.eps) break;
    }
    res.theta = std::move(best);
    return res;
}

}  // namespace irsopt
