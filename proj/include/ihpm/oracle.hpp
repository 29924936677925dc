#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ihpm/flow.hpp"

namespace ihpm {

// Numerical reference solution of the coupled boundary-value problem,
// produced independently of the perturbation series: classical fixed-step
// RK4 on the 8-dimensional first-order system plus Newton shooting on the
// four unknown initial derivatives (f''(0), f'''(0), theta'(0), phi'(0)).
struct OracleSolution {
    std::vector<double> eta;
    std::vector<double> f;
    std::vector<double> fprime;
    std::vector<double> theta;
    std::vector<double> phi;
    std::array<double, 4> shoot_unknowns{};
    // (f(1) - 1/2, f'(1), theta(1), phi(1))
    std::array<double, 4> terminal_residuals{};
    double theta_slope1 = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct ShootOptions {
    int steps = 400;
    int max_iterations = 50;
    double tol = 1e-8;
};

namespace detail {

using State = std::array<double, 8>;  // f, f', f'', f''', theta, theta', phi, phi'

inline State system_rhs(double eta, const State& y, const FlowParams& p) {
    const double f = y[0], fp = y[1], fpp = y[2], fppp = y[3];
    const double tp = y[5], pp = y[7];
    const double f4 = p.S * (eta * fppp + 3.0 * fpp - 2.0 * f * fppp) + p.M * p.M * fpp;
    const double t2 = -p.Pr * p.S * (2.0 * f * tp - eta * tp) - p.Pr * p.Nb * tp * pp -
                      p.Pr * p.Nt * tp * tp;
    double p2 = -p.Le * p.S * (2.0 * f * pp - eta * pp);
    if (p.Nt != 0.0) p2 -= (p.Nt / p.Nb) * t2;
    return {fp, fpp, fppp, f4, tp, t2, pp, p2};
}

inline State rk4_step(double eta, const State& y, double h, const FlowParams& p) {
    const State k1 = system_rhs(eta, y, p);
    State mid;
    for (int i = 0; i < 8; ++i) mid[i] = y[i] + 0.5 * h * k1[i];
    const State k2 = system_rhs(eta + 0.5 * h, mid, p);
    for (int i = 0; i < 8; ++i) mid[i] = y[i] + 0.5 * h * k2[i];
    const State k3 = system_rhs(eta + 0.5 * h, mid, p);
    State end;
    for (int i = 0; i < 8; ++i) end[i] = y[i] + h * k3[i];
    const State k4 = system_rhs(eta + h, end, p);
    State next;
    for (int i = 0; i < 8; ++i)
        next[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return next;
}

inline void validate_oracle_params(const FlowParams& p, int steps) {
    if (steps < 100) throw std::invalid_argument("oracle: need at least 100 integration steps");
    if (p.Nt != 0.0 && p.Nb == 0.0)
        throw std::domain_error("oracle: Nb must be nonzero when Nt != 0");
}

// 4x4 Gaussian elimination with partial pivoting; false when singular.
inline bool solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4>& b) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 4; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (a[pivot][col] == 0.0) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < 4; ++row) {
            const double m = a[row][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[row][c] -= m * a[col][c];
            b[row] -= m * b[col];
        }
    }
    for (int row = 3; row >= 0; --row) {
        for (int c = row + 1; c < 4; ++c) b[row] -= a[row][c] * b[c];
        b[row] /= a[row][row];
    }
    return true;
}

inline double max_abs(const std::array<double, 4>& v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace detail

// Integrates the initial-value problem from eta = 0 to 1 starting at
// (A, 0, u0, u1, 1, u2, 1, u3) and records the trajectory at every step.
// A non-finite state aborts with a diagnostic.
inline OracleSolution integrate_ivp(const FlowParams& p, const std::array<double, 4>& unknowns,
                                    int steps) {
    detail::validate_oracle_params(p, steps);
    OracleSolution sol;
    sol.shoot_unknowns = unknowns;
    sol.eta.reserve(static_cast<size_t>(steps) + 1);
    sol.f.reserve(static_cast<size_t>(steps) + 1);
    sol.fprime.reserve(static_cast<size_t>(steps) + 1);
    sol.theta.reserve(static_cast<size_t>(steps) + 1);
    sol.phi.reserve(static_cast<size_t>(steps) + 1);

    detail::State y{p.A, 0.0, unknowns[0], unknowns[1], 1.0, unknowns[2], 1.0, unknowns[3]};
    const double h = 1.0 / static_cast<double>(steps);
    for (int i = 0; i <= steps; ++i) {
        const double eta = static_cast<double>(i) / static_cast<double>(steps);
        for (const double v : y)
            if (!std::isfinite(v))
                throw std::runtime_error("oracle: state blew up near eta = " + std::to_string(eta));
        sol.eta.push_back(eta);
        sol.f.push_back(y[0]);
        sol.fprime.push_back(y[1]);
        sol.theta.push_back(y[4]);
        sol.phi.push_back(y[6]);
        if (i == steps) break;
        y = detail::rk4_step(eta, y, h, p);
    }
    sol.terminal_residuals = {y[0] - 0.5, y[1], y[4], y[6]};
    sol.theta_slope1 = y[5];
    return sol;
}

// Damped Newton iteration on the four unknown initial derivatives, driving
// the four terminal residuals below tol. The Jacobian comes from forward
// finite differences (1e-6 relative perturbation, 1e-8 floor); a step that
// does not reduce the residual norm is halved up to 8 times. Non-convergence
// is reported through the converged flag, not an exception.
inline OracleSolution shoot(const FlowParams& p, const std::array<double, 4>& guess,
                            const ShootOptions& opts = {}) {
    detail::validate_oracle_params(p, opts.steps);
    std::array<double, 4> u = guess;
    OracleSolution best = integrate_ivp(p, u, opts.steps);
    double best_norm = detail::max_abs(best.terminal_residuals);

    int iter = 0;
    while (best_norm > opts.tol && iter < opts.max_iterations) {
        ++iter;
        std::array<std::array<double, 4>, 4> jac{};
        for (int col = 0; col < 4; ++col) {
            const double delta = std::max(1e-6 * std::abs(u[col]), 1e-8);
            std::array<double, 4> bumped = u;
            bumped[col] += delta;
            const OracleSolution probe = integrate_ivp(p, bumped, opts.steps);
            for (int row = 0; row < 4; ++row)
                jac[row][col] =
                    (probe.terminal_residuals[row] - best.terminal_residuals[row]) / delta;
        }
        std::array<double, 4> step = {-best.terminal_residuals[0], -best.terminal_residuals[1],
                                      -best.terminal_residuals[2], -best.terminal_residuals[3]};
        if (!detail::solve4(jac, step))
            throw std::runtime_error("oracle: singular shooting Jacobian");

        double lambda = 1.0;
        std::array<double, 4> candidate_u = u;
        OracleSolution candidate;
        double candidate_norm = 0.0;
        for (int halving = 0;; ++halving) {
            for (int i = 0; i < 4; ++i) candidate_u[i] = u[i] + lambda * step[i];
            candidate = integrate_ivp(p, candidate_u, opts.steps);
            candidate_norm = detail::max_abs(candidate.terminal_residuals);
            if (candidate_norm < best_norm || halving == 8) break;
            lambda *= 0.5;
        }
        u = candidate_u;
        best = std::move(candidate);
        best_norm = candidate_norm;
    }
    best.converged = best_norm <= opts.tol;
    best.iterations = iter;
    return best;
}

// Initial shooting guess taken from the series solution's derivatives at 0.
inline std::array<double, 4> hpm_shoot_guess(const HpmSolution& sol) {
    const Polynomial f = sol.f_sum();
    const Polynomial theta = sol.theta_sum();
    const Polynomial phi = sol.phi_sum();
    return {f.derivative(2)(0.0), f.derivative(3)(0.0), theta.derivative(1)(0.0),
            phi.derivative(1)(0.0)};
}

// Grid-wise disagreement between the series solution and the oracle.
struct ErrorReport {
    double max_f = 0.0, rms_f = 0.0;
    double max_fprime = 0.0, rms_fprime = 0.0;
    double max_theta = 0.0, rms_theta = 0.0;
    double max_phi = 0.0, rms_phi = 0.0;
    double nusselt_diff = 0.0;
};

inline ErrorReport compare(const HpmSolution& hpm, const OracleSolution& oracle) {
    if (oracle.eta.empty()) throw std::invalid_argument("compare: empty oracle trajectory");
    const Polynomial f = hpm.f_sum();
    const Polynomial fp = f.derivative();
    const Polynomial theta = hpm.theta_sum();
    const Polynomial phi = hpm.phi_sum();

    ErrorReport report;
    double sq_f = 0.0, sq_fp = 0.0, sq_theta = 0.0, sq_phi = 0.0;
    for (size_t i = 0; i < oracle.eta.size(); ++i) {
        const double eta = oracle.eta[i];
        const double df = std::abs(f(eta) - oracle.f[i]);
        const double dfp = std::abs(fp(eta) - oracle.fprime[i]);
        const double dt = std::abs(theta(eta) - oracle.theta[i]);
        const double dp = std::abs(phi(eta) - oracle.phi[i]);
        report.max_f = std::max(report.max_f, df);
        report.max_fprime = std::max(report.max_fprime, dfp);
        report.max_theta = std::max(report.max_theta, dt);
        report.max_phi = std::max(report.max_phi, dp);
        sq_f += df * df;
        sq_fp += dfp * dfp;
        sq_theta += dt * dt;
        sq_phi += dp * dp;
    }
    const double n = static_cast<double>(oracle.eta.size());
    report.rms_f = std::sqrt(sq_f / n);
    report.rms_fprime = std::sqrt(sq_fp / n);
    report.rms_theta = std::sqrt(sq_theta / n);
    report.rms_phi = std::sqrt(sq_phi / n);
    report.nusselt_diff = std::abs(nusselt(hpm) - (-oracle.theta_slope1));
    return report;
}

}  // namespace ihpm
