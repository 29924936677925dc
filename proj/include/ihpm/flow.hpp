#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ihpm/hpm.hpp"
#include "ihpm/polynomial.hpp"

namespace ihpm {

// Nondimensional parameter group for one crisp problem instance:
//   S   squeeze number (S > 0: disks approaching, S < 0: separating)
//   A   suction/blowing parameter (A < 0 is injection); also f(0)
//   M   Hartmann number (magnetic forcing enters as M^2 f'')
//   Pr  Prandtl number
//   Nb  Brownian motion parameter
//   Nt  thermophoresis parameter
//   Le  Lewis number
struct FlowParams {
    double S = 1.0;
    double A = 1.0;
    double M = 1.0;
    double Pr = 1.0;
    double Nb = 0.1;
    double Nt = 0.1;
    double Le = 1.0;
};

// Perturbation-series solution: term k of each series solves the order-k
// linear problem. Term 0 carries the full boundary values
//   f(0)=A, f'(0)=0, f(1)=1/2, f'(1)=0, theta(0)=phi(0)=1, theta(1)=phi(1)=0
// and every later term is homogeneous, so each partial sum satisfies the
// full boundary conditions exactly.
struct HpmSolution {
    std::vector<Polynomial> f_terms;
    std::vector<Polynomial> theta_terms;
    std::vector<Polynomial> phi_terms;
    int order = 0;
    FlowParams params;

    // Partial sum of terms 0..upto (all terms when upto < 0).
    Polynomial f_sum(int upto = -1) const { return sum(f_terms, upto); }
    Polynomial theta_sum(int upto = -1) const { return sum(theta_terms, upto); }
    Polynomial phi_sum(int upto = -1) const { return sum(phi_terms, upto); }

    // Copy truncated to terms 0..k.
    HpmSolution truncated(int k) const {
        if (k < 0 || k > order) throw std::invalid_argument("HpmSolution::truncated: bad order");
        HpmSolution cut;
        cut.f_terms.assign(f_terms.begin(), f_terms.begin() + k + 1);
        cut.theta_terms.assign(theta_terms.begin(), theta_terms.begin() + k + 1);
        cut.phi_terms.assign(phi_terms.begin(), phi_terms.begin() + k + 1);
        cut.order = k;
        cut.params = params;
        return cut;
    }

private:
    static Polynomial sum(const std::vector<Polynomial>& terms, int upto) {
        const size_t stop = upto < 0 ? terms.size() : static_cast<size_t>(upto) + 1;
        Polynomial acc;
        for (size_t i = 0; i < stop && i < terms.size(); ++i) acc += terms[i];
        return acc;
    }
};

// Profiles sampled on an eta grid spanning [0, 1].
struct ProfileTable {
    std::vector<double> eta;
    std::vector<double> f;
    std::vector<double> fprime;
    std::vector<double> theta;
    std::vector<double> phi;
};

struct Order0 {
    Polynomial f;
    Polynomial theta;
    Polynomial phi;
};

namespace detail {

inline const Polynomial& eta_poly() {
    static const Polynomial eta{0.0, 1.0};
    return eta;
}

// Convolution sum over i + j = k of a_i * d(b_j)/deta^drv.
inline Polynomial convolve(std::span<const Polynomial> a, std::span<const Polynomial> b, int k,
                           int drv) {
    Polynomial acc;
    for (int i = 0; i <= k; ++i) acc += a[static_cast<size_t>(i)] * b[static_cast<size_t>(k - i)].derivative(drv);
    return acc;
}

// Convolution sum over i + j = k of a_i' * b_j'.
inline Polynomial convolve_derivatives(std::span<const Polynomial> a,
                                       std::span<const Polynomial> b, int k) {
    Polynomial acc;
    for (int i = 0; i <= k; ++i)
        acc += a[static_cast<size_t>(i)].derivative(1) * b[static_cast<size_t>(k - i)].derivative(1);
    return acc;
}

}  // namespace detail

// Zeroth-order (initial-guess) triple: f0'''' = 0 and theta0'' = phi0'' = 0
// under the full boundary values, giving
//   f0 = (2A - 1) eta^3 + (1.5 - 3A) eta^2 + A,  theta0 = phi0 = 1 - eta.
inline Order0 order0(const FlowParams& p) {
    Order0 terms;
    terms.f = solve_quartic_term({}, FourPointBC{p.A, 0.0, 0.5, 0.0});
    terms.theta = solve_second_term({}, TwoPointBC{1.0, 0.0});
    terms.phi = solve_second_term({}, TwoPointBC{1.0, 0.0});
    return terms;
}

// Order-k forcing of the momentum problem f_k'''' = rhs, from
//   f'''' - S (eta f''' + 3 f'' - 2 f f''') - M^2 f'' = 0:
//   rhs = S (eta f_{k-1}''' + 3 f_{k-1}'') - 2 S sum_{i+j=k-1} f_i f_j'''
//         + M^2 f_{k-1}''.
// (At k = 1 the construction also subtracts f0'''', identically zero for the
// cubic initial guess.)
inline Polynomial momentum_rhs(int k, std::span<const Polynomial> f_terms, const FlowParams& p) {
    if (k < 1 || static_cast<size_t>(k) > f_terms.size())
        throw std::invalid_argument("momentum_rhs: need terms 0..k-1");
    const Polynomial& prev = f_terms[static_cast<size_t>(k - 1)];
    Polynomial rhs = p.S * (detail::eta_poly() * prev.derivative(3) + 3.0 * prev.derivative(2));
    rhs -= 2.0 * p.S * detail::convolve(f_terms, f_terms, k - 1, 3);
    rhs += (p.M * p.M) * prev.derivative(2);
    return rhs;
}

// Order-k forcing of the energy problem theta_k'' = rhs, from
//   theta'' + Pr S (2 f theta' - eta theta') + Pr Nb theta' phi'
//           + Pr Nt theta'^2 = 0.
inline Polynomial energy_rhs(int k, std::span<const Polynomial> f_terms,
                             std::span<const Polynomial> theta_terms,
                             std::span<const Polynomial> phi_terms, const FlowParams& p) {
    if (k < 1 || static_cast<size_t>(k) > f_terms.size() ||
        static_cast<size_t>(k) > theta_terms.size() || static_cast<size_t>(k) > phi_terms.size())
        throw std::invalid_argument("energy_rhs: need terms 0..k-1");
    const Polynomial& theta_prev = theta_terms[static_cast<size_t>(k - 1)];
    Polynomial rhs = -p.Pr * p.S *
                     (2.0 * detail::convolve(f_terms, theta_terms, k - 1, 1) -
                      detail::eta_poly() * theta_prev.derivative(1));
    rhs -= p.Pr * p.Nb * detail::convolve_derivatives(theta_terms, phi_terms, k - 1);
    rhs -= p.Pr * p.Nt * detail::convolve_derivatives(theta_terms, theta_terms, k - 1);
    return rhs;
}

// Order-k forcing of the concentration problem phi_k'' = rhs, from
//   phi'' + Le S (2 f phi' - eta phi') + (Nt/Nb) theta'' = 0.
// The thermophoretic coupling is skipped entirely when Nt == 0; Nb == 0 with
// Nt != 0 has no meaning and is rejected.
inline Polynomial concentration_rhs(int k, std::span<const Polynomial> f_terms,
                                    std::span<const Polynomial> theta_terms,
                                    std::span<const Polynomial> phi_terms, const FlowParams& p) {
    if (k < 1 || static_cast<size_t>(k) > f_terms.size() ||
        static_cast<size_t>(k) > theta_terms.size() || static_cast<size_t>(k) > phi_terms.size())
        throw std::invalid_argument("concentration_rhs: need terms 0..k-1");
    const Polynomial& phi_prev = phi_terms[static_cast<size_t>(k - 1)];
    Polynomial rhs = -p.Le * p.S *
                     (2.0 * detail::convolve(f_terms, phi_terms, k - 1, 1) -
                      detail::eta_poly() * phi_prev.derivative(1));
    if (p.Nt != 0.0) {
        if (p.Nb == 0.0)
            throw std::domain_error("concentration_rhs: Nb must be nonzero when Nt != 0");
        rhs -= (p.Nt / p.Nb) * theta_terms[static_cast<size_t>(k - 1)].derivative(2);
    }
    return rhs;
}

namespace detail {

// Every solved term must satisfy its linear problem coefficientwise; a
// violation means lost precision, not a modelling choice, so it is fatal.
inline void check_term(const Polynomial& term, int op_order, const Polynomial& rhs,
                       const char* label) {
    const double res = residual_norm(term, op_order, rhs);
    if (!(res <= 1e-9))
        throw std::logic_error(std::string("HPM term residual check failed for ") + label +
                               ": " + std::to_string(res));
}

}  // namespace detail

// Full perturbation expansion through the requested order. Terms are solved
// bottom-up; at each order the momentum term comes first, then energy, then
// concentration (whose forcing uses the previous-order theta curvature).
inline HpmSolution expand(const FlowParams& p, int order) {
    if (order < 0) throw std::invalid_argument("expand: order must be >= 0");
    HpmSolution sol;
    sol.params = p;
    sol.order = order;
    Order0 base = order0(p);
    sol.f_terms.push_back(std::move(base.f));
    sol.theta_terms.push_back(std::move(base.theta));
    sol.phi_terms.push_back(std::move(base.phi));

    const FourPointBC hom4{};
    const TwoPointBC hom2{};
    for (int k = 1; k <= order; ++k) {
        Polynomial rf = momentum_rhs(k, sol.f_terms, p);
        Polynomial fk = solve_quartic_term(rf, hom4);
        detail::check_term(fk, 4, rf, "f");
        sol.f_terms.push_back(std::move(fk));

        Polynomial rt = energy_rhs(k, sol.f_terms, sol.theta_terms, sol.phi_terms, p);
        Polynomial tk = solve_second_term(rt, hom2);
        detail::check_term(tk, 2, rt, "theta");

        Polynomial rp = concentration_rhs(k, sol.f_terms, sol.theta_terms, sol.phi_terms, p);
        Polynomial pk = solve_second_term(rp, hom2);
        detail::check_term(pk, 2, rp, "phi");

        sol.theta_terms.push_back(std::move(tk));
        sol.phi_terms.push_back(std::move(pk));
    }
    return sol;
}

// Expansion with a convergence stop: halts after the first order whose term
// triple has max-abs value below tol on [0, 1], or at max_order.
inline HpmSolution expand_auto(const FlowParams& p, double tol = 1e-8, int max_order = 10) {
    if (!(tol > 0.0)) throw std::invalid_argument("expand_auto: tol must be positive");
    if (max_order < 1) throw std::invalid_argument("expand_auto: max_order must be >= 1");
    HpmSolution sol = expand(p, 1);
    while (sol.order < max_order) {
        const double newest = std::max({max_abs_on_unit(sol.f_terms.back()),
                                        max_abs_on_unit(sol.theta_terms.back()),
                                        max_abs_on_unit(sol.phi_terms.back())});
        if (newest < tol) break;
        sol = expand(p, sol.order + 1);
    }
    return sol;
}

// How the CLI and sweep layers pick the truncation: a fixed order, or the
// convergence stop when auto_tol > 0.
struct ExpandOptions {
    int order = 3;
    double auto_tol = 0.0;
    int max_order = 10;
};

inline HpmSolution expand_with(const FlowParams& p, const ExpandOptions& opts) {
    return opts.auto_tol > 0.0 ? expand_auto(p, opts.auto_tol, opts.max_order)
                               : expand(p, opts.order);
}

// n equally spaced points covering [0, 1].
inline std::vector<double> uniform_grid(int n) {
    if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    std::vector<double> grid(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        grid[static_cast<size_t>(i)] = static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

// Partial sums rendered on a grid; the grid must rise strictly from 0 to 1.
inline ProfileTable evaluate(const HpmSolution& sol, const std::vector<double>& grid) {
    if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != 1.0)
        throw std::invalid_argument("evaluate: grid must span [0, 1] with endpoints 0 and 1");
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("evaluate: grid must be strictly increasing");

    const Polynomial f = sol.f_sum();
    const Polynomial fp = f.derivative();
    const Polynomial theta = sol.theta_sum();
    const Polynomial phi = sol.phi_sum();

    ProfileTable table;
    table.eta = grid;
    table.f.reserve(grid.size());
    table.fprime.reserve(grid.size());
    table.theta.reserve(grid.size());
    table.phi.reserve(grid.size());
    for (const double eta : grid) {
        table.f.push_back(f(eta));
        table.fprime.push_back(fp(eta));
        table.theta.push_back(theta(eta));
        table.phi.push_back(phi(eta));
    }
    return table;
}

// Wall heat-transfer rate -theta'(1) of the assembled series.
inline double nusselt(const HpmSolution& sol) { return -sol.theta_sum().derivative()(1.0); }

}  // namespace ihpm
