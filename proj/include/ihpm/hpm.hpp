#pragma once

#include <stdexcept>

#include "ihpm/polynomial.hpp"

namespace ihpm {

// Boundary data for the fourth-order linear term problems u'''' = rhs on
// [0, 1]: u(0), u'(0), u(1), u'(1). Correction terms beyond order zero use
// the homogeneous variant.
struct FourPointBC {
    double value0 = 0.0;
    double slope0 = 0.0;
    double value1 = 0.0;
    double slope1 = 0.0;
};

// Boundary data for the second-order term problems u'' = rhs: u(0), u(1).
struct TwoPointBC {
    double value0 = 0.0;
    double value1 = 0.0;
};

// Unique polynomial solution of u'''' = rhs with the four boundary values.
// The particular part is the 4-fold antiderivative of rhs (zero integration
// constants), so it and its slope vanish at eta = 0; the cubic completion is
// found by back-substitution: c0 and c1 directly, then the 2x2 system at
// eta = 1, whose matrix [1 1; 2 3] has determinant 1.
inline Polynomial solve_quartic_term(const Polynomial& rhs, const FourPointBC& bc) {
    const Polynomial particular =
        rhs.antiderivative().antiderivative().antiderivative().antiderivative();
    const double c0 = bc.value0;
    const double c1 = bc.slope0;
    const double rv = bc.value1 - particular(1.0) - c0 - c1;
    const double rs = bc.slope1 - particular.derivative()(1.0) - c1;
    const double c3 = rs - 2.0 * rv;
    const double c2 = 3.0 * rv - rs;
    return particular + Polynomial{c0, c1, c2, c3};
}

// Unique polynomial solution of u'' = rhs with the two boundary values.
inline Polynomial solve_second_term(const Polynomial& rhs, const TwoPointBC& bc) {
    const Polynomial particular = rhs.antiderivative().antiderivative();
    const double c0 = bc.value0;
    const double c1 = bc.value1 - particular(1.0) - c0;
    return particular + Polynomial{c0, c1};
}

// Max-abs coefficient of u^(order) - rhs; vanishes (to rounding) for any
// output of the two solvers above.
inline double residual_norm(const Polynomial& u, int order, const Polynomial& rhs) {
    if (order != 2 && order != 4)
        throw std::invalid_argument("residual_norm: operator order must be 2 or 4");
    return max_coeff_diff(u.derivative(order), rhs);
}

}  // namespace ihpm
