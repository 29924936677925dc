#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ihpm {

// Univariate polynomial in the similarity variable eta on [0, 1], stored as
// dense power-basis coefficients: coeff(i) multiplies eta^i. The zero
// polynomial has an empty coefficient list; trailing exact zeros are trimmed
// so equal polynomials compare equal.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { normalize(); }
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static Polynomial monomial(int power, double coeff = 1.0) {
        if (power < 0) throw std::invalid_argument("Polynomial::monomial: negative power");
        if (coeff == 0.0) return {};
        std::vector<double> c(static_cast<size_t>(power) + 1, 0.0);
        c.back() = coeff;
        return Polynomial(std::move(c));
    }

    // Highest stored power, -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    double coeff(int i) const {
        if (i < 0 || static_cast<size_t>(i) >= c_.size()) return 0.0;
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<double>& coeffs() const { return c_; }

    // Horner evaluation.
    double operator()(double eta) const {
        double acc = 0.0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * eta + c_[i];
        return acc;
    }

    // k-th derivative.
    Polynomial derivative(int k = 1) const {
        if (k < 0) throw std::invalid_argument("Polynomial::derivative: negative order");
        Polynomial result = *this;
        for (int round = 0; round < k; ++round) {
            if (result.c_.empty()) break;
            std::vector<double> d(result.c_.size() - 1);
            for (size_t i = 1; i < result.c_.size(); ++i)
                d[i - 1] = static_cast<double>(i) * result.c_[i];
            result.c_ = std::move(d);
        }
        result.normalize();
        return result;
    }

    // Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        if (c_.empty()) return {};
        std::vector<double> a(c_.size() + 1, 0.0);
        for (size_t i = 0; i < c_.size(); ++i)
            a[i + 1] = c_[i] / static_cast<double>(i + 1);
        return Polynomial(std::move(a));
    }

    Polynomial& operator+=(const Polynomial& other) {
        if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
        for (size_t i = 0; i < other.c_.size(); ++i) c_[i] += other.c_[i];
        normalize();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& other) {
        if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
        for (size_t i = 0; i < other.c_.size(); ++i) c_[i] -= other.c_[i];
        normalize();
        return *this;
    }
    Polynomial& operator*=(double s) {
        for (double& c : c_) c *= s;
        normalize();
        return *this;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    std::vector<double> c_;

    void normalize() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }
};

inline Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
inline Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
inline Polynomial operator*(Polynomial p, double s) { return p *= s; }
inline Polynomial operator*(double s, Polynomial p) { return p *= s; }
inline Polynomial operator-(Polynomial p) { return p *= -1.0; }

// Coefficient convolution.
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> c(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
    for (size_t i = 0; i < a.coeffs().size(); ++i)
        for (size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return Polynomial(std::move(c));
}

// Largest |coefficient| of a - b; 0 when the polynomials are identical.
inline double max_coeff_diff(const Polynomial& a, const Polynomial& b) {
    const int top = std::max(a.degree(), b.degree());
    double worst = 0.0;
    for (int i = 0; i <= top; ++i)
        worst = std::max(worst, std::abs(a.coeff(i) - b.coeff(i)));
    return worst;
}

// Largest |p(eta)| sampled on a uniform grid over [0, 1].
inline double max_abs_on_unit(const Polynomial& p, int samples = 201) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double eta = static_cast<double>(i) / static_cast<double>(samples - 1);
        worst = std::max(worst, std::abs(p(eta)));
    }
    return worst;
}

}  // namespace ihpm
