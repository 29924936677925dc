#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ihpm {

// Closed real interval [lo, hi]. A degenerate interval (lo == hi) models a
// crisp parameter value. Endpoint arithmetic is plain double precision with
// no outward rounding.
class Interval {
public:
    Interval() = default;
    Interval(double value) : lo_(value), hi_(value) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi))
            throw std::invalid_argument("Interval: lo must not exceed hi (got [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }

    // center +- |center| * spread_frac, e.g. from_spread(1.0, 0.05) == [0.95, 1.05].
    static Interval from_spread(double center, double spread_frac) {
        if (spread_frac < 0.0)
            throw std::invalid_argument("Interval::from_spread: spread must be >= 0");
        const double delta = std::abs(center) * spread_frac;
        return Interval(center - delta, center + delta);
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }
    double midpoint() const { return 0.5 * (lo_ + hi_); }
    bool is_crisp() const { return lo_ == hi_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }

    // Affine crisp form alpha * (hi - lo) + lo; sample(0) == lo and
    // sample(1) == hi exactly, monotone in between.
    double sample(double alpha) const {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::domain_error("Interval::sample: alpha must lie in [0, 1]");
        return std::lerp(lo_, hi_, alpha);
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline Interval operator+(Interval a, Interval b) {
    return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

inline Interval operator-(Interval a, Interval b) {
    return Interval(a.lo() - b.hi(), a.hi() - b.lo());
}

inline Interval operator*(Interval a, Interval b) {
    const double p1 = a.lo() * b.lo();
    const double p2 = a.lo() * b.hi();
    const double p3 = a.hi() * b.lo();
    const double p4 = a.hi() * b.hi();
    return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                    std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Interval operator/(Interval a, Interval b) {
    if (b.contains(0.0))
        throw std::domain_error("Interval division: divisor contains zero");
    const double q1 = a.lo() / b.lo();
    const double q2 = a.lo() / b.hi();
    const double q3 = a.hi() / b.lo();
    const double q4 = a.hi() / b.hi();
    return Interval(std::min(std::min(q1, q2), std::min(q3, q4)),
                    std::max(std::max(q1, q2), std::max(q3, q4)));
}

// Parses "lo:hi" or the shorthand "center±spread%" (ASCII spelling "+-" also
// accepted, and the trailing '%' is required for the shorthand).
inline Interval parse_interval(const std::string& text) {
    const auto bad = [&text]() {
        return std::invalid_argument("cannot parse interval '" + text +
                                     "' (expected lo:hi or center±spread%)");
    };
    const auto to_double = [&](const std::string& s) {
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw bad();
        }
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw bad();
        return v;
    };

    if (const auto colon = text.find(':'); colon != std::string::npos) {
        const double lo = to_double(text.substr(0, colon));
        const double hi = to_double(text.substr(colon + 1));
        if (!(lo <= hi)) throw bad();
        return Interval(lo, hi);
    }

    size_t sep = text.find("\xc2\xb1");  // UTF-8 "±"
    size_t sep_len = 2;
    if (sep == std::string::npos) {
        sep = text.find("+-");
        sep_len = 2;
    }
    if (sep == std::string::npos) throw bad();
    std::string tail = text.substr(sep + sep_len);
    if (tail.empty() || tail.back() != '%') throw bad();
    tail.pop_back();
    const double center = to_double(text.substr(0, sep));
    const double pct = to_double(tail);
    if (pct < 0.0) throw bad();
    return Interval::from_spread(center, pct / 100.0);
}

}  // namespace ihpm
