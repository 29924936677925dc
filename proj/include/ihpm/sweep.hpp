#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ihpm/flow.hpp"
#include "ihpm/interval.hpp"

namespace ihpm {

// A parameter box: S, A, M may carry interval uncertainty, the remaining
// physical parameters stay crisp. alpha_samples controls how densely each
// uncertain interval is sampled (endpoints always included).
struct UncertainSpec {
    Interval S{1.0};
    Interval A{1.0};
    Interval M{1.0};
    double Pr = 1.0;
    double Nb = 0.1;
    double Nt = 0.1;
    double Le = 1.0;
    int alpha_samples = 5;
    int eta_points = 101;
    ExpandOptions expand{};
};

struct Band {
    std::vector<double> lo;
    std::vector<double> hi;
};

// Pointwise envelope of profile curves over all sampled parameter draws.
struct EnvelopeBand {
    std::vector<double> eta;
    Band f, fprime, theta, phi;
    size_t draws = 0;
};

enum class Field { F, FPrime, Theta, Phi };

inline constexpr std::array<Field, 4> all_fields{Field::F, Field::FPrime, Field::Theta,
                                                 Field::Phi};

inline std::string_view field_name(Field f) {
    switch (f) {
        case Field::F: return "f";
        case Field::FPrime: return "fprime";
        case Field::Theta: return "theta";
        case Field::Phi: return "phi";
    }
    throw std::logic_error("field_name: bad enum value");
}

inline Field parse_field(std::string_view name) {
    for (const Field f : all_fields)
        if (name == field_name(f)) return f;
    throw std::invalid_argument("unknown field '" + std::string(name) +
                                "' (expected f, fprime, theta or phi)");
}

namespace detail {

inline void validate_spec(const UncertainSpec& spec) {
    if (spec.alpha_samples < 2)
        throw std::invalid_argument("sweep: alpha_samples must be at least 2");
    if (spec.eta_points < 2) throw std::invalid_argument("sweep: eta_points must be at least 2");
}

inline std::vector<double> interval_samples(const Interval& iv, int alpha_samples) {
    if (iv.is_crisp()) return {iv.lo()};
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(alpha_samples));
    for (int i = 0; i < alpha_samples; ++i)
        vals.push_back(iv.sample(static_cast<double>(i) / (alpha_samples - 1)));
    return vals;
}

inline const std::vector<double>& band_side(const EnvelopeBand& band, Field field, bool upper) {
    switch (field) {
        case Field::F: return upper ? band.f.hi : band.f.lo;
        case Field::FPrime: return upper ? band.fprime.hi : band.fprime.lo;
        case Field::Theta: return upper ? band.theta.hi : band.theta.lo;
        case Field::Phi: return upper ? band.phi.hi : band.phi.lo;
    }
    throw std::logic_error("band_side: bad enum value");
}

}  // namespace detail

// Full Cartesian grid over the uncertain parameters (crisp ones contribute a
// single value). Order: S outermost, then A, then M.
inline std::vector<FlowParams> sample_box(const UncertainSpec& spec) {
    detail::validate_spec(spec);
    const std::vector<double> s_vals = detail::interval_samples(spec.S, spec.alpha_samples);
    const std::vector<double> a_vals = detail::interval_samples(spec.A, spec.alpha_samples);
    const std::vector<double> m_vals = detail::interval_samples(spec.M, spec.alpha_samples);

    std::vector<FlowParams> draws;
    draws.reserve(s_vals.size() * a_vals.size() * m_vals.size());
    for (const double s : s_vals)
        for (const double a : a_vals)
            for (const double m : m_vals)
                draws.push_back(FlowParams{s, a, m, spec.Pr, spec.Nb, spec.Nt, spec.Le});
    return draws;
}

// Expand + evaluate every draw and keep the pointwise min/max per field.
inline EnvelopeBand envelope(const UncertainSpec& spec) {
    const std::vector<FlowParams> draws = sample_box(spec);
    const std::vector<double> grid = uniform_grid(spec.eta_points);

    EnvelopeBand band;
    band.eta = grid;
    band.draws = draws.size();
    const size_t n = grid.size();
    const double inf = std::numeric_limits<double>::infinity();
    for (Band* b : {&band.f, &band.fprime, &band.theta, &band.phi}) {
        b->lo.assign(n, inf);
        b->hi.assign(n, -inf);
    }

    for (const FlowParams& p : draws) {
        ProfileTable table;
        try {
            table = evaluate(expand_with(p, spec.expand), grid);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep: draw S=" + std::to_string(p.S) +
                                     " A=" + std::to_string(p.A) + " M=" + std::to_string(p.M) +
                                     " failed: " + e.what());
        }
        const std::array<const std::vector<double>*, 4> cols{&table.f, &table.fprime, &table.theta,
                                                             &table.phi};
        const std::array<Band*, 4> bands{&band.f, &band.fprime, &band.theta, &band.phi};
        for (size_t c = 0; c < cols.size(); ++c)
            for (size_t i = 0; i < n; ++i) {
                const double v = (*cols[c])[i];
                bands[c]->lo[i] = std::min(bands[c]->lo[i], v);
                bands[c]->hi[i] = std::max(bands[c]->hi[i], v);
            }
    }
    return band;
}

struct WidthMetrics {
    double max_width = 0.0;
    // Trapezoidal integral of (upper - lower) over the eta grid.
    double integral_width = 0.0;
};

inline WidthMetrics band_width(const EnvelopeBand& band, Field field) {
    const std::vector<double>& lo = detail::band_side(band, field, false);
    const std::vector<double>& hi = detail::band_side(band, field, true);
    WidthMetrics m;
    for (size_t i = 0; i < lo.size(); ++i) {
        const double w = hi[i] - lo[i];
        m.max_width = std::max(m.max_width, w);
        if (i + 1 < lo.size()) {
            const double w_next = hi[i + 1] - lo[i + 1];
            m.integral_width += 0.5 * (w + w_next) * (band.eta[i + 1] - band.eta[i]);
        }
    }
    return m;
}

// One pairing of uncertain parameters (the third stays crisp at its base).
struct PairingWidths {
    std::string varied;  // "S,M", "S,A" or "A,M"
    WidthMetrics fprime, theta, phi;

    const WidthMetrics& metrics(Field field) const {
        switch (field) {
            case Field::FPrime: return fprime;
            case Field::Theta: return theta;
            case Field::Phi: return phi;
            default: throw std::invalid_argument("pairing widths cover fprime, theta, phi only");
        }
    }
};

struct FieldRanking {
    Field field = Field::FPrime;
    // Pairing labels sorted widest-first by integral width (ties keep the
    // declaration order S,M / S,A / A,M).
    std::array<std::string, 3> order_desc{};
    std::string widest;
    // Reference expectation used for the agreement flag: velocity responds
    // most to suction + magnetic field, temperature and concentration to
    // suction + squeezing.
    std::string reference_widest;
    bool matches_reference = false;
};

struct SensitivityReport {
    FlowParams base;
    double spread = 0.0;
    int alpha_samples = 5;
    int eta_points = 101;
    ExpandOptions expand{};
    bool degenerate = false;  // spread 0 : all widths vanish, ranking is meaningless
    std::array<PairingWidths, 3> pairings{};   // (S,M), (S,A), (A,M)
    std::array<FieldRanking, 3> rankings{};    // fprime, theta, phi
    bool all_match_reference = false;
};

// Runs the three two-parameter uncertainty pairings at +/- spread around the
// base values and ranks them per field by integral band width.
inline SensitivityReport sensitivity_report(const FlowParams& base, double spread,
                                            int alpha_samples = 5, int eta_points = 101,
                                            const ExpandOptions& expand = {}) {
    if (spread < 0.0) throw std::invalid_argument("sensitivity_report: spread must be >= 0");

    UncertainSpec crisp;
    crisp.S = Interval(base.S);
    crisp.A = Interval(base.A);
    crisp.M = Interval(base.M);
    crisp.Pr = base.Pr;
    crisp.Nb = base.Nb;
    crisp.Nt = base.Nt;
    crisp.Le = base.Le;
    crisp.alpha_samples = alpha_samples;
    crisp.eta_points = eta_points;
    crisp.expand = expand;

    SensitivityReport report;
    report.base = base;
    report.spread = spread;
    report.alpha_samples = alpha_samples;
    report.eta_points = eta_points;
    report.expand = expand;
    report.degenerate = spread == 0.0;

    struct PairingDef {
        const char* label;
        bool vary_s, vary_a, vary_m;
    };
    constexpr std::array<PairingDef, 3> defs{{{"S,M", true, false, true},
                                              {"S,A", true, true, false},
                                              {"A,M", false, true, true}}};
    for (size_t i = 0; i < defs.size(); ++i) {
        UncertainSpec spec = crisp;
        if (defs[i].vary_s) spec.S = Interval::from_spread(base.S, spread);
        if (defs[i].vary_a) spec.A = Interval::from_spread(base.A, spread);
        if (defs[i].vary_m) spec.M = Interval::from_spread(base.M, spread);
        const EnvelopeBand band = envelope(spec);
        report.pairings[i].varied = defs[i].label;
        report.pairings[i].fprime = band_width(band, Field::FPrime);
        report.pairings[i].theta = band_width(band, Field::Theta);
        report.pairings[i].phi = band_width(band, Field::Phi);
    }

    constexpr std::array<Field, 3> fields{Field::FPrime, Field::Theta, Field::Phi};
    constexpr std::array<const char*, 3> reference{"A,M", "S,A", "S,A"};
    bool all_match = true;
    for (size_t fi = 0; fi < fields.size(); ++fi) {
        FieldRanking& rank = report.rankings[fi];
        rank.field = fields[fi];
        std::array<size_t, 3> idx{0, 1, 2};
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return report.pairings[a].metrics(fields[fi]).integral_width >
                   report.pairings[b].metrics(fields[fi]).integral_width;
        });
        for (size_t k = 0; k < 3; ++k) rank.order_desc[k] = report.pairings[idx[k]].varied;
        rank.widest = rank.order_desc[0];
        rank.reference_widest = reference[fi];
        rank.matches_reference = rank.widest == rank.reference_widest;
        all_match = all_match && rank.matches_reference;
    }
    report.all_match_reference = all_match;
    return report;
}

}  // namespace ihpm
