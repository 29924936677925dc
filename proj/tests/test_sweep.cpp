#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ihpm/sweep.hpp"

using ihpm::Band;
using ihpm::band_width;
using ihpm::envelope;
using ihpm::EnvelopeBand;
using ihpm::Field;
using ihpm::FlowParams;
using ihpm::Interval;
using ihpm::sample_box;
using ihpm::sensitivity_report;
using ihpm::SensitivityReport;
using ihpm::UncertainSpec;
using ihpm::WidthMetrics;

namespace {
UncertainSpec crisp_spec() {
    UncertainSpec spec;  // S = A = M = 1 crisp by default
    spec.eta_points = 21;
    return spec;
}
}  // namespace

TEST_CASE("field names round-trip") {
    for (const Field f : ihpm::all_fields) CHECK(ihpm::parse_field(ihpm::field_name(f)) == f);
    CHECK_THROWS_AS(ihpm::parse_field("velocity"), std::invalid_argument);
}

TEST_CASE("sample_box counts and ordering") {
    UncertainSpec spec = crisp_spec();
    CHECK(sample_box(spec).size() == 1);

    spec.S = Interval(0.95, 1.05);
    spec.M = Interval(0.95, 1.05);
    spec.alpha_samples = 5;
    const auto draws = sample_box(spec);
    CHECK(draws.size() == 25);
    // S varies slowest, M fastest; endpoints land exactly.
    CHECK(draws.front().S == 0.95);
    CHECK(draws.front().M == 0.95);
    CHECK(draws.back().S == 1.05);
    CHECK(draws.back().M == 1.05);
    CHECK(draws[1].S == 0.95);
    CHECK(draws[1].M == 0.975);
    for (const FlowParams& d : draws) CHECK(d.A == 1.0);

    spec.A = Interval(0.9, 1.1);
    spec.alpha_samples = 3;
    CHECK(sample_box(spec).size() == 27);

    spec.alpha_samples = 2;
    UncertainSpec two = crisp_spec();
    two.S = Interval(0.95, 1.05);
    two.alpha_samples = 2;
    const auto endpoints = sample_box(two);
    CHECK(endpoints.size() == 2);
    CHECK(endpoints[0].S == 0.95);
    CHECK(endpoints[1].S == 1.05);
}

TEST_CASE("spec validation") {
    UncertainSpec spec = crisp_spec();
    spec.alpha_samples = 1;
    CHECK_THROWS_AS(sample_box(spec), std::invalid_argument);
    spec.alpha_samples = 5;
    spec.eta_points = 1;
    CHECK_THROWS_AS(envelope(spec), std::invalid_argument);
}

TEST_CASE("crisp spec collapses to a zero-width band") {
    const EnvelopeBand band = envelope(crisp_spec());
    CHECK(band.draws == 1);
    for (const Field f : ihpm::all_fields) {
        const WidthMetrics w = band_width(band, f);
        CHECK(w.max_width == 0.0);
        CHECK(w.integral_width == 0.0);
    }
}

TEST_CASE("suction uncertainty maps straight onto f at the lower wall") {
    UncertainSpec spec = crisp_spec();
    spec.A = Interval(0.95, 1.05);
    const EnvelopeBand band = envelope(spec);
    CHECK(band.f.lo.front() == 0.95);
    CHECK(band.f.hi.front() == 1.05);
    // theta(0) = 1 for every draw.
    CHECK(band.theta.lo.front() == 1.0);
    CHECK(band.theta.hi.front() == 1.0);
}

TEST_CASE("band bounds are ordered and contain the midpoint draw") {
    UncertainSpec spec = crisp_spec();
    spec.S = Interval::from_spread(1.0, 0.05);
    spec.M = Interval::from_spread(1.0, 0.05);
    spec.alpha_samples = 5;  // odd, so the all-midpoint draw is sampled
    const EnvelopeBand band = envelope(spec);
    CHECK(band.draws == 25);

    const auto mid = ihpm::evaluate(ihpm::expand_with(FlowParams{1.0, 1.0, 1.0, spec.Pr, spec.Nb,
                                                                 spec.Nt, spec.Le},
                                                      spec.expand),
                                    band.eta);
    for (size_t i = 0; i < band.eta.size(); ++i) {
        CHECK(band.fprime.lo[i] <= band.fprime.hi[i]);
        CHECK(band.fprime.lo[i] <= mid.fprime[i]);
        CHECK(mid.fprime[i] <= band.fprime.hi[i]);
        CHECK(band.theta.lo[i] <= mid.theta[i]);
        CHECK(mid.theta[i] <= band.theta.hi[i]);
        CHECK(band.phi.lo[i] <= mid.phi[i]);
        CHECK(mid.phi[i] <= band.phi.hi[i]);
    }
}

TEST_CASE("corner draws stay inside the envelope") {
    UncertainSpec spec = crisp_spec();
    spec.S = Interval(0.9, 1.1);
    spec.A = Interval(0.95, 1.05);
    const EnvelopeBand band = envelope(spec);
    for (const double s : {0.9, 1.1})
        for (const double a : {0.95, 1.05}) {
            const auto corner = ihpm::evaluate(
                ihpm::expand_with(FlowParams{s, a, 1.0, spec.Pr, spec.Nb, spec.Nt, spec.Le},
                                  spec.expand),
                band.eta);
            for (size_t i = 0; i < band.eta.size(); ++i) {
                CHECK(band.f.lo[i] <= corner.f[i] + 1e-12);
                CHECK(corner.f[i] <= band.f.hi[i] + 1e-12);
                CHECK(band.theta.lo[i] <= corner.theta[i] + 1e-12);
                CHECK(corner.theta[i] <= band.theta.hi[i] + 1e-12);
            }
        }
}

TEST_CASE("nested alpha grids give nested envelopes") {
    // The 3-point alpha grid {0, 1/2, 1} is a subset of the 5-point grid
    // {0, 1/4, 1/2, 3/4, 1}, so its envelope fits inside pointwise.
    UncertainSpec coarse = crisp_spec();
    coarse.S = Interval::from_spread(1.0, 0.05);
    coarse.A = Interval::from_spread(1.0, 0.05);
    coarse.alpha_samples = 3;
    UncertainSpec fine = coarse;
    fine.alpha_samples = 5;
    const EnvelopeBand b3 = envelope(coarse);
    const EnvelopeBand b5 = envelope(fine);
    for (size_t i = 0; i < b3.eta.size(); ++i) {
        CHECK(b5.fprime.lo[i] <= b3.fprime.lo[i]);
        CHECK(b3.fprime.hi[i] <= b5.fprime.hi[i]);
        CHECK(b5.theta.lo[i] <= b3.theta.lo[i]);
        CHECK(b3.theta.hi[i] <= b5.theta.hi[i]);
        CHECK(b5.phi.lo[i] <= b3.phi.lo[i]);
        CHECK(b3.phi.hi[i] <= b5.phi.hi[i]);
    }
}

TEST_CASE("band_width on synthetic bands") {
    EnvelopeBand band;
    band.eta = {0.0, 0.25, 0.5, 0.75, 1.0};
    const size_t n = band.eta.size();
    SECTION("constant width c gives (c, c)") {
        band.theta.lo.assign(n, 0.0);
        band.theta.hi.assign(n, 0.375);
        const WidthMetrics w = band_width(band, Field::Theta);
        CHECK(w.max_width == 0.375);
        CHECK(w.integral_width == Catch::Approx(0.375).margin(1e-15));
    }
    SECTION("linearly growing width integrates to half its peak") {
        band.f.lo.assign(n, 0.0);
        band.f.hi = band.eta;
        const WidthMetrics w = band_width(band, Field::F);
        CHECK(w.max_width == 1.0);
        CHECK(w.integral_width == Catch::Approx(0.5).margin(1e-15));
    }
}

TEST_CASE("sensitivity report structure and degenerate case") {
    const FlowParams base{1.0, 1.0, 1.0, 1.0, 0.1, 0.1, 1.0};
    SECTION("spread 0 collapses every band") {
        const SensitivityReport rep = sensitivity_report(base, 0.0, 3, 11);
        CHECK(rep.degenerate);
        for (const auto& pw : rep.pairings) {
            CHECK(pw.fprime.max_width == 0.0);
            CHECK(pw.theta.integral_width == 0.0);
            CHECK(pw.phi.max_width == 0.0);
        }
    }
    SECTION("three pairings, three ranked fields, consistent flags") {
        const SensitivityReport rep = sensitivity_report(base, 0.05, 3, 41);
        CHECK_FALSE(rep.degenerate);
        CHECK(rep.pairings[0].varied == "S,M");
        CHECK(rep.pairings[1].varied == "S,A");
        CHECK(rep.pairings[2].varied == "A,M");
        bool all = true;
        for (const auto& rank : rep.rankings) {
            // The declared widest pairing really does carry the largest
            // integral width for its field.
            double best = -1.0;
            std::string best_label;
            for (const auto& pw : rep.pairings) {
                const double w = pw.metrics(rank.field).integral_width;
                if (w > best) {
                    best = w;
                    best_label = pw.varied;
                }
            }
            CHECK(rank.widest == best_label);
            CHECK(rank.order_desc[0] == rank.widest);
            CHECK(rank.matches_reference == (rank.widest == rank.reference_widest));
            all = all && rank.matches_reference;
        }
        CHECK(rep.all_match_reference == all);
        CHECK(rep.rankings[0].reference_widest == "A,M");
        CHECK(rep.rankings[1].reference_widest == "S,A");
        CHECK(rep.rankings[2].reference_widest == "S,A");
    }
    SECTION("negative spread is rejected") {
        CHECK_THROWS_AS(sensitivity_report(base, -0.01), std::invalid_argument);
    }
    SECTION("repeat runs are identical") {
        const SensitivityReport a = sensitivity_report(base, 0.05, 3, 21);
        const SensitivityReport b = sensitivity_report(base, 0.05, 3, 21);
        for (size_t i = 0; i < 3; ++i) {
            CHECK(a.pairings[i].fprime.integral_width == b.pairings[i].fprime.integral_width);
            CHECK(a.pairings[i].theta.max_width == b.pairings[i].theta.max_width);
            CHECK(a.rankings[i].widest == b.rankings[i].widest);
        }
    }
}
