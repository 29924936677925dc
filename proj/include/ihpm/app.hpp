#pragma once

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ihpm/flow.hpp"
#include "ihpm/interval.hpp"
#include "ihpm/io.hpp"
#include "ihpm/oracle.hpp"
#include "ihpm/sweep.hpp"

namespace ihpm {

enum class Command { Solve, Sweep, Validate, Report };
enum class OutputFormat { Csv, Json };

inline std::string_view command_name(Command c) {
    switch (c) {
        case Command::Solve: return "solve";
        case Command::Sweep: return "sweep";
        case Command::Validate: return "validate";
        case Command::Report: return "report";
    }
    throw std::logic_error("command_name: bad enum value");
}

// Fully resolved run description; the CLI fills it from flags + config file.
struct RunConfig {
    Command command = Command::Solve;
    FlowParams params{};  // crisp values; for report these are the base values
    std::vector<std::string> uncertain;  // names among S, A, M widened by +/- spread
    std::vector<std::pair<std::string, Interval>> explicit_intervals;  // --interval NAME=lo:hi
    double spread = 0.05;
    int alpha_samples = 5;
    int eta_points = 101;
    ExpandOptions expand{};
    int oracle_steps = 400;
    OutputFormat format = OutputFormat::Csv;
    bool format_explicit = false;  // true when --format was passed on the command line
    bool dump_terms = false;
    std::vector<Field> fields;  // empty -> per-command default
    std::string out_path;       // empty -> stdout
};

struct RunResult {
    std::string artifact;    // serialized output (CSV or JSON)
    std::string table;       // human-readable sensitivity table (report only)
    std::string terms_json;  // sidecar content when dump_terms needs a second file
};

namespace detail {

inline std::string interval_repr(const Interval& iv) {
    if (iv.is_crisp()) return fmt_sig(iv.lo());
    return fmt_sig(iv.lo()) + ":" + fmt_sig(iv.hi());
}

inline std::vector<std::string> field_names(const std::vector<Field>& fields) {
    std::vector<std::string> names;
    names.reserve(fields.size());
    for (const Field f : fields) names.emplace_back(field_name(f));
    return names;
}

inline std::vector<Field> effective_fields(const RunConfig& cfg) {
    if (!cfg.fields.empty()) return cfg.fields;
    if (cfg.command == Command::Sweep) return {Field::FPrime, Field::Theta, Field::Phi};
    return {Field::F, Field::FPrime, Field::Theta, Field::Phi};
}

// Canonically ordered list of parameters the run treats as uncertain.
inline std::vector<std::string> uncertain_names(const RunConfig& cfg) {
    std::vector<std::string> names;
    for (const std::string_view candidate : {"S", "A", "M"}) {
        bool listed = false;
        for (const std::string& u : cfg.uncertain) listed = listed || u == candidate;
        for (const auto& [name, iv] : cfg.explicit_intervals) listed = listed || name == candidate;
        if (listed) names.emplace_back(candidate);
    }
    return names;
}

inline void assign_interval(UncertainSpec& spec, const std::string& name, const Interval& iv) {
    if (name == "S")
        spec.S = iv;
    else if (name == "A")
        spec.A = iv;
    else if (name == "M")
        spec.M = iv;
    else
        throw std::invalid_argument("unknown uncertain parameter '" + name +
                                    "' (expected S, A or M)");
}

inline UncertainSpec make_spec(const RunConfig& cfg) {
    UncertainSpec spec;
    spec.S = Interval(cfg.params.S);
    spec.A = Interval(cfg.params.A);
    spec.M = Interval(cfg.params.M);
    spec.Pr = cfg.params.Pr;
    spec.Nb = cfg.params.Nb;
    spec.Nt = cfg.params.Nt;
    spec.Le = cfg.params.Le;
    spec.alpha_samples = cfg.alpha_samples;
    spec.eta_points = cfg.eta_points;
    spec.expand = cfg.expand;
    for (const std::string& name : cfg.uncertain) {
        const double base = name == "S" ? cfg.params.S : name == "A" ? cfg.params.A : cfg.params.M;
        assign_interval(spec, name, Interval::from_spread(base, cfg.spread));
    }
    for (const auto& [name, iv] : cfg.explicit_intervals) assign_interval(spec, name, iv);
    return spec;
}

// Effective configuration echoed into every artifact, in a fixed key order.
inline std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", std::string(command_name(cfg.command)));
    kv.emplace_back("format", cfg.format == OutputFormat::Csv ? "csv" : "json");
    if (cfg.command == Command::Sweep) {
        const UncertainSpec spec = make_spec(cfg);
        kv.emplace_back("S", interval_repr(spec.S));
        kv.emplace_back("A", interval_repr(spec.A));
        kv.emplace_back("M", interval_repr(spec.M));
    } else {
        kv.emplace_back("S", fmt_sig(cfg.params.S));
        kv.emplace_back("A", fmt_sig(cfg.params.A));
        kv.emplace_back("M", fmt_sig(cfg.params.M));
    }
    kv.emplace_back("Pr", fmt_sig(cfg.params.Pr));
    kv.emplace_back("Nb", fmt_sig(cfg.params.Nb));
    kv.emplace_back("Nt", fmt_sig(cfg.params.Nt));
    kv.emplace_back("Le", fmt_sig(cfg.params.Le));
    kv.emplace_back("order", std::to_string(cfg.expand.order));
    kv.emplace_back("auto_tol", fmt_sig(cfg.expand.auto_tol));
    kv.emplace_back("max_order", std::to_string(cfg.expand.max_order));
    if (cfg.command != Command::Validate)
        kv.emplace_back("eta_points", std::to_string(cfg.eta_points));
    if (cfg.command == Command::Sweep || cfg.command == Command::Report) {
        kv.emplace_back("alpha_samples", std::to_string(cfg.alpha_samples));
        kv.emplace_back("spread", fmt_sig(cfg.spread));
    }
    if (cfg.command == Command::Sweep)
        kv.emplace_back("uncertain", join_list(uncertain_names(cfg)));
    if (cfg.command == Command::Solve || cfg.command == Command::Sweep)
        kv.emplace_back("fields", join_list(field_names(effective_fields(cfg))));
    if (cfg.command == Command::Solve)
        kv.emplace_back("dump_terms", cfg.dump_terms ? "true" : "false");
    if (cfg.command == Command::Validate)
        kv.emplace_back("oracle_steps", std::to_string(cfg.oracle_steps));
    return kv;
}

inline std::string csv_comments(const RunConfig& cfg) {
    std::string out;
    for (const auto& [key, value] : echo_config(cfg)) out += "# " + key + " = " + value + "\n";
    return out;
}

inline nlohmann::json json_config(const RunConfig& cfg) {
    nlohmann::json j;
    for (const auto& [key, value] : echo_config(cfg)) j[key] = value;
    return j;
}

inline const std::vector<double>& table_column(const ProfileTable& t, Field f) {
    switch (f) {
        case Field::F: return t.f;
        case Field::FPrime: return t.fprime;
        case Field::Theta: return t.theta;
        case Field::Phi: return t.phi;
    }
    throw std::logic_error("table_column: bad enum value");
}

inline nlohmann::json terms_to_json(const HpmSolution& sol) {
    auto coeff_rows = [](const std::vector<Polynomial>& terms) {
        nlohmann::json rows = nlohmann::json::array();
        for (const Polynomial& p : terms) rows.push_back(p.coeffs());
        return rows;
    };
    nlohmann::json j;
    j["f"] = coeff_rows(sol.f_terms);
    j["theta"] = coeff_rows(sol.theta_terms);
    j["phi"] = coeff_rows(sol.phi_terms);
    return j;
}

inline nlohmann::json width_to_json(const WidthMetrics& w) {
    return nlohmann::json{{"max", w.max_width}, {"integral", w.integral_width}};
}

inline nlohmann::json error_pair(double max_err, double rms_err) {
    return nlohmann::json{{"max", max_err}, {"rms", rms_err}};
}

}  // namespace detail

inline RunResult run_solve(const RunConfig& cfg) {
    const std::vector<Field> fields = detail::effective_fields(cfg);
    if (cfg.dump_terms && cfg.format == OutputFormat::Csv && cfg.out_path.empty())
        throw std::invalid_argument(
            "--dump-terms with CSV output needs --out (the term dump becomes a sidecar file)");

    const HpmSolution sol = expand_with(cfg.params, cfg.expand);
    const ProfileTable table = evaluate(sol, uniform_grid(cfg.eta_points));
    const double nu = nusselt(sol);

    RunResult result;
    if (cfg.format == OutputFormat::Csv) {
        std::string& out = result.artifact;
        out = detail::csv_comments(cfg);
        out += "# order_used = " + std::to_string(sol.order) + "\n";
        out += "# Nu=" + fmt_sig(nu) + "\n";
        out += "eta";
        for (const Field f : fields) out += "," + std::string(field_name(f));
        out += "\n";
        for (size_t i = 0; i < table.eta.size(); ++i) {
            out += fmt_sig(table.eta[i]);
            for (const Field f : fields) out += "," + fmt_sig(detail::table_column(table, f)[i]);
            out += "\n";
        }
        if (cfg.dump_terms) result.terms_json = detail::terms_to_json(sol).dump(2) + "\n";
    } else {
        nlohmann::json j;
        j["config"] = detail::json_config(cfg);
        j["order_used"] = sol.order;
        j["nu"] = nu;
        nlohmann::json profile;
        profile["eta"] = table.eta;
        for (const Field f : fields)
            profile[std::string(field_name(f))] = detail::table_column(table, f);
        j["profile"] = profile;
        if (cfg.dump_terms) j["terms"] = detail::terms_to_json(sol);
        result.artifact = j.dump(2) + "\n";
    }
    return result;
}

inline RunResult run_sweep(const RunConfig& cfg) {
    if (cfg.uncertain.empty() && cfg.explicit_intervals.empty())
        throw std::invalid_argument(
            "sweep needs at least one uncertain parameter (--uncertain or --interval)");
    const std::vector<Field> fields = detail::effective_fields(cfg);
    const UncertainSpec spec = detail::make_spec(cfg);
    const EnvelopeBand band = envelope(spec);

    RunResult result;
    if (cfg.format == OutputFormat::Csv) {
        std::string& out = result.artifact;
        out = detail::csv_comments(cfg);
        out += "# draws = " + std::to_string(band.draws) + "\n";
        for (const Field f : fields) {
            const WidthMetrics w = band_width(band, f);
            const std::string name(field_name(f));
            out += "# width_" + name + "_max = " + fmt_sig(w.max_width) + "\n";
            out += "# width_" + name + "_integral = " + fmt_sig(w.integral_width) + "\n";
        }
        out += "eta";
        for (const Field f : fields) {
            const std::string name(field_name(f));
            out += "," + name + "_lo," + name + "_hi";
        }
        out += "\n";
        for (size_t i = 0; i < band.eta.size(); ++i) {
            out += fmt_sig(band.eta[i]);
            for (const Field f : fields)
                out += "," + fmt_sig(detail::band_side(band, f, false)[i]) + "," +
                       fmt_sig(detail::band_side(band, f, true)[i]);
            out += "\n";
        }
    } else {
        nlohmann::json j;
        j["config"] = detail::json_config(cfg);
        j["draws"] = band.draws;
        nlohmann::json jband;
        jband["eta"] = band.eta;
        nlohmann::json jwidth;
        for (const Field f : fields) {
            const std::string name(field_name(f));
            jband[name + "_lo"] = detail::band_side(band, f, false);
            jband[name + "_hi"] = detail::band_side(band, f, true);
            jwidth[name] = detail::width_to_json(band_width(band, f));
        }
        j["band"] = jband;
        j["width"] = jwidth;
        result.artifact = j.dump(2) + "\n";
    }
    return result;
}

inline RunResult run_validate(const RunConfig& cfg) {
    if (cfg.format_explicit && cfg.format == OutputFormat::Csv)
        throw std::invalid_argument("validate emits a JSON report; --format csv is not supported");

    const HpmSolution sol = expand_with(cfg.params, cfg.expand);
    ShootOptions opts;
    opts.steps = cfg.oracle_steps;
    const OracleSolution oracle = shoot(cfg.params, hpm_shoot_guess(sol), opts);
    if (!oracle.converged) {
        std::string msg = "oracle shooting did not converge after " +
                          std::to_string(oracle.iterations) + " iterations; residuals =";
        for (const double r : oracle.terminal_residuals) msg += " " + fmt_sig(r);
        throw std::runtime_error(msg);
    }

    nlohmann::json j;
    RunConfig echo_cfg = cfg;
    echo_cfg.format = OutputFormat::Json;
    j["config"] = detail::json_config(echo_cfg);
    nlohmann::json joracle;
    joracle["converged"] = oracle.converged;
    joracle["iterations"] = oracle.iterations;
    joracle["shoot_unknowns"] = oracle.shoot_unknowns;
    joracle["terminal_residuals"] = oracle.terminal_residuals;
    joracle["nusselt"] = -oracle.theta_slope1;
    j["oracle"] = joracle;

    nlohmann::json orders = nlohmann::json::array();
    const int first = sol.order == 0 ? 0 : 1;
    for (int k = first; k <= sol.order; ++k) {
        const ErrorReport err = compare(sol.truncated(k), oracle);
        nlohmann::json row;
        row["order"] = k;
        row["f"] = detail::error_pair(err.max_f, err.rms_f);
        row["fprime"] = detail::error_pair(err.max_fprime, err.rms_fprime);
        row["theta"] = detail::error_pair(err.max_theta, err.rms_theta);
        row["phi"] = detail::error_pair(err.max_phi, err.rms_phi);
        row["nusselt_diff"] = err.nusselt_diff;
        orders.push_back(row);
    }
    j["orders"] = orders;

    RunResult result;
    result.artifact = j.dump(2) + "\n";
    return result;
}

inline RunResult run_report(const RunConfig& cfg) {
    if (cfg.format_explicit && cfg.format == OutputFormat::Csv)
        throw std::invalid_argument("report emits a JSON artifact; --format csv is not supported");

    const SensitivityReport rep = sensitivity_report(cfg.params, cfg.spread, cfg.alpha_samples,
                                                     cfg.eta_points, cfg.expand);

    RunConfig echo_cfg = cfg;
    echo_cfg.format = OutputFormat::Json;
    nlohmann::json j;
    j["config"] = detail::json_config(echo_cfg);
    j["degenerate"] = rep.degenerate;
    nlohmann::json pairings = nlohmann::json::array();
    for (const PairingWidths& pw : rep.pairings) {
        nlohmann::json row;
        row["varied"] = pw.varied;
        row["fprime"] = detail::width_to_json(pw.fprime);
        row["theta"] = detail::width_to_json(pw.theta);
        row["phi"] = detail::width_to_json(pw.phi);
        pairings.push_back(row);
    }
    j["pairings"] = pairings;
    nlohmann::json rankings = nlohmann::json::array();
    for (const FieldRanking& r : rep.rankings) {
        nlohmann::json row;
        row["field"] = std::string(field_name(r.field));
        row["order"] = r.order_desc;
        row["widest"] = r.widest;
        row["reference_widest"] = r.reference_widest;
        row["matches_reference"] = r.matches_reference;
        rankings.push_back(row);
    }
    j["rankings"] = rankings;
    j["all_match_reference"] = rep.all_match_reference;

    RunResult result;
    result.artifact = j.dump(2) + "\n";

    std::ostringstream t;
    t << "Band sensitivity to paired parameter uncertainty\n";
    t << "base: S=" << fmt_sig(rep.base.S) << " A=" << fmt_sig(rep.base.A)
      << " M=" << fmt_sig(rep.base.M) << " Pr=" << fmt_sig(rep.base.Pr)
      << " Nb=" << fmt_sig(rep.base.Nb) << " Nt=" << fmt_sig(rep.base.Nt)
      << " Le=" << fmt_sig(rep.base.Le) << "\n";
    t << "spread=" << fmt_sig(rep.spread) << " alpha_samples=" << rep.alpha_samples
      << " eta_points=" << rep.eta_points;
    if (rep.expand.auto_tol > 0.0)
        t << " auto_tol=" << fmt_sig(rep.expand.auto_tol) << " max_order=" << rep.expand.max_order;
    else
        t << " order=" << rep.expand.order;
    t << "\n\n";
    t << "field    pairing   max_width            integral_width\n";
    for (const Field f : {Field::FPrime, Field::Theta, Field::Phi})
        for (const PairingWidths& pw : rep.pairings) {
            const WidthMetrics& w = pw.metrics(f);
            char line[96];
            std::snprintf(line, sizeof line, "%-8s %-9s %-20s %s\n",
                          std::string(field_name(f)).c_str(), pw.varied.c_str(),
                          fmt_sig(w.max_width).c_str(), fmt_sig(w.integral_width).c_str());
            t << line;
        }
    t << "\nwidest per field (by integral width):\n";
    for (const FieldRanking& r : rep.rankings) {
        char line[96];
        std::snprintf(line, sizeof line, "  %-7s %-5s reference %-5s %s\n",
                      std::string(field_name(r.field)).c_str(), r.widest.c_str(),
                      r.reference_widest.c_str(), r.matches_reference ? "agree" : "differ");
        t << line;
    }
    t << "overall agreement with reference ordering: "
      << (rep.all_match_reference ? "yes" : "no") << "\n";
    if (rep.degenerate) t << "note: spread = 0, all bands are zero-width (ranking degenerate)\n";
    result.table = t.str();
    return result;
}

inline RunResult run(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Solve: return run_solve(cfg);
        case Command::Sweep: return run_sweep(cfg);
        case Command::Validate: return run_validate(cfg);
        case Command::Report: return run_report(cfg);
    }
    throw std::logic_error("run: bad command");
}

// Path of the coefficient-dump sidecar next to a CSV artifact.
inline std::string terms_sidecar_path(const std::string& out_path) {
    const size_t dot = out_path.find_last_of('.');
    const size_t slash = out_path.find_last_of("/\\");
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? out_path.substr(0, dot) : out_path) + ".terms.json";
}

}  // namespace ihpm
