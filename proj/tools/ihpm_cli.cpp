#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "ihpm/app.hpp"

namespace {

struct CliState {
    ihpm::RunConfig cfg;
    std::string uncertain_csv;
    std::vector<std::string> interval_specs;
    std::string fields_csv;
    std::string format = "csv";
    std::string config_path;
};

// Applies key=value pairs from a config file to options the command line left
// untouched, so flags always win. CLI11 2.4 never processes a config option
// attached to a subcommand (App::_process_config_file only runs on the root
// app), hence this manual pass over the parsed subcommand.
void apply_config_file(CLI::App& sub, const std::string& path) {
    std::vector<CLI::ConfigItem> items;
    try {
        items = sub.get_config_formatter()->from_file(path);
    } catch (const CLI::Error& e) {
        throw std::invalid_argument(e.what());
    }
    for (const CLI::ConfigItem& item : items) {
        CLI::Option* op = sub.get_option_no_throw("--" + item.name);
        if (op == nullptr)
            throw std::invalid_argument("config file: unknown key '" + item.name + "'");
        if (!op->empty()) continue;
        try {
            if (op->get_expected_min() == 0 && item.inputs.size() <= 1)
                op->add_result(op->get_flag_value(
                    item.name, item.inputs.empty() ? "true" : item.inputs.front()));
            else
                op->add_result(item.inputs);
            op->run_callback();
        } catch (const CLI::Error& e) {
            throw std::invalid_argument("config file: key '" + item.name + "': " + e.what());
        }
    }
}

void add_physics_options(CLI::App* sub, CliState& st, bool base_aliases) {
    ihpm::FlowParams& p = st.cfg.params;
    sub->add_option(base_aliases ? "--S,--base-S" : "--S", p.S, "squeeze number")
        ->capture_default_str();
    sub->add_option(base_aliases ? "--A,--base-A" : "--A", p.A, "suction/injection parameter")
        ->capture_default_str();
    sub->add_option(base_aliases ? "--M,--base-M" : "--M", p.M, "magnetic (Hartmann) number")
        ->capture_default_str();
    sub->add_option("--Pr", p.Pr, "Prandtl number")->capture_default_str();
    sub->add_option("--Nb", p.Nb, "Brownian motion parameter")->capture_default_str();
    sub->add_option("--Nt", p.Nt, "thermophoresis parameter")->capture_default_str();
    sub->add_option("--Le", p.Le, "Lewis number")->capture_default_str();
    sub->add_option("--order", st.cfg.expand.order, "number of correction terms")
        ->capture_default_str();
    sub->add_option("--auto-tol", st.cfg.expand.auto_tol,
                    "stop adding terms once the newest term's max-abs value drops below this "
                    "(0 disables; overrides --order)")
        ->capture_default_str();
    sub->add_option("--max-order", st.cfg.expand.max_order, "hard cap for --auto-tol expansion")
        ->capture_default_str();
}

void add_output_options(CLI::App* sub, CliState& st) {
    sub->add_option("--out", st.cfg.out_path, "output file (default: stdout)");
    sub->add_option("--format", st.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CliState st;
    CLI::App app{"Squeezing-nanofluid channel flow: perturbation-series solver with interval "
                 "uncertainty propagation"};
    app.require_subcommand(1);

    CLI::App* solve = app.add_subcommand(
        "solve", "Solve the crisp problem and tabulate f, f', theta, phi over eta");
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Propagate interval uncertainty in S, A, M into envelope bands");
    CLI::App* validate = app.add_subcommand(
        "validate", "Compare the series solution against an independent shooting solution");
    CLI::App* report = app.add_subcommand(
        "report", "Rank the (S,M), (S,A), (A,M) uncertainty pairings by band width");

    for (CLI::App* sub : {solve, sweep, validate, report}) {
        add_physics_options(sub, st, sub == report);
        add_output_options(sub, st);
        sub->add_option("--config", st.config_path,
                        "flat key=value config file; flags take precedence");
    }
    for (CLI::App* sub : {solve, sweep, report})
        sub->add_option("--eta-points", st.cfg.eta_points, "number of eta grid points")
            ->capture_default_str();
    for (CLI::App* sub : {sweep, report}) {
        sub->add_option("--spread", st.cfg.spread,
                        "relative half-width for uncertain parameters (0.05 = +/-5%)")
            ->capture_default_str();
        sub->add_option("--alpha-samples", st.cfg.alpha_samples,
                        "samples per uncertain interval (endpoints included)")
            ->capture_default_str();
    }
    for (CLI::App* sub : {solve, sweep})
        sub->add_option("--fields", st.fields_csv,
                        "comma list among f,fprime,theta,phi (default: all for solve; "
                        "fprime,theta,phi for sweep)");
    sweep->add_option("--uncertain", st.uncertain_csv,
                      "comma list among S,A,M to widen by +/- spread");
    sweep->add_option("--interval", st.interval_specs,
                      "explicit bounds NAME=lo:hi (repeatable; overrides --uncertain)");
    solve->add_flag("--dump-terms", st.cfg.dump_terms,
                    "also emit per-order polynomial coefficients as JSON");
    validate->add_option("--oracle-steps", st.cfg.oracle_steps, "RK4 steps for the reference run")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!st.config_path.empty()) apply_config_file(*sub, st.config_path);
        if (sub == solve)
            st.cfg.command = ihpm::Command::Solve;
        else if (sub == sweep)
            st.cfg.command = ihpm::Command::Sweep;
        else if (sub == validate)
            st.cfg.command = ihpm::Command::Validate;
        else
            st.cfg.command = ihpm::Command::Report;
        st.cfg.format =
            st.format == "json" ? ihpm::OutputFormat::Json : ihpm::OutputFormat::Csv;
        st.cfg.format_explicit = sub->count("--format") > 0;
        st.cfg.uncertain = ihpm::split_list(st.uncertain_csv);
        for (const std::string& spec : st.interval_specs) {
            const size_t eq = spec.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--interval expects NAME=lo:hi, got '" + spec + "'");
            st.cfg.explicit_intervals.emplace_back(spec.substr(0, eq),
                                                   ihpm::parse_interval(spec.substr(eq + 1)));
        }
        for (const std::string& name : ihpm::split_list(st.fields_csv))
            st.cfg.fields.push_back(ihpm::parse_field(name));

        const ihpm::RunResult result = ihpm::run(st.cfg);
        if (st.cfg.command == ihpm::Command::Report) {
            std::cout << result.table;
            if (!st.cfg.out_path.empty()) ihpm::write_text_file(st.cfg.out_path, result.artifact);
        } else {
            if (st.cfg.out_path.empty())
                std::cout << result.artifact;
            else
                ihpm::write_text_file(st.cfg.out_path, result.artifact);
            if (!result.terms_json.empty())
                ihpm::write_text_file(ihpm::terms_sidecar_path(st.cfg.out_path),
                                      result.terms_json);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
