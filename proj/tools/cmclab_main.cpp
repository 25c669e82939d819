#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmclab/config.hpp"
#include "cmclab/error.hpp"
#include "cmclab/foliation.hpp"
#include "cmclab/report.hpp"

namespace {

// Exit codes are a stable contract.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitMetric = 3;
constexpr int kExitRange = 4;
constexpr int kExitSuiteFail = 5;

int exit_code_for(const cmclab::Error& e) {
    switch (e.kind()) {
        case cmclab::ErrorKind::BadConfig:
            return kExitConfig;
        case cmclab::ErrorKind::NoHorizon:
        case cmclab::ErrorKind::NotOutermost:
        case cmclab::ErrorKind::BadMetric:
            return kExitMetric;
        case cmclab::ErrorKind::OutOfRange:
        case cmclab::ErrorKind::BarrierViolation:
            return kExitRange;
        case cmclab::ErrorKind::OracleMismatch:
            return kExitSuiteFail;
    }
    return kExitInternal;
}

struct Options {
    std::string metric;
    std::size_t grid = 10000;
    std::string out_dir;
    std::string format;  // csv | json | table
    std::vector<double> h_values;
};

std::string resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CMCLAB_OUT_DIR"); env && *env) return env;
    return ".";
}

void add_common(CLI::App* cmd, Options& opt, const std::string& default_format) {
    cmd->add_option("--metric", opt.metric, "bundled metric name or config file path")
        ->required();
    cmd->add_option("--grid", opt.grid, "radial grid resolution (>= 100)");
    cmd->add_option("--out", opt.out_dir, "output directory (default: CMCLAB_OUT_DIR or .)");
    opt.format = default_format;
    cmd->add_option("--format", opt.format, "output format: csv, json, or table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
}

void require_grid(const Options& opt) {
    if (opt.grid < 100)
        throw cmclab::Error(cmclab::ErrorKind::BadConfig, "--grid must be at least 100");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw cmclab::Error(cmclab::ErrorKind::BadConfig,
                            "cannot write output file: " + path.string());
    out << content;
}

int run_analyze(const Options& opt) {
    require_grid(opt);
    const cmclab::Metric metric = cmclab::load_metric(opt.metric);
    const cmclab::AnalyzeSummary summary = cmclab::analyze_metric(metric, opt.grid);
    if (opt.format == "json") {
        std::cout << cmclab::canonical_json(cmclab::analyze_json(summary));
    } else {
        cmclab::print_analyze_table(std::cout, summary);
    }
    return kExitOk;
}

int run_foliate(const Options& opt) {
    require_grid(opt);
    const cmclab::Metric metric = cmclab::load_metric(opt.metric);
    cmclab::require_exterior_region(metric);
    const cmclab::FoliationProfile profile = cmclab::level_set_function(metric, opt.grid);

    std::vector<cmclab::BoundReport> checks;
    for (double h : opt.h_values) {
        // Out-of-range h is a usage error, surfaced before any file output.
        const double r_of_h = cmclab::outermost_cmc_radius(metric, profile.region, h);
        cmclab::RadialSet best =
            cmclab::minimize_j_h_outside(metric, profile.region, h, opt.grid);
        cmclab::BoundReport oracle = cmclab::make_bound_report(
            "jh_minimizer", std::abs(best.outer_radius - r_of_h),
            3.0 * (profile.region.r_star - profile.region.r_horizon) /
                static_cast<double>(opt.grid),
            0.0);
        oracle.extras["h"] = h;
        oracle.extras["r_of_h"] = r_of_h;
        checks.push_back(oracle);
        checks.push_back(cmclab::check_subsolution(metric, profile, h, 256));
    }
    checks.push_back(cmclab::bv_norm_check(metric, profile));

    const std::filesystem::path dir = resolve_out_dir(opt.out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream csv;
    cmclab::write_profile_csv(csv, profile);
    const std::string json_text =
        cmclab::canonical_json(cmclab::foliate_json(metric, profile, checks));
    const auto csv_path = dir / (metric.id() + "_foliation.csv");
    const auto json_path = dir / (metric.id() + "_foliation.json");
    write_file(csv_path, csv.str());
    write_file(json_path, json_text);

    if (opt.format == "csv") {
        std::cout << csv.str();
    } else if (opt.format == "json") {
        std::cout << json_text;
    } else {
        std::cout << "wrote " << csv_path.string() << '\n'
                  << "wrote " << json_path.string() << '\n'
                  << "plateaus: " << profile.plateaus.size() << '\n';
    }
    return kExitOk;
}

int run_verify(const Options& opt) {
    require_grid(opt);
    const cmclab::Metric metric = cmclab::load_metric(opt.metric);
    const cmclab::SuiteResult suite = cmclab::run_verify_suite(metric, opt.grid, opt.h_values);
    const std::string json_text = cmclab::canonical_json(cmclab::suite_json(suite));
    if (!opt.out_dir.empty() || std::getenv("CMCLAB_OUT_DIR")) {
        const std::filesystem::path dir = resolve_out_dir(opt.out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / (metric.id() + "_verify.json"), json_text);
    }
    if (opt.format == "table") {
        cmclab::print_suite_table(std::cout, suite);
    } else {
        std::cout << json_text;
    }
    std::cerr << "verify wall time: " << suite.wall_ms << " ms\n";
    return suite.overall ? kExitOk : kExitSuiteFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CMC sphere analyzer for conformally flat metrics"};
    // Help is long-form only: the short -h would collide with the --h option.
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    Options analyze_opt, foliate_opt, verify_opt;
    CLI::App* analyze = app.add_subcommand("analyze", "horizon, masses, and H_max summary");
    analyze->set_help_flag("--help", "print help and exit");
    add_common(analyze, analyze_opt, "table");
    CLI::App* foliate = app.add_subcommand("foliate", "level-set foliation profile and checks");
    foliate->set_help_flag("--help", "print help and exit");
    add_common(foliate, foliate_opt, "table");
    foliate->add_option("--h", foliate_opt.h_values,
                        "CMC value(s) for the minimizer oracle and sub-solution checks");
    CLI::App* verify = app.add_subcommand("verify", "run the full inequality suite");
    verify->set_help_flag("--help", "print help and exit");
    add_common(verify, verify_opt, "json");
    verify->add_option("--h", verify_opt.h_values, "extra CMC target value(s)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(analyze_opt);
        if (app.got_subcommand(foliate)) return run_foliate(foliate_opt);
        if (app.got_subcommand(verify)) return run_verify(verify_opt);
        std::cerr << "no subcommand\n";
        return kExitConfig;
    } catch (const cmclab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
