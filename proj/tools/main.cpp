#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "triplewell/report.hpp"

namespace {

using triplewell::ordered_json;
using triplewell::RunConfig;

int emit(const ordered_json& report, const RunConfig& cfg) {
    std::string body;
    if (cfg.output_format == "csv") {
        body = triplewell::report_to_csv(report);
    } else {
        body = report.dump(2);
        body += '\n';
    }
    if (cfg.output_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open " << cfg.output_path << " for writing\n";
        return 5;
    }
    out << body;
    out.flush();
    if (!out) {
        std::cerr << "error: short write to " << cfg.output_path << "\n";
        return 5;
    }
    return 0;
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.output_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.output_path, "write the report to a file instead of stdout");
}

void add_solver_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--omega", cfg.omega, "well strength parameter")->required();
    sub->add_option("--half-width", cfg.half_width, "box half width L, walls at +-L")->required();
    sub->add_option("--terms", cfg.terms, "number of nonzero series terms")->required();
    sub->add_option("--digits", cfg.digits, "requested decimal places")->required();
    sub->add_option("--levels", cfg.levels, "number of levels to solve");
    add_output_options(sub, cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"high-precision eigensolver for a symmetric triple-well box potential"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");
    app.get_config_ptr()->configurable(false);

    RunConfig cfg;
    std::size_t level_index = 0;
    std::size_t samples = 501;
    std::size_t grid_points = 2000;

    CLI::App* spectrum = app.add_subcommand("spectrum", "solve the lowest levels");
    spectrum->configurable();
    add_solver_options(spectrum, cfg);

    CLI::App* wavefunction =
        app.add_subcommand("wavefunction", "normalized samples of one solved level");
    wavefunction->configurable();
    add_solver_options(wavefunction, cfg);
    wavefunction->add_option("--level", level_index, "level index to sample");
    wavefunction->add_option("--samples", samples, "number of sample points including the walls");

    CLI::App* variational =
        app.add_subcommand("variational", "three-state model spectrum at the exact minimum");
    variational->configurable();
    variational->add_option("--omega", cfg.omega, "well strength parameter")->required();
    variational->add_option("--half-width", cfg.half_width, "analysis window half width");
    add_output_options(variational, cfg);

    CLI::App* oracle =
        app.add_subcommand("oracle", "finite-difference cross-check eigenvalues");
    oracle->configurable();
    oracle->add_option("--omega", cfg.omega, "well strength parameter")->required();
    oracle->add_option("--half-width", cfg.half_width, "box half width")->required();
    oracle->add_option("--levels", cfg.levels, "number of levels");
    oracle->add_option("--grid-points", grid_points, "interior grid points");
    add_output_options(oracle, cfg);

    CLI::App* compare =
        app.add_subcommand("compare", "series vs ideal model vs finite-difference oracle");
    compare->configurable();
    add_solver_options(compare, cfg);
    compare->add_option("--grid-points", grid_points, "oracle interior grid points");

    CLI::App* table1 =
        app.add_subcommand("table1", "solve all published reference rows and diff them");
    add_output_options(table1, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed()) {
            return emit(triplewell::spectrum_report(cfg), cfg);
        }
        if (wavefunction->parsed()) {
            if (!wavefunction->count("--format")) cfg.output_format = "csv";
            return emit(triplewell::wavefunction_report(cfg, level_index, samples), cfg);
        }
        if (variational->parsed()) {
            if (!variational->count("--half-width")) cfg.half_width = 2.0;
            return emit(triplewell::variational_report(cfg), cfg);
        }
        if (oracle->parsed()) {
            return emit(triplewell::oracle_report(cfg, grid_points), cfg);
        }
        if (compare->parsed()) {
            return emit(triplewell::compare_report(cfg, grid_points), cfg);
        }
        if (table1->parsed()) {
            return emit(triplewell::reference_rows_report(), cfg);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return triplewell::exit_code_for_error(e);
    }
}
