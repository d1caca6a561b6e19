#pragma once

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#include "json.hpp"
#include "triplewell/series_solver.hpp"

namespace triplewell {

using ordered_json = nlohmann::ordered_json;

// Environment variable holding a minimum working precision in bits; when set
// it raises (never lowers) the calibrated precision of every solve.
inline constexpr const char* kPrecisionFloorEnv = "TRIPLEWELL_MIN_PRECISION_BITS";

struct RunConfig {
    double omega = 0.0;
    double half_width = 0.0;
    std::size_t terms = 0;
    int digits = 0;
    std::size_t levels = 3;
    std::string output_format = "json";  // "json" | "csv"
    std::string output_path;             // empty -> stdout

    void validate() const;
};

// A fully solved spectrum with its numerical provenance. `terms` in the
// config is the starting truncation; the pipeline re-solves with 25% more
// terms until the printed digits stop moving, then confirms them once more
// at doubled precision, so every reported digit is stable under both knobs.
struct SpectrumRun {
    mpfr_prec_t bits = 0;          // calibrated working precision
    long floor_bits = 0;           // env floor, 0 when unset
    std::size_t terms_used = 0;    // final truncation
    std::size_t extension_rounds = 0;
    std::vector<SolvedLevel> solved;
    PolynomialPotential potential{std::vector<BigFloat>{}};
    double omega0 = 0.0;  // central-well frequency
    double omega1 = 0.0;  // side-well frequency
};

SpectrumRun solve_spectrum(const RunConfig& cfg);

ordered_json spectrum_report(const RunConfig& cfg);
ordered_json wavefunction_report(const RunConfig& cfg, std::size_t level_index,
                                 std::size_t samples);
ordered_json variational_report(const RunConfig& cfg);
ordered_json oracle_report(const RunConfig& cfg, std::size_t grid_points);
ordered_json compare_report(const RunConfig& cfg, std::size_t grid_points);
ordered_json reference_rows_report();

// CSV renderings of the same documents (wavefunction CSV is the `x,psi`
// sample table; the others are flat tables for spreadsheets).
std::string report_to_csv(const ordered_json& report);

// Maps library errors onto the documented process exit codes:
// 2 invalid parameters, 3 bracket/scan failure, 4 precision insufficient,
// 1 anything unexpected.
int exit_code_for_error(const std::exception& error);

}  // namespace triplewell
