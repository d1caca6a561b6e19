#include "triplewell/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "triplewell/errors.hpp"
#include "triplewell/fd_oracle.hpp"
#include "triplewell/potential.hpp"
#include "triplewell/variational.hpp"

#ifndef TRIPLEWELL_VERSION
#define TRIPLEWELL_VERSION "0.0.0"
#endif

namespace triplewell {

namespace {

constexpr const char* kSchemaId = "triplewell-report/1";

// Shortest round-trip decimal form of a double, e.g. for config echoes.
std::string number_string(double x) { return ordered_json(x).dump(); }

std::string fixed_string(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

long read_precision_floor() {
    const char* raw = std::getenv(kPrecisionFloorEnv);
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v <= 0 || v > 4000000) {
        throw InvalidParameterError(std::string(kPrecisionFloorEnv) +
                                    " must be a positive bit count");
    }
    return v;
}

BoxProblem make_problem(const RunConfig& cfg, std::size_t terms, mpfr_prec_t prec) {
    return BoxProblem{build_triple_well(cfg.omega, prec), BigFloat(cfg.half_width, prec), terms,
                      prec, pow10(-cfg.digits, prec)};
}

SolvedLevel refine_level(const BoxProblem& problem, const BigFloat& around, Parity parity) {
    const BigFloat w(0.01, problem.precision);
    return solve_in_bracket(problem, around - w, around + w, parity);
}

ordered_json metadata_block() {
    return ordered_json{{"tool", "triplewell"}, {"version", TRIPLEWELL_VERSION}};
}

ordered_json config_block(const RunConfig& cfg) {
    return ordered_json{{"omega", cfg.omega},
                        {"half_width", cfg.half_width},
                        {"terms", cfg.terms},
                        {"digits", cfg.digits},
                        {"levels", cfg.levels}};
}

ordered_json levels_block(const SpectrumRun& run) {
    ordered_json out = ordered_json::array();
    for (const auto& lv : run.solved) {
        out.push_back(ordered_json{{"index", lv.level.index},
                                   {"parity", to_string(lv.level.parity)},
                                   {"energy", lv.level.energy},
                                   {"nodes", lv.level.nodes}});
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (!(omega > 0) || !std::isfinite(omega)) {
        throw InvalidParameterError("omega must be finite and positive");
    }
    if (!(half_width > 0) || !std::isfinite(half_width)) {
        throw InvalidParameterError("half width must be finite and positive");
    }
    if (terms < 8) throw InvalidParameterError("series needs at least 8 terms");
    if (digits < 1 || digits > 40) {
        throw InvalidParameterError("digits must be between 1 and 40");
    }
    if (levels < 1) throw InvalidParameterError("level count must be at least 1");
    if (output_format != "json" && output_format != "csv") {
        throw InvalidParameterError("format must be json or csv");
    }
}

SpectrumRun solve_spectrum(const RunConfig& cfg) {
    cfg.validate();

    constexpr mpfr_prec_t scout = 512;
    const PolynomialPotential scout_v = build_triple_well(cfg.omega, scout);
    const WellAnalysis wells = analyze_wells(scout_v, -cfg.half_width, cfg.half_width);
    const BigFloat hint(wells.min_frequency() / 2.0, scout);
    const BigFloat scout_l(cfg.half_width, scout);

    SpectrumRun run;
    run.floor_bits = read_precision_floor();
    run.omega0 = wells.min_frequency();
    for (const auto& m : wells.minima) run.omega1 = std::max(run.omega1, m.frequency);

    mpfr_prec_t prec = calibrate_precision(scout_v, scout_l, cfg.terms, cfg.digits, hint);
    if (run.floor_bits > prec) prec = static_cast<mpfr_prec_t>(run.floor_bits);

    // A scan that comes up short or miscounts nodes is starved for terms:
    // the truncated boundary polynomial has not converged at the walls yet.
    // Growing the truncation fixes that, so the scan gets the same 25% steps
    // as the digit-stability loop below.
    std::size_t terms = cfg.terms;
    for (int round = 0;; ++round) {
        const BoxProblem problem = make_problem(cfg, terms, prec);
        try {
            run.solved = scan_levels_full(problem, cfg.levels);
            break;
        } catch (const IncompleteScanError&) {
            if (round == 5) throw;
        } catch (const NodeMismatchError&) {
            if (round == 5) throw;
        }
        ++run.extension_rounds;
        terms = (terms * 5 + 3) / 4;
        const mpfr_prec_t next =
            calibrate_precision(scout_v, scout_l, terms, cfg.digits, hint);
        if (next > prec) prec = next;
        if (run.floor_bits > prec) prec = static_cast<mpfr_prec_t>(run.floor_bits);
    }

    // Extend the truncation until the printed digits stop moving. Each round
    // re-solves every level in a tight same-parity bracket around the value
    // from the previous round.
    bool stable = false;
    for (int round = 0; round < 5 && !stable; ++round) {
        const std::size_t next_terms = (terms * 5 + 3) / 4;
        mpfr_prec_t next_prec =
            calibrate_precision(scout_v, scout_l, next_terms, cfg.digits, hint);
        if (next_prec < prec) next_prec = prec;
        if (run.floor_bits > next_prec) next_prec = static_cast<mpfr_prec_t>(run.floor_bits);
        const BoxProblem wider = make_problem(cfg, next_terms, next_prec);

        stable = true;
        std::vector<SolvedLevel> refined;
        refined.reserve(run.solved.size());
        for (const auto& lv : run.solved) {
            SolvedLevel r = refine_level(wider, lv.energy, lv.level.parity);
            if (r.level.nodes != lv.level.index) {
                throw NodeMismatchError("level " + std::to_string(lv.level.index) +
                                        " changed node count under truncation extension");
            }
            r.level.index = lv.level.index;
            if (r.level.energy != lv.level.energy) stable = false;
            refined.push_back(std::move(r));
        }
        if (!stable) {
            run.solved = std::move(refined);
            terms = next_terms;
            prec = next_prec;
            ++run.extension_rounds;
        }
    }
    if (!stable) {
        std::vector<std::string> found;
        for (const auto& lv : run.solved) found.push_back(lv.level.energy);
        throw IncompleteScanError("energies still moving after five truncation extensions",
                                  std::move(found));
    }

    // Confirm the digits once more with doubled working precision.
    for (int attempt = 0; attempt < 2; ++attempt) {
        const mpfr_prec_t check = prec * 2;
        const BoxProblem deeper = make_problem(cfg, terms, check);
        bool unchanged = true;
        std::vector<SolvedLevel> refined;
        refined.reserve(run.solved.size());
        for (const auto& lv : run.solved) {
            SolvedLevel r = refine_level(deeper, lv.energy, lv.level.parity);
            r.level.index = lv.level.index;
            if (r.level.energy != lv.level.energy) unchanged = false;
            refined.push_back(std::move(r));
        }
        if (unchanged) {
            run.bits = prec;
            run.terms_used = terms;
            run.potential = build_triple_well(cfg.omega, prec);
            return run;
        }
        run.solved = std::move(refined);
        prec = check;
    }
    throw PrecisionInsufficientError("digits kept moving under doubled working precision");
}

ordered_json spectrum_report(const RunConfig& cfg) {
    const SpectrumRun run = solve_spectrum(cfg);
    ordered_json doc;
    doc["schema"] = kSchemaId;
    doc["command"] = "spectrum";
    doc["config"] = config_block(cfg);
    doc["precision"] = ordered_json{{"bits", static_cast<long>(run.bits)},
                                    {"floor_bits", run.floor_bits},
                                    {"verified_bits", static_cast<long>(run.bits * 2)},
                                    {"verdict", "stable"}};
    doc["truncation"] = ordered_json{{"terms_initial", cfg.terms},
                                     {"terms_used", run.terms_used},
                                     {"extension_rounds", run.extension_rounds},
                                     {"verdict", "stable"}};
    doc["levels"] = levels_block(run);
    doc["metadata"] = metadata_block();
    return doc;
}

ordered_json wavefunction_report(const RunConfig& cfg, std::size_t level_index,
                                 std::size_t samples) {
    cfg.validate();
    if (level_index >= cfg.levels) {
        throw InvalidParameterError("level " + std::to_string(level_index) +
                                    " is outside the solved range (levels=" +
                                    std::to_string(cfg.levels) + ")");
    }
    if (samples < 2) throw InvalidParameterError("need at least 2 samples");
    const SpectrumRun run = solve_spectrum(cfg);

    // Normalization and sampling cancel roughly twice as hard as the boundary
    // sum, so the wavefunction pass runs well above the energy precision.
    const mpfr_prec_t wf_prec = run.bits * 2 + 128;
    const BoxProblem fine = make_problem(cfg, run.terms_used, wf_prec);
    const SolvedLevel& picked = run.solved[level_index];
    SolvedLevel lv = refine_level(fine, picked.energy, picked.level.parity);
    lv.level.index = picked.level.index;

    const BigFloat L(cfg.half_width, wf_prec);
    const SeriesWavefunction psi = normalize(lv.wavefunction, L);
    const std::vector<Sample> grid = sample_wavefunction(psi, L, samples);

    ordered_json doc;
    doc["schema"] = kSchemaId;
    doc["command"] = "wavefunction";
    doc["config"] = config_block(cfg);
    doc["precision"] = ordered_json{{"bits", static_cast<long>(wf_prec)},
                                    {"floor_bits", run.floor_bits}};
    doc["level"] = ordered_json{{"index", lv.level.index},
                                {"parity", to_string(lv.level.parity)},
                                {"energy", lv.level.energy},
                                {"nodes", lv.level.nodes}};
    doc["normalized"] = true;
    doc["sample_count"] = samples;
    ordered_json rows = ordered_json::array();
    for (const auto& s : grid) {
        rows.push_back(ordered_json{{"x", s.x.to_fixed(12)}, {"psi", s.psi.to_sci(16)}});
    }
    doc["samples"] = std::move(rows);
    doc["metadata"] = metadata_block();
    return doc;
}

ordered_json variational_report(const RunConfig& cfg) {
    if (!(cfg.omega > 0) || !std::isfinite(cfg.omega)) {
        throw InvalidParameterError("omega must be finite and positive");
    }
    if (!(cfg.half_width > 0) || !std::isfinite(cfg.half_width)) {
        throw InvalidParameterError("half width must be finite and positive");
    }
    const PolynomialPotential v = build_triple_well(cfg.omega, 256);
    const WellAnalysis wells = analyze_wells(v, -cfg.half_width, cfg.half_width);
    double omega0 = wells.min_frequency();
    double omega1 = 0.0;
    for (const auto& m : wells.minima) omega1 = std::max(omega1, m.frequency);
    if (!(omega1 > omega0)) {
        throw AnalysisError("potential lacks distinct central and side wells");
    }

    const IdealSpectrum ideal = minimize_ground(omega0, omega1);
    const ThreeStateModel at_min{omega0, omega1, ideal.theta_min};
    const ModelStates states = model_states(at_min);
    const ModelEnergies energies = model_energies(at_min);

    ordered_json doc;
    doc["schema"] = kSchemaId;
    doc["command"] = "variational";
    doc["config"] = ordered_json{{"omega", cfg.omega}, {"half_width", cfg.half_width}};
    doc["wells"] = ordered_json{{"omega0", omega0}, {"omega1", omega1}};
    doc["theta_min"] = ideal.theta_min;
    doc["ideal"] = ordered_json{{"e0", number_string(ideal.energies[0])},
                                {"e1", number_string(ideal.energies[1])},
                                {"e2", number_string(ideal.energies[2])}};
    doc["model_energies_at_min"] = ordered_json{{"e0", number_string(energies.e0)},
                                                {"e1", number_string(energies.e1)},
                                                {"e2", number_string(energies.e2)}};
    doc["states_at_min"] = ordered_json{{"psi0", states.psi0},
                                        {"psi1", states.psi1},
                                        {"psi2", states.psi2}};
    doc["metadata"] = metadata_block();
    return doc;
}

ordered_json oracle_report(const RunConfig& cfg, std::size_t grid_points) {
    if (!(cfg.omega > 0) || !std::isfinite(cfg.omega)) {
        throw InvalidParameterError("omega must be finite and positive");
    }
    const PolynomialPotential v = build_triple_well(cfg.omega, 256);
    const std::vector<double> raw = fd_spectrum(v, cfg.half_width, grid_points, cfg.levels);
    const std::vector<double> rich = fd_richardson(v, cfg.half_width, grid_points, cfg.levels);

    ordered_json doc;
    doc["schema"] = kSchemaId;
    doc["command"] = "oracle";
    doc["config"] = ordered_json{{"omega", cfg.omega},
                                 {"half_width", cfg.half_width},
                                 {"levels", cfg.levels}};
    doc["grid"] = ordered_json{{"interior_points", grid_points},
                               {"richardson_points", 2 * grid_points + 1},
                               {"spacing", 2.0 * cfg.half_width / (grid_points + 1)}};
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < raw.size(); ++k) {
        rows.push_back(ordered_json{{"index", k},
                                    {"raw", fixed_string(raw[k], 10)},
                                    {"richardson", fixed_string(rich[k], 10)}});
    }
    doc["levels"] = std::move(rows);
    doc["metadata"] = metadata_block();
    return doc;
}

ordered_json compare_report(const RunConfig& cfg, std::size_t grid_points) {
    RunConfig local = cfg;
    local.levels = 3;
    const SpectrumRun run = solve_spectrum(local);

    const IdealSpectrum ideal = minimize_ground(run.omega0, run.omega1);
    const std::vector<double> rich =
        fd_richardson(run.potential, cfg.half_width, grid_points, 3);

    std::vector<Eigenlevel> levels;
    for (const auto& lv : run.solved) levels.push_back(lv.level);
    const VariationalComparison cmp = compare_with_numerical(ideal, levels);

    bool oracle_warning = false;
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < 3; ++k) {
        const double series = run.solved[k].energy.to_double();
        const double dev_oracle = (rich[k] - series) / series;
        if (std::abs(dev_oracle) > 1e-3) oracle_warning = true;
        rows.push_back(ordered_json{
            {"index", k},
            {"parity", to_string(run.solved[k].level.parity)},
            {"series", run.solved[k].level.energy},
            {"ideal", number_string(ideal.energies[k])},
            {"oracle_richardson", fixed_string(rich[k], 10)},
            {"deviation_series_vs_ideal", cmp.relative_deviation[k]},
            {"deviation_oracle_vs_series", dev_oracle}});
    }

    char split[48];
    std::snprintf(split, sizeof(split), "%.6e", cmp.splitting);

    ordered_json doc;
    doc["schema"] = kSchemaId;
    doc["command"] = "compare";
    doc["config"] = config_block(local);
    doc["precision"] = ordered_json{{"bits", static_cast<long>(run.bits)},
                                    {"floor_bits", run.floor_bits}};
    doc["truncation"] = ordered_json{{"terms_initial", cfg.terms},
                                     {"terms_used", run.terms_used},
                                     {"extension_rounds", run.extension_rounds}};
    doc["wells"] = ordered_json{{"omega0", run.omega0}, {"omega1", run.omega1}};
    doc["levels"] = std::move(rows);
    doc["splitting"] = split;
    doc["pattern"] = ordered_json{{"ratio", cmp.ratio},
                                  {"classification", cmp.classification},
                                  {"paired_threshold", 0.1},
                                  {"equidistant_threshold", 0.1}};
    doc["oracle_grid"] = ordered_json{{"interior_points", grid_points},
                                      {"richardson_points", 2 * grid_points + 1}};
    doc["oracle_warning"] = oracle_warning;
    doc["metadata"] = metadata_block();
    return doc;
}

ordered_json reference_rows_report() {
    struct Row {
        double omega;
        double half_width;
        std::size_t terms;
        int digits;
        const char* published[3];
    };
    // Published reference values for the first three levels at each
    // parameter set, transcribed verbatim from the source table.
    static const Row rows[5] = {
        {20.0, 2.0, 750, 13,
         {"9.1100715702553", "17.5140977513941", "17.6975924458074"}},
        {40.0, 2.0, 1000, 15,
         {"19.200084475112926", "37.948103273585804", "37.948176236685948"}},
        {60.0, 1.5, 1000, 15,
         {"29.218766418207469", "58.017242546933332", "58.017242556963103"}},
        {80.0, 1.5, 1000, 15,
         {"39.227231934365212", "78.047249798583686", "78.047249798584662"}},
        {100.0, 1.5, 1500, 29,
         {"49.23207941514294132072024439682", "98.06414003277967330221270153882",
          "98.06414003277967338155670061896"}},
    };

    ordered_json out_rows = ordered_json::array();
    for (const Row& row : rows) {
        RunConfig cfg;
        cfg.omega = row.omega;
        cfg.half_width = row.half_width;
        cfg.terms = row.terms;
        cfg.digits = row.digits;
        cfg.levels = 3;
        const SpectrumRun run = solve_spectrum(cfg);

        ordered_json levels = ordered_json::array();
        for (std::size_t k = 0; k < 3; ++k) {
            const std::string& computed = run.solved[k].level.energy;
            const std::string published = row.published[k];
            std::string status = "match";
            std::string delta = "0";
            if (computed != published) {
                const mpfr_prec_t p = 256;
                const BigFloat diff =
                    BigFloat::from_string(computed, p) - BigFloat::from_string(published, p);
                const BigFloat ulp = pow10(-row.digits, p);
                status = (abs(diff) <= ulp) ? "final-digit" : "deviates";
                delta = diff.to_sci(2);
            }
            levels.push_back(ordered_json{{"index", k},
                                          {"parity", to_string(run.solved[k].level.parity)},
                                          {"computed", computed},
                                          {"published", published},
                                          {"status", status},
                                          {"delta", delta}});
        }
        out_rows.push_back(ordered_json{{"omega", row.omega},
                                        {"half_width", row.half_width},
                                        {"terms", row.terms},
                                        {"digits", row.digits},
                                        {"terms_used", run.terms_used},
                                        {"bits", static_cast<long>(run.bits)},
                                        {"levels", std::move(levels)}});
    }

    ordered_json doc;
    doc["schema"] = kSchemaId;
    doc["command"] = "table1";
    doc["description"] = "solved spectra side by side with published reference values";
    doc["rows"] = std::move(out_rows);
    doc["metadata"] = metadata_block();
    return doc;
}

std::string report_to_csv(const ordered_json& report) {
    const std::string command = report.at("command").get<std::string>();
    std::string out;

    auto cell = [](const ordered_json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };

    if (command == "spectrum") {
        out = "index,parity,energy,nodes\n";
        for (const auto& lv : report.at("levels")) {
            out += cell(lv.at("index")) + "," + cell(lv.at("parity")) + "," +
                   cell(lv.at("energy")) + "," + cell(lv.at("nodes")) + "\n";
        }
    } else if (command == "wavefunction") {
        out = "x,psi\n";
        for (const auto& s : report.at("samples")) {
            out += cell(s.at("x")) + "," + cell(s.at("psi")) + "\n";
        }
    } else if (command == "variational") {
        out = "key,value\n";
        out += "omega0," + cell(report.at("wells").at("omega0")) + "\n";
        out += "omega1," + cell(report.at("wells").at("omega1")) + "\n";
        out += "theta_min," + cell(report.at("theta_min")) + "\n";
        out += "e0," + cell(report.at("ideal").at("e0")) + "\n";
        out += "e1," + cell(report.at("ideal").at("e1")) + "\n";
        out += "e2," + cell(report.at("ideal").at("e2")) + "\n";
    } else if (command == "oracle") {
        out = "index,raw,richardson\n";
        for (const auto& lv : report.at("levels")) {
            out += cell(lv.at("index")) + "," + cell(lv.at("raw")) + "," +
                   cell(lv.at("richardson")) + "\n";
        }
    } else if (command == "compare") {
        out = "index,parity,series,ideal,oracle_richardson,dev_vs_ideal,dev_oracle_vs_series\n";
        for (const auto& lv : report.at("levels")) {
            out += cell(lv.at("index")) + "," + cell(lv.at("parity")) + "," +
                   cell(lv.at("series")) + "," + cell(lv.at("ideal")) + "," +
                   cell(lv.at("oracle_richardson")) + "," +
                   cell(lv.at("deviation_series_vs_ideal")) + "," +
                   cell(lv.at("deviation_oracle_vs_series")) + "\n";
        }
        out += "# splitting=" + cell(report.at("splitting")) + "\n";
        out += "# ratio=" + cell(report.at("pattern").at("ratio")) + "\n";
        out += "# classification=" + cell(report.at("pattern").at("classification")) + "\n";
    } else if (command == "table1") {
        out = "omega,index,parity,computed,published,status\n";
        for (const auto& row : report.at("rows")) {
            for (const auto& lv : row.at("levels")) {
                out += cell(row.at("omega")) + "," + cell(lv.at("index")) + "," +
                       cell(lv.at("parity")) + "," + cell(lv.at("computed")) + "," +
                       cell(lv.at("published")) + "," + cell(lv.at("status")) + "\n";
            }
        }
    } else {
        throw InvalidParameterError("no CSV rendering for command " + command);
    }
    return out;
}

int exit_code_for_error(const std::exception& error) {
    if (dynamic_cast<const InvalidParameterError*>(&error) != nullptr ||
        dynamic_cast<const DegenerateMinimumError*>(&error) != nullptr ||
        dynamic_cast<const DegenerateFunctionError*>(&error) != nullptr) {
        return 2;
    }
    if (dynamic_cast<const BracketError*>(&error) != nullptr ||
        dynamic_cast<const IncompleteScanError*>(&error) != nullptr ||
        dynamic_cast<const NodeMismatchError*>(&error) != nullptr ||
        dynamic_cast<const NodeAmbiguityError*>(&error) != nullptr ||
        dynamic_cast<const AnalysisError*>(&error) != nullptr) {
        return 3;
    }
    if (dynamic_cast<const PrecisionInsufficientError*>(&error) != nullptr) return 4;
    return 1;
}

}  // namespace triplewell
