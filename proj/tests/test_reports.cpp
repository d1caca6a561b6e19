#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <string>
#include <vector>

#include "triplewell/errors.hpp"
#include "triplewell/report.hpp"

using namespace triplewell;

namespace {

RunConfig quick_config() {
    RunConfig cfg;
    cfg.omega = 20.0;
    cfg.half_width = 2.0;
    cfg.terms = 650;
    cfg.digits = 6;
    cfg.levels = 3;
    return cfg;
}

struct EnvGuard {
    explicit EnvGuard(const char* value) {
        if (value) {
            setenv(kPrecisionFloorEnv, value, 1);
        } else {
            unsetenv(kPrecisionFloorEnv);
        }
    }
    ~EnvGuard() { unsetenv(kPrecisionFloorEnv); }
};

}  // namespace

TEST_CASE("run config validation") {
    RunConfig cfg = quick_config();
    CHECK_NOTHROW(cfg.validate());

    cfg.omega = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = quick_config();
    cfg.half_width = -2.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = quick_config();
    cfg.terms = 7;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = quick_config();
    cfg.digits = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = quick_config();
    cfg.digits = 41;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = quick_config();
    cfg.levels = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
    cfg = quick_config();
    cfg.output_format = "xml";
    CHECK_THROWS_AS(cfg.validate(), InvalidParameterError);
}

TEST_CASE("spectrum pipeline solves and stabilizes the quick row") {
    const SpectrumRun run = solve_spectrum(quick_config());
    REQUIRE(run.solved.size() == 3);
    CHECK(run.solved[0].level.energy == "9.110072");
    CHECK(run.solved[1].level.energy == "17.514098");
    CHECK(run.solved[2].level.energy == "17.697592");
    CHECK(run.solved[0].level.parity == Parity::even);
    CHECK(run.solved[1].level.parity == Parity::odd);
    CHECK(run.solved[2].level.parity == Parity::even);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(run.solved[k].level.index == k);
        CHECK(run.solved[k].level.nodes == k);
    }
    CHECK(run.bits >= 256);
    CHECK(run.bits % 64 == 0);
    CHECK(run.terms_used >= 300);
    CHECK(run.omega0 == 20.0);
    CHECK(run.omega1 == 40.0);
    CHECK(run.floor_bits == 0);
}

TEST_CASE("spectrum report is deterministic and carries string energies") {
    const ordered_json a = spectrum_report(quick_config());
    const ordered_json b = spectrum_report(quick_config());
    CHECK(a.dump() == b.dump());

    CHECK(a.at("schema") == "triplewell-report/1");
    CHECK(a.at("command") == "spectrum");
    CHECK(a.at("config").at("omega") == 20.0);
    CHECK(a.at("config").at("terms") == 650);
    CHECK(a.at("precision").at("verdict") == "stable");
    CHECK(a.at("truncation").at("verdict") == "stable");
    CHECK(a.at("truncation").at("terms_initial") == 650);
    CHECK(a.at("metadata").at("tool") == "triplewell");
    for (const auto& lv : a.at("levels")) {
        CHECK(lv.at("energy").is_string());
    }
}

TEST_CASE("environment floor raises the working precision but never lowers it") {
    {
        const EnvGuard guard("1024");
        const SpectrumRun run = solve_spectrum(quick_config());
        CHECK(run.floor_bits == 1024);
        CHECK(run.bits >= 1024);
    }
    {
        const EnvGuard guard("64");
        const SpectrumRun run = solve_spectrum(quick_config());
        CHECK(run.floor_bits == 64);
        CHECK(run.bits >= 256);
    }
}

TEST_CASE("environment floor rejects unusable values") {
    for (const char* bad : {"abc", "0", "-128", "12e4"}) {
        CAPTURE(bad);
        const EnvGuard guard(bad);
        CHECK_THROWS_AS(solve_spectrum(quick_config()), InvalidParameterError);
    }
    // An empty value counts as unset rather than malformed.
    const EnvGuard guard("");
    CHECK(solve_spectrum(quick_config()).floor_bits == 0);
}

TEST_CASE("wavefunction report samples a normalized level") {
    const ordered_json doc = wavefunction_report(quick_config(), 1, 41);
    CHECK(doc.at("command") == "wavefunction");
    CHECK(doc.at("normalized") == true);
    CHECK(doc.at("sample_count") == 41);
    CHECK(doc.at("level").at("parity") == "odd");
    CHECK(doc.at("level").at("nodes") == 1);
    REQUIRE(doc.at("samples").size() == 41);
    CHECK(doc.at("samples").front().at("x") == "-2.000000000000");
    CHECK(doc.at("samples").back().at("x") == "2.000000000000");

    double peak = 0.0;
    std::vector<double> psis;
    for (const auto& s : doc.at("samples")) {
        const double p = std::stod(s.at("psi").get<std::string>());
        psis.push_back(p);
        peak = std::max(peak, std::abs(p));
    }
    CHECK(peak > 0.5);
    CHECK(std::abs(psis.front()) <= 1e-6 * peak);
    CHECK(std::abs(psis.back()) <= 1e-6 * peak);
    // Odd level: antisymmetric samples, zero dead center.
    CHECK(psis[20] == 0.0);
    for (std::size_t i = 0; i < psis.size(); ++i) {
        CHECK(psis[i] == doctest::Approx(-psis[psis.size() - 1 - i]).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("wavefunction report rejects bad requests") {
    CHECK_THROWS_AS(wavefunction_report(quick_config(), 9, 41), InvalidParameterError);
    CHECK_THROWS_AS(wavefunction_report(quick_config(), 0, 1), InvalidParameterError);
}

TEST_CASE("variational report carries the exact ideal spectrum") {
    RunConfig cfg;
    cfg.omega = 20.0;
    cfg.half_width = 2.0;
    const ordered_json doc = variational_report(cfg);
    CHECK(doc.at("command") == "variational");
    CHECK(doc.at("wells").at("omega0") == 20.0);
    CHECK(doc.at("wells").at("omega1") == 40.0);
    CHECK(doc.at("theta_min") == 0.0);
    CHECK(doc.at("ideal").at("e0") == "10.0");
    CHECK(doc.at("ideal").at("e1") == "20.0");
    CHECK(doc.at("ideal").at("e2") == "20.0");
    CHECK(doc.at("states_at_min").at("psi0") == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("oracle report echoes its grid and formats ten decimals") {
    RunConfig cfg;
    cfg.omega = 20.0;
    cfg.half_width = 2.0;
    cfg.levels = 3;
    const ordered_json doc = oracle_report(cfg, 2000);
    CHECK(doc.at("command") == "oracle");
    CHECK(doc.at("grid").at("interior_points") == 2000);
    CHECK(doc.at("grid").at("richardson_points") == 4001);
    REQUIRE(doc.at("levels").size() == 3);
    const std::string rich = doc.at("levels")[0].at("richardson").get<std::string>();
    CHECK(rich.substr(0, 6) == "9.1100");
    CHECK(rich.size() == rich.find('.') + 11);
}

TEST_CASE("compare report classifies the lowest row as paired") {
    const ordered_json doc = compare_report(quick_config(), 2000);
    CHECK(doc.at("command") == "compare");
    CHECK(doc.at("wells").at("omega0") == 20.0);
    CHECK(doc.at("wells").at("omega1") == 40.0);
    CHECK(doc.at("pattern").at("classification") == "paired");
    const double ratio = doc.at("pattern").at("ratio").get<double>();
    CHECK(std::abs(ratio - 0.0218) <= 0.001);
    CHECK(doc.at("oracle_warning") == false);
    CHECK(doc.at("splitting") == "1.834940e-01");
    REQUIRE(doc.at("levels").size() == 3);
    for (const auto& lv : doc.at("levels")) {
        CHECK(std::abs(lv.at("deviation_oracle_vs_series").get<double>()) < 1e-3);
        CHECK(lv.at("deviation_series_vs_ideal").get<double>() < 0.0);
    }
}

TEST_CASE("csv renderings start with their documented headers") {
    const ordered_json spec_doc = spectrum_report(quick_config());
    const std::string spectrum_csv = report_to_csv(spec_doc);
    CHECK(spectrum_csv.rfind("index,parity,energy,nodes\n", 0) == 0);
    CHECK(spectrum_csv.find("0,even,9.110072,0\n") != std::string::npos);
    CHECK(spectrum_csv.back() == '\n');

    const ordered_json wf_doc = wavefunction_report(quick_config(), 0, 11);
    const std::string wf_csv = report_to_csv(wf_doc);
    CHECK(wf_csv.rfind("x,psi\n", 0) == 0);
    std::size_t rows = 0;
    for (const char c : wf_csv) rows += (c == '\n');
    CHECK(rows == 12);
}

TEST_CASE("library errors map onto the documented exit codes") {
    CHECK(exit_code_for_error(InvalidParameterError("x")) == 2);
    CHECK(exit_code_for_error(DegenerateMinimumError("x")) == 2);
    CHECK(exit_code_for_error(DegenerateFunctionError("x")) == 2);
    CHECK(exit_code_for_error(BracketError("x")) == 3);
    CHECK(exit_code_for_error(IncompleteScanError("x", {})) == 3);
    CHECK(exit_code_for_error(NodeMismatchError("x")) == 3);
    CHECK(exit_code_for_error(NodeAmbiguityError("x")) == 3);
    CHECK(exit_code_for_error(AnalysisError("x")) == 3);
    CHECK(exit_code_for_error(PrecisionInsufficientError("x")) == 4);
    CHECK(exit_code_for_error(std::runtime_error("x")) == 1);
}
