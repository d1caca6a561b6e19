#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triplewell/errors.hpp"
#include "triplewell/fd_oracle.hpp"
#include "triplewell/report.hpp"
#include "triplewell/variational.hpp"

#ifndef TRIPLEWELL_VERSION
#define TRIPLEWELL_VERSION "0.0.0"
#endif

namespace py = pybind11;
using namespace triplewell;

namespace {

py::object json_to_py(const ordered_json& doc) {
    return py::module_::import("json").attr("loads")(doc.dump());
}

RunConfig make_config(double omega, double half_width, std::size_t terms, int digits,
                      std::size_t levels) {
    RunConfig cfg;
    cfg.omega = omega;
    cfg.half_width = half_width;
    cfg.terms = terms;
    cfg.digits = digits;
    cfg.levels = levels;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_triplewell, m) {
    m.doc() = "high-precision eigensolver for a symmetric triple-well box potential";
    m.attr("__version__") = TRIPLEWELL_VERSION;
    m.attr("PRECISION_FLOOR_ENV") = kPrecisionFloorEnv;

    py::register_exception<PrecisionInsufficientError>(m, "PrecisionInsufficientError");
    py::register_exception<BracketError>(m, "BracketError");
    py::register_exception<IncompleteScanError>(m, "IncompleteScanError");
    py::register_exception<NodeMismatchError>(m, "NodeMismatchError");
    py::register_exception<NodeAmbiguityError>(m, "NodeAmbiguityError");
    py::register_exception<AnalysisError>(m, "AnalysisError");
    py::register_exception<DegenerateMinimumError>(m, "DegenerateMinimumError");
    py::register_exception<InvalidParameterError>(m, "InvalidParameterError",
                                                  PyExc_ValueError);

    m.def(
        "scan_levels",
        [](double omega, double half_width, std::size_t terms, int digits, std::size_t levels) {
            const SpectrumRun run =
                solve_spectrum(make_config(omega, half_width, terms, digits, levels));
            py::list out;
            for (const auto& lv : run.solved) {
                py::dict d;
                d["index"] = lv.level.index;
                d["parity"] = to_string(lv.level.parity);
                d["energy"] = lv.level.energy;
                d["nodes"] = lv.level.nodes;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("omega"), py::arg("half_width"), py::arg("terms"), py::arg("digits"),
        py::arg("levels") = 3,
        "Solve the lowest levels; energies come back as decimal strings.");

    m.def(
        "spectrum_report",
        [](double omega, double half_width, std::size_t terms, int digits, std::size_t levels) {
            return json_to_py(spectrum_report(make_config(omega, half_width, terms, digits,
                                                          levels)));
        },
        py::arg("omega"), py::arg("half_width"), py::arg("terms"), py::arg("digits"),
        py::arg("levels") = 3);

    m.def(
        "wavefunction_report",
        [](double omega, double half_width, std::size_t terms, int digits, std::size_t level,
           std::size_t samples) {
            return json_to_py(wavefunction_report(make_config(omega, half_width, terms, digits,
                                                              std::max<std::size_t>(level + 1, 3)),
                                                  level, samples));
        },
        py::arg("omega"), py::arg("half_width"), py::arg("terms"), py::arg("digits"),
        py::arg("level") = 0, py::arg("samples") = 501);

    m.def(
        "wavefunction_samples",
        [](double omega, double half_width, std::size_t terms, int digits, std::size_t level,
           std::size_t samples) {
            const ordered_json doc =
                wavefunction_report(make_config(omega, half_width, terms, digits,
                                                std::max<std::size_t>(level + 1, 3)),
                                    level, samples);
            py::list out;
            for (const auto& s : doc.at("samples")) {
                out.append(py::make_tuple(std::stod(s.at("x").get<std::string>()),
                                          std::stod(s.at("psi").get<std::string>())));
            }
            return out;
        },
        py::arg("omega"), py::arg("half_width"), py::arg("terms"), py::arg("digits"),
        py::arg("level") = 0, py::arg("samples") = 501,
        "Normalized (x, psi) pairs as floats, for plotting.");

    m.def(
        "variational_report",
        [](double omega, double half_width) {
            RunConfig cfg;
            cfg.omega = omega;
            cfg.half_width = half_width;
            return json_to_py(variational_report(cfg));
        },
        py::arg("omega"), py::arg("half_width") = 2.0);

    m.def(
        "oracle_report",
        [](double omega, double half_width, std::size_t levels, std::size_t grid_points) {
            RunConfig cfg;
            cfg.omega = omega;
            cfg.half_width = half_width;
            cfg.levels = levels;
            return json_to_py(oracle_report(cfg, grid_points));
        },
        py::arg("omega"), py::arg("half_width"), py::arg("levels") = 3,
        py::arg("grid_points") = 2000);

    m.def(
        "compare_report",
        [](double omega, double half_width, std::size_t terms, int digits,
           std::size_t grid_points) {
            return json_to_py(
                compare_report(make_config(omega, half_width, terms, digits, 3), grid_points));
        },
        py::arg("omega"), py::arg("half_width"), py::arg("terms"), py::arg("digits"),
        py::arg("grid_points") = 2000);

    m.def("reference_rows_report", [] { return json_to_py(reference_rows_report()); },
          "Solve all published reference rows and diff against the published strings.");

    m.def(
        "minimize_ground",
        [](double omega0, double omega1) {
            const IdealSpectrum s = minimize_ground(omega0, omega1);
            return py::make_tuple(
                s.theta_min, py::make_tuple(s.energies[0], s.energies[1], s.energies[2]));
        },
        py::arg("omega0"), py::arg("omega1"),
        "Closed-form (theta_min, (e0, e1, e2)) of the three-state model.");

    m.def(
        "model_states",
        [](double omega0, double omega1, double theta) {
            const ModelStates st = model_states(ThreeStateModel{omega0, omega1, theta});
            py::dict d;
            d["psi0"] = st.psi0;
            d["psi1"] = st.psi1;
            d["psi2"] = st.psi2;
            return d;
        },
        py::arg("omega0"), py::arg("omega1"), py::arg("theta"));

    m.def(
        "model_energies",
        [](double omega0, double omega1, double theta) {
            const ModelEnergies e = model_energies(ThreeStateModel{omega0, omega1, theta});
            return py::make_tuple(e.e0, e.e1, e.e2);
        },
        py::arg("omega0"), py::arg("omega1"), py::arg("theta"));

    m.def(
        "fd_spectrum",
        [](double omega, double half_width, std::size_t grid_points, std::size_t count) {
            return fd_spectrum(build_triple_well(omega, 256), half_width, grid_points, count);
        },
        py::arg("omega"), py::arg("half_width"), py::arg("grid_points") = 2000,
        py::arg("count") = 3);

    m.def(
        "fd_richardson",
        [](double omega, double half_width, std::size_t grid_points, std::size_t count) {
            return fd_richardson(build_triple_well(omega, 256), half_width, grid_points, count);
        },
        py::arg("omega"), py::arg("half_width"), py::arg("grid_points") = 2000,
        py::arg("count") = 3);
}
