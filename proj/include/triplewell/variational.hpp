#pragma once

#include <array>
#include <string>
#include <vector>

#include "triplewell/series_solver.hpp"

namespace triplewell {

// Three-state trial space: one harmonic ground state per well, ordered
// (right, center, left), with exactly zero cross-well overlaps. The mixing
// angle theta parameterizes the even sector; the odd combination is fixed
// by parity.
struct ThreeStateModel {
    double omega0 = 0.0;  // central-well frequency
    double omega1 = 0.0;  // side-well frequency
    double theta = 0.0;   // mixing angle, radians

    void validate() const;
};

struct ModelStates {
    std::array<double, 3> psi0;  // (alpha, beta, gamma) over (R, C, L)
    std::array<double, 3> psi1;
    std::array<double, 3> psi2;
};

struct ModelEnergies {
    double e0 = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
};

struct IdealSpectrum {
    double theta_min = 0.0;
    std::array<double, 3> energies{};
};

ModelStates model_states(const ThreeStateModel& model);

ModelEnergies model_energies(const ThreeStateModel& model);

// Closed-form argmin of E0(theta); no numerical search. The two frequencies
// must differ, otherwise E0 does not depend on theta at all.
IdealSpectrum minimize_ground(double omega0, double omega1);

struct VariationalComparison {
    std::array<double, 3> relative_deviation{};  // (numerical - ideal) / ideal
    double splitting = 0.0;                      // E2 - E1, exact decimal subtraction
    double ratio = 0.0;                          // (E2 - E1) / (E1 - E0)
    std::string classification;                  // "paired" | "equidistant" | "other"
};

// The numerical energies arrive as decimal strings; the pair splitting is
// far below double-precision resolution of the energies themselves, so the
// differences are taken in extended precision before narrowing.
VariationalComparison compare_with_numerical(const IdealSpectrum& ideal,
                                             const std::vector<Eigenlevel>& levels);

}  // namespace triplewell
