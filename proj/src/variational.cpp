#include "triplewell/variational.hpp"

#include <cmath>

#include "triplewell/bigfloat.hpp"
#include "triplewell/errors.hpp"

namespace triplewell {

void ThreeStateModel::validate() const {
    if (!(omega0 > 0) || !std::isfinite(omega0) || !(omega1 > 0) || !std::isfinite(omega1)) {
        throw InvalidParameterError("well frequencies must be finite and positive");
    }
    if (!std::isfinite(theta)) throw InvalidParameterError("mixing angle must be finite");
}

ModelStates model_states(const ThreeStateModel& model) {
    model.validate();
    const double s = std::sin(model.theta);
    const double c = std::cos(model.theta);
    const double r = 1.0 / std::sqrt(2.0);
    ModelStates st;
    st.psi0 = {s * r, c, s * r};
    st.psi1 = {r, 0.0, -r};
    st.psi2 = {-c * r, s, -c * r};
    return st;
}

ModelEnergies model_energies(const ThreeStateModel& model) {
    model.validate();
    const double s = std::sin(model.theta);
    const double c = std::cos(model.theta);
    ModelEnergies e;
    e.e0 = 0.5 * (model.omega1 * s * s + model.omega0 * c * c);
    e.e1 = 0.5 * model.omega1;
    e.e2 = 0.5 * (model.omega1 * c * c + model.omega0 * s * s);
    return e;
}

IdealSpectrum minimize_ground(double omega0, double omega1) {
    ThreeStateModel probe{omega0, omega1, 0.0};
    probe.validate();
    if (omega0 == omega1) {
        throw DegenerateMinimumError("ground energy is independent of the mixing angle");
    }
    IdealSpectrum out;
    if (omega1 > omega0) {
        out.theta_min = 0.0;
        out.energies = {0.5 * omega0, 0.5 * omega1, 0.5 * omega1};
    } else {
        out.theta_min = std::asin(1.0);  // pi/2
        out.energies = {0.5 * omega1, 0.5 * omega1, 0.5 * omega0};
    }
    return out;
}

VariationalComparison compare_with_numerical(const IdealSpectrum& ideal,
                                             const std::vector<Eigenlevel>& levels) {
    if (levels.size() != 3) {
        throw InvalidParameterError("comparison needs exactly three levels");
    }
    constexpr mpfr_prec_t prec = 256;
    std::array<BigFloat, 3> num{BigFloat(prec), BigFloat(prec), BigFloat(prec)};
    for (std::size_t i = 0; i < 3; ++i) {
        num[i] = BigFloat::from_string(levels[i].energy, prec);
        if (!num[i].is_finite()) throw InvalidParameterError("level energy is not finite");
    }

    VariationalComparison out;
    for (std::size_t i = 0; i < 3; ++i) {
        if (ideal.energies[i] == 0.0) {
            throw InvalidParameterError("ideal energy is zero; relative deviation undefined");
        }
        out.relative_deviation[i] = (num[i].to_double() - ideal.energies[i]) / ideal.energies[i];
    }

    const BigFloat upper_gap = num[2] - num[1];
    const BigFloat lower_gap = num[1] - num[0];
    out.splitting = upper_gap.to_double();
    if (lower_gap.is_zero()) {
        throw InvalidParameterError("lower levels are degenerate; pattern ratio undefined");
    }
    out.ratio = (upper_gap / lower_gap).to_double();

    if (out.ratio < 0.1) {
        out.classification = "paired";
    } else if (std::abs(out.ratio - 1.0) < 0.1) {
        out.classification = "equidistant";
    } else {
        out.classification = "other";
    }
    return out;
}

}  // namespace triplewell
