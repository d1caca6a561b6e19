#include "triplewell/potential.hpp"

#include <cmath>
#include <limits>

#include "triplewell/errors.hpp"

namespace triplewell {

namespace {

const BigFloat kZero(0, MPFR_PREC_MIN);

// Bisection refinement of a sign change of f over [a, b].
double bisect_double(const std::vector<double>& poly, double a, double b, double fa) {
    for (int it = 0; it < 200 && b - a > 1e-16 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        const double m = 0.5 * (a + b);
        double fm = 0.0;
        for (auto c = poly.rbegin(); c != poly.rend(); ++c) fm = fm * m + *c;
        if (fm == 0.0) return m;
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

PolynomialPotential::PolynomialPotential(std::vector<BigFloat> coefficients)
    : coeffs_(std::move(coefficients)) {
    for (const auto& c : coeffs_) {
        if (!c.is_finite()) throw InvalidParameterError("potential coefficient is not finite");
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const BigFloat& PolynomialPotential::coefficient(std::size_t k) const {
    if (k < coeffs_.size()) return coeffs_[k];
    return kZero;
}

bool PolynomialPotential::is_even() const {
    for (std::size_t k = 1; k < coeffs_.size(); k += 2) {
        if (!coeffs_[k].is_zero()) return false;
    }
    return true;
}

PolynomialPotential PolynomialPotential::derivative() const {
    std::vector<BigFloat> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        BigFloat c(coeffs_[k].precision());
        mpfr_mul_ui(c.raw(), coeffs_[k].raw(), static_cast<unsigned long>(k), MPFR_RNDN);
        d.push_back(std::move(c));
    }
    return PolynomialPotential(std::move(d));
}

PolynomialPotential build_triple_well(const BigFloat& omega) {
    if (!omega.is_finite() || omega.sign() <= 0) {
        throw InvalidParameterError("triple well requires omega > 0");
    }
    const mpfr_prec_t prec = omega.precision();
    BigFloat w2(prec);
    mpfr_sqr(w2.raw(), omega.raw(), MPFR_RNDN);
    BigFloat half(prec);
    mpfr_div_ui(half.raw(), w2.raw(), 2, MPFR_RNDN);

    std::vector<BigFloat> c(7, BigFloat(0, prec));
    c[2] = half;
    c[4] = -w2;
    c[6] = std::move(half);
    return PolynomialPotential(std::move(c));
}

PolynomialPotential build_triple_well(double omega, mpfr_prec_t prec) {
    if (!std::isfinite(omega) || omega <= 0) {
        throw InvalidParameterError("triple well requires omega > 0");
    }
    return build_triple_well(BigFloat(omega, prec));
}

BigFloat evaluate(const PolynomialPotential& V, const BigFloat& x) {
    if (!x.is_finite()) throw InvalidParameterError("potential argument is not finite");
    mpfr_prec_t prec = x.precision();
    for (const auto& c : V.coefficients()) prec = std::max(prec, c.precision());
    BigFloat r(prec);
    const auto& cs = V.coefficients();
    if (cs.empty()) return r;
    mpfr_set(r.raw(), cs.back().raw(), MPFR_RNDN);
    for (auto it = cs.rbegin() + 1; it != cs.rend(); ++it) {
        mpfr_fma(r.raw(), r.raw(), x.raw(), it->raw(), MPFR_RNDN);
    }
    return r;
}

double evaluate(const PolynomialPotential& V, double x) {
    double r = 0.0;
    const auto& cs = V.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        r = r * x + it->to_double();
    }
    return r;
}

double WellAnalysis::min_frequency() const {
    double f = std::numeric_limits<double>::infinity();
    for (const auto& m : minima) f = std::min(f, m.frequency);
    return f;
}

double WellAnalysis::lowest_barrier_value() const {
    if (barrier_tops.empty()) throw AnalysisError("potential has no barrier top");
    double v = std::numeric_limits<double>::infinity();
    for (const auto& t : barrier_tops) v = std::min(v, t.value);
    return v;
}

WellAnalysis analyze_wells(const PolynomialPotential& V, double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidParameterError("well search interval must be finite with lo < hi");
    }
    const PolynomialPotential d1 = V.derivative();
    const PolynomialPotential d2 = d1.derivative();

    std::vector<double> dp;
    for (const auto& c : d1.coefficients()) dp.push_back(c.to_double());

    auto deriv = [&dp](double x) {
        double r = 0.0;
        for (auto it = dp.rbegin(); it != dp.rend(); ++it) r = r * x + *it;
        return r;
    };

    constexpr int kScanPoints = 1000;
    const double step = (hi - lo) / (kScanPoints - 1);

    std::vector<double> roots;
    double xa = lo;
    double fa = deriv(xa);
    for (int i = 1; i < kScanPoints; ++i) {
        const double xb = lo + i * step;
        const double fb = deriv(xb);
        if (fb == 0.0) {
            if (xb < hi) roots.push_back(xb);  // exact grid hit, counted once
        } else if (fa != 0.0 && (fa < 0) != (fb < 0)) {
            roots.push_back(bisect_double(dp, xa, xb, fa));
        }
        xa = xb;
        fa = fb;
    }

    WellAnalysis out;
    const double span = hi - lo;
    double last = std::numeric_limits<double>::quiet_NaN();
    for (double r : roots) {
        if (std::isfinite(last) && std::abs(r - last) < 1e-9 * span) continue;
        last = r;
        if (r <= lo || r >= hi) continue;
        // The exact polynomial second derivative classifies the stationary
        // point; 256 bits is plenty since the double rounding of r dominates.
        const BigFloat xr(r, 256);
        const double curvature = evaluate(d2, xr).to_double();
        const double value = evaluate(V, xr).to_double();
        if (curvature > 0) {
            out.minima.push_back({r, value, curvature, std::sqrt(curvature)});
        } else if (curvature < 0) {
            out.barrier_tops.push_back({r, value});
        }
    }
    if (out.minima.empty()) {
        throw AnalysisError("no interior minimum found in the search interval");
    }
    return out;
}

}  // namespace triplewell
