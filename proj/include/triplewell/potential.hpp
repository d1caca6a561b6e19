#pragma once

#include <vector>

#include "triplewell/bigfloat.hpp"

namespace triplewell {

/// Polynomial potential V(x) = sum_k c_k x^k with high-precision
/// coefficients. Trailing zero coefficients are trimmed on construction so
/// that degree() is the index of the last nonzero coefficient.
class PolynomialPotential {
public:
    PolynomialPotential() = default;
    explicit PolynomialPotential(std::vector<BigFloat> coefficients);

    const std::vector<BigFloat>& coefficients() const { return coeffs_; }
    const BigFloat& coefficient(std::size_t k) const;

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// True when every odd-power coefficient is exactly zero.
    bool is_even() const;

    /// dV/dx as a polynomial with exact (up to rounding of k*c_k) coefficients.
    PolynomialPotential derivative() const;

private:
    std::vector<BigFloat> coeffs_;
};

/// The symmetric triple well (omega^2/2) x^2 (x^2 - 1)^2, expanded to
/// c2 = omega^2/2, c4 = -omega^2, c6 = omega^2/2. Minima sit at x = -1, 0, 1
/// with V = 0 at all three.
PolynomialPotential build_triple_well(const BigFloat& omega);
PolynomialPotential build_triple_well(double omega, mpfr_prec_t prec = 256);

/// Horner evaluation at the wider of the operand precisions.
BigFloat evaluate(const PolynomialPotential& V, const BigFloat& x);
double evaluate(const PolynomialPotential& V, double x);

struct WellMinimum {
    double location = 0;
    double value = 0;
    double curvature = 0;
    double frequency = 0;  // sqrt(curvature) with unit mass
};

struct BarrierTop {
    double location = 0;
    double value = 0;
};

struct WellAnalysis {
    std::vector<WellMinimum> minima;      // sorted by location
    std::vector<BarrierTop> barrier_tops; // sorted by location
    double min_frequency() const;
    double lowest_barrier_value() const;  // throws AnalysisError when empty
};

/// Locates the stationary points of V inside [lo, hi] by bisecting sign
/// changes of V' over a 1000-point scan grid, then classifies them by the
/// sign of the exact second derivative. Throws AnalysisError when no
/// interior minimum exists.
WellAnalysis analyze_wells(const PolynomialPotential& V, double lo, double hi);

}  // namespace triplewell
