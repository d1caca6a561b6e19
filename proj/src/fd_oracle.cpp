#include "triplewell/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "triplewell/errors.hpp"

namespace triplewell {

namespace {

double pivot_floor(const FdGrid& grid) {
    const double e2 = grid.offdiagonal * grid.offdiagonal;
    return std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon() *
           std::max(1.0, e2);
}

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> spectrum_bounds(const FdGrid& grid) {
    const double r = 2.0 * std::abs(grid.offdiagonal);
    double lo = grid.diagonal.front() - r;
    double hi = grid.diagonal.front() + r;
    for (double d : grid.diagonal) {
        lo = std::min(lo, d - r);
        hi = std::max(hi, d + r);
    }
    return {lo, hi};
}

std::size_t count_below(const FdGrid& grid, double lambda, double pivmin) {
    const double e2 = grid.offdiagonal * grid.offdiagonal;
    std::size_t count = 0;
    double d = grid.diagonal[0] - lambda;
    if (d < 0) ++count;
    for (std::size_t i = 1; i < grid.interior_points; ++i) {
        double den = d;
        if (std::abs(den) < pivmin) den = den < 0 ? -pivmin : pivmin;
        d = grid.diagonal[i] - lambda - e2 / den;
        if (d < 0) ++count;
    }
    return count;
}

}  // namespace

FdGrid build_fd_grid(const PolynomialPotential& potential, double half_width, std::size_t n) {
    if (!(half_width > 0) || !std::isfinite(half_width)) {
        throw InvalidParameterError("half width must be finite and positive");
    }
    if (n < 100) throw InvalidParameterError("grid needs at least 100 interior points");

    FdGrid grid;
    grid.interior_points = n;
    grid.spacing = 2.0 * half_width / static_cast<double>(n + 1);
    grid.offdiagonal = -0.5 / (grid.spacing * grid.spacing);
    grid.diagonal.resize(n);
    const double inv_h2 = 1.0 / (grid.spacing * grid.spacing);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -half_width + static_cast<double>(i + 1) * grid.spacing;
        grid.diagonal[i] = inv_h2 + evaluate(potential, x);
        if (!std::isfinite(grid.diagonal[i])) {
            throw InvalidParameterError("potential is not finite on the grid");
        }
    }
    return grid;
}

std::size_t sturm_count(const FdGrid& grid, double lambda) {
    if (grid.interior_points == 0 || grid.diagonal.size() != grid.interior_points) {
        throw InvalidParameterError("grid is empty or inconsistent");
    }
    return count_below(grid, lambda, pivot_floor(grid));
}

std::vector<double> fd_spectrum(const PolynomialPotential& potential, double half_width,
                                std::size_t n, std::size_t count) {
    if (count == 0) throw InvalidParameterError("eigenvalue count must be positive");
    if (count > n) throw InvalidParameterError("cannot request more eigenvalues than grid points");
    const FdGrid grid = build_fd_grid(potential, half_width, n);
    const double pivmin = pivot_floor(grid);
    auto [glo, ghi] = spectrum_bounds(grid);

    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        double lo = glo, hi = ghi;
        // Invariant: count(lo) <= k < count(hi); the k-th eigenvalue is inside.
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (count_below(grid, mid, pivmin) > k) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

std::vector<double> fd_richardson(const PolynomialPotential& potential, double half_width,
                                  std::size_t n, std::size_t count) {
    const std::vector<double> coarse = fd_spectrum(potential, half_width, n, count);
    const std::vector<double> fine = fd_spectrum(potential, half_width, 2 * n + 1, count);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
    return out;
}

std::vector<double> fd_eigenvector(const FdGrid& grid, double energy) {
    const std::size_t n = grid.interior_points;
    if (n == 0 || grid.diagonal.size() != n) {
        throw InvalidParameterError("grid is empty or inconsistent");
    }
    const double e = grid.offdiagonal;
    // Shift slightly off the eigenvalue so the factorization stays regular;
    // the offset stays near the bisection tolerance so a neighbouring level
    // cannot leak in through the resolvent.
    const double shift = energy + 1e-11 * std::max(1.0, std::abs(energy));
    const double pivmin = pivot_floor(grid);

    std::vector<double> v(n, 1.0);
    std::vector<double> c(n), d(n);
    for (int pass = 0; pass < 3; ++pass) {
        // Thomas solve of (T - shift I) w = v.
        double den = grid.diagonal[0] - shift;
        if (std::abs(den) < pivmin) den = den < 0 ? -pivmin : pivmin;
        c[0] = e / den;
        d[0] = v[0] / den;
        for (std::size_t i = 1; i < n; ++i) {
            den = grid.diagonal[i] - shift - e * c[i - 1];
            if (std::abs(den) < pivmin) den = den < 0 ? -pivmin : pivmin;
            c[i] = e / den;
            d[i] = (v[i] - e * d[i - 1]) / den;
        }
        v[n - 1] = d[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) v[i] = d[i] - c[i] * v[i + 1];

        double norm = 0.0;
        for (double w : v) norm += w * w;
        norm = std::sqrt(norm * grid.spacing);
        if (!(norm > 0) || !std::isfinite(norm)) {
            throw AnalysisError("inverse iteration collapsed");
        }
        for (double& w : v) w /= norm;
    }
    // Fix the overall sign deterministically: largest component positive.
    double best = 0.0;
    for (double w : v) {
        if (std::abs(w) > std::abs(best)) best = w;
    }
    if (best < 0) {
        for (double& w : v) w = -w;
    }
    return v;
}

}  // namespace triplewell
