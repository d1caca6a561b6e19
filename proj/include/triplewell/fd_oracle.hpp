#pragma once

#include <cstddef>
#include <vector>

#include "triplewell/potential.hpp"

namespace triplewell {

// Three-point finite-difference discretization of -psi''/2 + V psi on the
// interior of [-L, L] with Dirichlet walls. Deliberately double-precision:
// this is the independent cross-check for the series solver, so it shares
// neither method nor precision regime with it.
struct FdGrid {
    std::size_t interior_points = 0;   // N
    double spacing = 0.0;              // h = 2L/(N+1)
    std::vector<double> diagonal;      // 1/h^2 + V(x_i)
    double offdiagonal = 0.0;          // -1/(2h^2)
};

FdGrid build_fd_grid(const PolynomialPotential& potential, double half_width, std::size_t n);

// Number of eigenvalues of the tridiagonal matrix strictly below lambda,
// from the signs of the LDL^T pivots.
std::size_t sturm_count(const FdGrid& grid, double lambda);

// The `count` smallest eigenvalues, each bisected to 1e-10 absolute.
std::vector<double> fd_spectrum(const PolynomialPotential& potential, double half_width,
                                std::size_t n, std::size_t count);

// Richardson extrapolation (4 E(2N+1) - E(N)) / 3, cancelling the O(h^2)
// stencil error level by level.
std::vector<double> fd_richardson(const PolynomialPotential& potential, double half_width,
                                  std::size_t n, std::size_t count);

// Normalized eigenvector for an already-computed eigenvalue, by shifted
// inverse iteration. Used for parity checks of the low levels.
std::vector<double> fd_eigenvector(const FdGrid& grid, double energy);

}  // namespace triplewell
