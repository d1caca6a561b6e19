#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "triplewell/bigfloat.hpp"
#include "triplewell/potential.hpp"

namespace triplewell {

enum class Parity { even, odd };

const char* to_string(Parity p);

// Dirichlet eigenproblem on [-L, L]: psi'' = 2(V - E) psi, psi(+-L) = 0.
// The wavefunction is a truncated Taylor series about x = 0 with I nonzero
// terms of one parity; eigenvalues are roots of psi_E(L) in E.
struct BoxProblem {
    PolynomialPotential potential;
    BigFloat half_width;          // L > 0
    std::size_t terms = 0;        // I >= 8, count of nonzero series terms
    mpfr_prec_t precision = 256;  // working significand bits, >= 64
    BigFloat root_tolerance;      // absolute energy tolerance, > 0

    void validate() const;
};

// How many decimal places of the energy the tolerance supports.
int digits_from_tolerance(const BigFloat& root_tolerance);

// Working precision sized from a measurement: evaluates the boundary sum at
// energy_hint, reads off how many bits its cancellation burns, and budgets
// the requested digit count plus guard bits on top.  Never below 256 bits
// (512 once digits reach 22).
mpfr_prec_t calibrate_precision(const PolynomialPotential& V, const BigFloat& L,
                                std::size_t terms, int digits, const BigFloat& energy_hint);

struct SeriesWavefunction {
    Parity parity = Parity::even;
    BigFloat energy;
    std::vector<BigFloat> coefficients;  // dense a_0..a_N, off-parity entries zero
    bool norm_applied = false;
};

struct Eigenlevel {
    std::size_t index = 0;
    Parity parity = Parity::even;
    std::string energy;     // decimal string, digits set by root_tolerance
    std::size_t nodes = 0;  // interior zeros on (-L, L)
};

// A refined level together with the data the energy string was rounded from.
struct SolvedLevel {
    Eigenlevel level;
    BigFloat energy;  // refined well past root_tolerance
    SeriesWavefunction wavefunction;
};

// Coefficients from the recurrence
//   (n+1)(n+2) a_{n+2} = 2 sum_k c_k a_{n-k} - 2 E a_n
// seeded a0=1 (even) or a1=1 (odd); exactly `terms` nonzero entries.
SeriesWavefunction series_coefficients(const BoxProblem& problem, const BigFloat& E,
                                       Parity parity);

// Horner evaluation of the series at x, in t = x^2 over the active parity.
BigFloat evaluate(const SeriesWavefunction& psi, const BigFloat& x);

struct TrackedValue {
    BigFloat value;
    long lost_bits = 0;     // significand bits destroyed by cancellation
    bool cancelled = false;  // lost more than half of the working bits
};

TrackedValue evaluate_tracked(const SeriesWavefunction& psi, const BigFloat& x);

// psi_E(L); throws PrecisionInsufficientError when cancellation ate more than
// half the working bits, so the sign would be noise.
BigFloat boundary_value(const BoxProblem& problem, const BigFloat& E, Parity parity);

// Bisection on the sign of psi_E(L) over [lo, hi].  After the bracket is
// narrower than root_tolerance the refinement keeps going until psi(L) sinks
// below the cancellation noise floor, so the returned wavefunction is clean
// at the walls.  The energy string is rounded from the deep value.
SolvedLevel solve_in_bracket(const BoxProblem& problem, const BigFloat& lo,
                             const BigFloat& hi, Parity parity);

Eigenlevel find_eigenvalue(const BoxProblem& problem, const BigFloat& lo,
                           const BigFloat& hi, Parity parity);

// Largest |x| a bound level's nodes can reach: the outermost classical
// turning point of (V, E), or the wall when the level is classically allowed
// there. Past the turning point psi'' and psi share a sign, so the exact
// eigenfunction cannot cross zero again before the wall; any crossing out
// there is residual contamination from the truncated growing solution.
BigFloat node_search_bound(const PolynomialPotential& potential, const BigFloat& energy,
                           const BigFloat& half_width);

// Sign changes of psi on a symmetric uniform grid over (-window, window),
// endpoints excluded; the count is re-checked on a 4x finer grid. Callers
// pass node_search_bound() as the window so contamination beyond the outer
// turning point never registers.
std::size_t count_nodes(const SeriesWavefunction& psi, const BigFloat& window,
                        std::size_t grid_points = 0);

// Scale so the term-wise integral of psi^2 over [-L, L] is 1, with
// psi(0+) > 0 (even) or psi'(0) > 0 (odd).  Already-normalized input is
// returned unchanged, bit for bit.
SeriesWavefunction normalize(const SeriesWavefunction& psi, const BigFloat& L);

// The term-wise integral of psi^2 over [-L, L] (exact per power of x).
BigFloat norm_squared(const SeriesWavefunction& psi, const BigFloat& L);

struct Sample {
    BigFloat x;
    BigFloat psi;
};

// Uniform grid of `samples` points including both walls.
std::vector<Sample> sample_wavefunction(const SeriesWavefunction& psi, const BigFloat& L,
                                        std::size_t samples);

// Lowest `count` levels of both parity sectors, merged ascending (ties:
// even first), indexed from 0, each verified against its node count.
// The scan walks E upward from 0 in steps of (min well frequency)/20 and
// brackets every sign change of psi_E(L); it gives up at the lowest barrier
// top plus three times the min frequency.
std::vector<SolvedLevel> scan_levels_full(const BoxProblem& problem, std::size_t count);

std::vector<Eigenlevel> scan_levels(const BoxProblem& problem, std::size_t count);

}  // namespace triplewell
