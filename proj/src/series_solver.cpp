#include "triplewell/series_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "triplewell/errors.hpp"

namespace triplewell {

namespace {

mpfr_prec_t coefficient_precision(const SeriesWavefunction& psi, const BigFloat& x) {
    mpfr_prec_t p = x.precision();
    for (const auto& c : psi.coefficients) p = std::max(p, c.precision());
    return p;
}

// A sign is trustworthy as long as the cancellation left a few dozen live
// bits.  This is far laxer than the half-precision guard on returned values:
// bisection only consumes signs, so it stays correct right down to the
// noise floor.
bool sign_reliable(const TrackedValue& v, mpfr_prec_t prec) {
    return !v.value.is_zero() && v.lost_bits <= static_cast<long>(prec) - 32;
}

BigFloat midpoint(const BigFloat& a, const BigFloat& b, mpfr_prec_t prec) {
    BigFloat m(prec);
    mpfr_add(m.raw(), a.raw(), b.raw(), MPFR_RNDN);
    mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
    return m;
}

TrackedValue tracked_boundary(const BoxProblem& problem, const BigFloat& E, Parity parity) {
    const SeriesWavefunction psi = series_coefficients(problem, E, parity);
    const BigFloat L = problem.half_width.rounded_to(problem.precision);
    return evaluate_tracked(psi, L);
}

struct CoreResult {
    BigFloat energy;
    SeriesWavefunction psi;
};

// Bisection on sign(psi_E(L)).  Phase one narrows the bracket to the
// reporting tolerance; phase two keeps halving until the boundary sum sinks
// into its own cancellation noise, which pins the eigenvalue as tightly as
// the working precision allows and leaves psi(L) clean for sampling.
CoreResult solve_core(const BoxProblem& problem, const BigFloat& lo_in, const BigFloat& hi_in,
                      Parity parity) {
    problem.validate();
    const mpfr_prec_t prec = problem.precision;
    BigFloat lo = lo_in.rounded_to(prec);
    BigFloat hi = hi_in.rounded_to(prec);
    if (!lo.is_finite() || !hi.is_finite() || !(lo < hi)) {
        throw InvalidParameterError("bracket must be finite with lo < hi");
    }

    const TrackedValue va = tracked_boundary(problem, lo, parity);
    const TrackedValue vb = tracked_boundary(problem, hi, parity);
    if (!sign_reliable(va, prec) || !sign_reliable(vb, prec)) {
        throw PrecisionInsufficientError(
            "boundary value at a bracket endpoint is cancellation noise; raise the working "
            "precision");
    }
    const int sa = va.value.sign();
    if (sa == vb.value.sign()) {
        throw BracketError("boundary value does not change sign over the bracket");
    }

    const BigFloat tol = problem.root_tolerance.rounded_to(prec);
    bool have_root = false;
    BigFloat root(prec);

    while (!have_root && hi - lo >= tol) {
        BigFloat m = midpoint(lo, hi, prec);
        if (m <= lo || m >= hi) {
            root = std::move(m);
            have_root = true;
            break;
        }
        TrackedValue vm = tracked_boundary(problem, m, parity);
        if (!sign_reliable(vm, prec)) {
            // m may sit right on the root; probe off center before giving up.
            BigFloat m2(prec);
            mpfr_sub(m2.raw(), hi.raw(), lo.raw(), MPFR_RNDN);
            mpfr_mul_d(m2.raw(), m2.raw(), 0.375, MPFR_RNDN);
            mpfr_add(m2.raw(), lo.raw(), m2.raw(), MPFR_RNDN);
            if (m2 <= lo || m2 >= hi) {
                root = std::move(m);
                have_root = true;
                break;
            }
            vm = tracked_boundary(problem, m2, parity);
            if (!sign_reliable(vm, prec)) {
                throw PrecisionInsufficientError(
                    "bisection cannot resolve the boundary sign within the requested tolerance; "
                    "raise the working precision");
            }
            m = std::move(m2);
        }
        if (vm.value.sign() == sa) {
            lo = std::move(m);
        } else {
            hi = std::move(m);
        }
    }

    const long deep_cap = std::max<long>(static_cast<long>(prec), 128);
    for (long it = 0; !have_root && it < deep_cap; ++it) {
        BigFloat m = midpoint(lo, hi, prec);
        if (m <= lo || m >= hi) {
            root = std::move(m);
            have_root = true;
            break;
        }
        const TrackedValue vm = tracked_boundary(problem, m, parity);
        if (!sign_reliable(vm, prec)) {
            // Below the noise floor of the sum: as converged as prec permits.
            root = std::move(m);
            have_root = true;
            break;
        }
        if (vm.value.sign() == sa) {
            lo = std::move(m);
        } else {
            hi = std::move(m);
        }
    }
    if (!have_root) root = midpoint(lo, hi, prec);

    SeriesWavefunction psi = series_coefficients(problem, root, parity);
    return {std::move(root), std::move(psi)};
}

}  // namespace

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

void BoxProblem::validate() const {
    if (!half_width.is_finite() || half_width.sign() <= 0) {
        throw InvalidParameterError("half width must be finite and positive");
    }
    if (terms < 8) throw InvalidParameterError("series needs at least 8 terms");
    if (precision < 64) throw InvalidParameterError("working precision must be at least 64 bits");
    if (!root_tolerance.is_finite() || root_tolerance.sign() <= 0) {
        throw InvalidParameterError("root tolerance must be finite and positive");
    }
    if (!potential.is_even()) {
        throw InvalidParameterError("parity decomposition needs a reflection-symmetric potential");
    }
}

int digits_from_tolerance(const BigFloat& root_tolerance) {
    BigFloat l(64);
    mpfr_log10(l.raw(), root_tolerance.raw(), MPFR_RNDN);
    return std::max(0, static_cast<int>(std::floor(-l.to_double() + 1e-9)));
}

mpfr_prec_t calibrate_precision(const PolynomialPotential& V, const BigFloat& L,
                                std::size_t terms, int digits, const BigFloat& energy_hint) {
    if (digits < 1) throw InvalidParameterError("digit count must be at least 1");
    mpfr_prec_t base = std::max<mpfr_prec_t>(256, 4 * static_cast<mpfr_prec_t>(digits) + 64);
    if (digits >= 22) base = std::max<mpfr_prec_t>(base, 512);

    // Measure how many bits the boundary sum burns at a generic energy, then
    // budget for the requested digits on top.  If the probe itself drowns,
    // double up and measure again.
    mpfr_prec_t p = base;
    for (int attempt = 0; attempt < 6; ++attempt) {
        const BoxProblem probe{V, L.rounded_to(p), terms, p, pow10(-digits, p)};
        const BigFloat wall = L.rounded_to(p);
        long lost = -1;
        for (const Parity par : {Parity::even, Parity::odd}) {
            const TrackedValue tv =
                evaluate_tracked(series_coefficients(probe, energy_hint, par), wall);
            if (!sign_reliable(tv, p)) {
                lost = -1;
                break;
            }
            lost = std::max(lost, tv.lost_bits);
        }
        if (lost < 0) {
            p *= 2;
            continue;
        }
        const long digit_bits = (10 * digits + 2) / 3;
        const long need = lost + digit_bits + 96;
        const auto rounded = static_cast<mpfr_prec_t>((need + 63) / 64 * 64);
        return std::max(base, rounded);
    }
    return p;
}

SeriesWavefunction series_coefficients(const BoxProblem& problem, const BigFloat& E,
                                       Parity parity) {
    problem.validate();
    if (!E.is_finite()) throw InvalidParameterError("energy must be finite");

    const mpfr_prec_t prec = problem.precision;
    const std::size_t p0 = parity == Parity::even ? 0 : 1;
    const std::size_t top = p0 + 2 * (problem.terms - 1);

    std::vector<BigFloat> a(top + 1, BigFloat(0, prec));
    a[p0] = BigFloat(1, prec);

    std::vector<std::pair<std::size_t, BigFloat>> cs;
    const auto& pc = problem.potential.coefficients();
    for (std::size_t k = 0; k < pc.size(); ++k) {
        if (!pc[k].is_zero()) cs.emplace_back(k, pc[k].rounded_to(prec));
    }

    BigFloat twoE(prec);
    mpfr_mul_2ui(twoE.raw(), E.raw(), 1, MPFR_RNDN);

    BigFloat acc(prec);
    BigFloat tmp(prec);
    for (std::size_t n = p0; n + 2 <= top; n += 2) {
        mpfr_set_zero(acc.raw(), 1);
        for (const auto& [k, ck] : cs) {
            if (k > n) continue;
            mpfr_fma(acc.raw(), ck.raw(), a[n - k].raw(), acc.raw(), MPFR_RNDN);
        }
        mpfr_mul_2ui(acc.raw(), acc.raw(), 1, MPFR_RNDN);
        mpfr_mul(tmp.raw(), twoE.raw(), a[n].raw(), MPFR_RNDN);
        mpfr_sub(acc.raw(), acc.raw(), tmp.raw(), MPFR_RNDN);
        const auto den = static_cast<unsigned long>(n + 1) * static_cast<unsigned long>(n + 2);
        mpfr_div_ui(a[n + 2].raw(), acc.raw(), den, MPFR_RNDN);
    }

    SeriesWavefunction psi;
    psi.parity = parity;
    psi.energy = E.rounded_to(prec);
    psi.coefficients = std::move(a);
    return psi;
}

TrackedValue evaluate_tracked(const SeriesWavefunction& psi, const BigFloat& x) {
    if (!x.is_finite()) throw InvalidParameterError("sample point must be finite");
    const mpfr_prec_t prec = coefficient_precision(psi, x);
    const std::size_t p0 = psi.parity == Parity::even ? 0 : 1;
    const auto& a = psi.coefficients;

    if (a.size() <= p0) return {BigFloat(0, prec), 0, false};

    if (x.is_zero()) {
        // Structural value at the origin, no sum involved.
        BigFloat v = (p0 == 0) ? a[0].rounded_to(prec) : BigFloat(0, prec);
        return {std::move(v), 0, false};
    }

    const std::size_t last = p0 + 2 * ((a.size() - 1 - p0) / 2);
    const std::size_t positions = (last - p0) / 2 + 1;

    BigFloat t(prec);
    mpfr_sqr(t.raw(), x.raw(), MPFR_RNDN);
    long texp;
    const double tman = mpfr_get_d_2exp(&texp, t.raw(), MPFR_RNDN);
    const double lt = static_cast<double>(texp) + std::log2(std::fabs(tman));

    // Horner in t over the active parity.  A partial at position j stands for
    // the tail of the real sum divided by t^j, so its magnitude is rescaled
    // by j*log2(t) before entering the cancellation bookkeeping.
    BigFloat r(prec);
    mpfr_set(r.raw(), a[last].raw(), MPFR_RNDN);
    double max_scaled = -std::numeric_limits<double>::infinity();
    auto note = [&](std::size_t j) {
        if (!mpfr_zero_p(r.raw())) {
            const double e = static_cast<double>(mpfr_get_exp(r.raw())) + lt * static_cast<double>(j);
            max_scaled = std::max(max_scaled, e);
        }
    };
    note(positions - 1);
    for (std::size_t j = positions - 1; j-- > 0;) {
        mpfr_fma(r.raw(), r.raw(), t.raw(), a[p0 + 2 * j].raw(), MPFR_RNDN);
        note(j);
    }

    TrackedValue out;
    out.lost_bits = static_cast<long>(prec);
    if (!mpfr_zero_p(r.raw()) && std::isfinite(max_scaled)) {
        const double lost = max_scaled - static_cast<double>(mpfr_get_exp(r.raw()));
        out.lost_bits = std::max<long>(0, std::lround(lost));
    }
    out.cancelled = mpfr_zero_p(r.raw()) || out.lost_bits > static_cast<long>(prec) / 2;

    if (psi.parity == Parity::odd) mpfr_mul(r.raw(), r.raw(), x.raw(), MPFR_RNDN);
    out.value = std::move(r);
    return out;
}

BigFloat evaluate(const SeriesWavefunction& psi, const BigFloat& x) {
    return evaluate_tracked(psi, x).value;
}

BigFloat boundary_value(const BoxProblem& problem, const BigFloat& E, Parity parity) {
    const TrackedValue v = tracked_boundary(problem, E, parity);
    if (v.cancelled) {
        throw PrecisionInsufficientError(
            "boundary sum cancelled down to rounding noise; raise the working precision");
    }
    return v.value;
}

SolvedLevel solve_in_bracket(const BoxProblem& problem, const BigFloat& lo, const BigFloat& hi,
                             Parity parity) {
    CoreResult core = solve_core(problem, lo, hi, parity);
    const BigFloat L = problem.half_width.rounded_to(problem.precision);
    const BigFloat window = node_search_bound(problem.potential, core.energy, L);
    const std::size_t nodes = count_nodes(core.psi, window);

    SolvedLevel out;
    out.level.index = nodes;
    out.level.parity = parity;
    out.level.energy = core.energy.to_fixed(digits_from_tolerance(problem.root_tolerance));
    out.level.nodes = nodes;
    out.energy = std::move(core.energy);
    out.wavefunction = std::move(core.psi);
    return out;
}

Eigenlevel find_eigenvalue(const BoxProblem& problem, const BigFloat& lo, const BigFloat& hi,
                           Parity parity) {
    return solve_in_bracket(problem, lo, hi, parity).level;
}

BigFloat node_search_bound(const PolynomialPotential& potential, const BigFloat& energy,
                           const BigFloat& half_width) {
    if (!half_width.is_finite() || half_width.sign() <= 0) {
        throw InvalidParameterError("half width must be finite and positive");
    }
    const mpfr_prec_t prec = std::max<mpfr_prec_t>(half_width.precision(), 128);
    constexpr long steps = 2048;

    // Walk inward from the wall until the point is classically allowed; the
    // outermost turning point then sits in the last grid cell crossed.
    BigFloat x(prec);
    long allowed = -1;
    for (long j = steps - 1; j >= 1; --j) {
        mpfr_mul_si(x.raw(), half_width.raw(), j, MPFR_RNDN);
        mpfr_div_si(x.raw(), x.raw(), steps, MPFR_RNDN);
        if (evaluate(potential, x) <= energy) {
            allowed = j;
            break;
        }
    }
    if (allowed == -1 || allowed == steps - 1) return half_width;

    BigFloat lo(prec), hi(prec);
    mpfr_mul_si(lo.raw(), half_width.raw(), allowed, MPFR_RNDN);
    mpfr_div_si(lo.raw(), lo.raw(), steps, MPFR_RNDN);
    mpfr_mul_si(hi.raw(), half_width.raw(), allowed + 1, MPFR_RNDN);
    mpfr_div_si(hi.raw(), hi.raw(), steps, MPFR_RNDN);
    for (int i = 0; i < 64; ++i) {
        const BigFloat mid = midpoint(lo, hi, prec);
        if (evaluate(potential, mid) <= energy) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;  // outer edge: the allowed region lies strictly inside
}

std::size_t count_nodes(const SeriesWavefunction& psi, const BigFloat& window,
                        std::size_t grid_points) {
    const BigFloat& L = window;
    if (!L.is_finite() || L.sign() <= 0) {
        throw InvalidParameterError("node search window must be finite and positive");
    }
    for (const auto& c : psi.coefficients) {
        if (!c.is_finite()) throw InvalidParameterError("wavefunction coefficients must be finite");
    }
    const std::size_t p0 = psi.parity == Parity::even ? 0 : 1;
    const std::size_t slots =
        psi.coefficients.size() > p0 ? (psi.coefficients.size() - p0 + 1) / 2 : 0;
    // Low-lying states have node spacing on the well scale, so the grid cap
    // keeps dense truncations from inflating the sweep; the 4x re-check below
    // still guards the count.
    const std::size_t base = grid_points
                                 ? grid_points
                                 : std::clamp<std::size_t>(20 * slots, 1000, 6000);
    const mpfr_prec_t xprec = coefficient_precision(psi, L);

    // Midpoint grid over (-L, L): symmetric, endpoint-free, no point at 0.
    // Signs mirror across 0 (evenly for even parity, oppositely for odd), so
    // only the positive half is evaluated; an odd state adds its origin node.
    auto count_on = [&](std::size_t n) {
        if (n % 2) ++n;
        const std::size_t half = n / 2;
        std::size_t changes = 0;
        int prev = 0;
        BigFloat x(xprec);
        for (std::size_t j = 0; j < half; ++j) {
            mpfr_mul_ui(x.raw(), L.raw(), 2 * j + 1, MPFR_RNDN);
            mpfr_div_ui(x.raw(), x.raw(), n, MPFR_RNDN);
            const TrackedValue v = evaluate_tracked(psi, x);
            if (!sign_reliable(v, xprec)) continue;  // numerically zero here
            const int s = v.value.sign();
            if (prev != 0 && s != 0 && s != prev) ++changes;
            if (s != 0) prev = s;
        }
        return 2 * changes + (psi.parity == Parity::odd ? 1 : 0);
    };

    const std::size_t coarse = count_on(base);
    const std::size_t fine = count_on(base * 4);
    if (coarse != fine) {
        throw NodeAmbiguityError("node count changed under 4x grid refinement (" +
                                 std::to_string(coarse) + " vs " + std::to_string(fine) + ")");
    }
    return coarse;
}

BigFloat norm_squared(const SeriesWavefunction& psi, const BigFloat& L) {
    if (!L.is_finite() || L.sign() <= 0) {
        throw InvalidParameterError("half width must be finite and positive");
    }
    const std::size_t p0 = psi.parity == Parity::even ? 0 : 1;
    const auto& a = psi.coefficients;
    std::vector<const BigFloat*> A;
    for (std::size_t i = p0; i < a.size(); i += 2) A.push_back(&a[i]);
    const mpfr_prec_t prec = coefficient_precision(psi, L);
    const bool all_zero =
        std::all_of(A.begin(), A.end(), [](const BigFloat* c) { return c->is_zero(); });
    if (A.empty() || all_zero) return BigFloat(0, prec);

    // psi = x^p0 * S(t), t = x^2.  The square's t-coefficients come from the
    // self-convolution of S; each power then integrates exactly:
    // int_{-L}^{L} x^{2m} dx = 2 L^{2m+1} / (2m+1).
    const std::size_t J = A.size();
    std::vector<BigFloat> b(2 * J - 1, BigFloat(0, prec));
    BigFloat acc(prec);
    for (std::size_t s = 0; s < 2 * J - 1; ++s) {
        mpfr_set_zero(acc.raw(), 1);
        const std::size_t jlo = s >= J ? s - J + 1 : 0;
        for (std::size_t j = jlo; 2 * j < s; ++j) {
            mpfr_fma(acc.raw(), A[j]->raw(), A[s - j]->raw(), acc.raw(), MPFR_RNDN);
        }
        mpfr_mul_2ui(acc.raw(), acc.raw(), 1, MPFR_RNDN);
        if (s % 2 == 0) mpfr_fma(acc.raw(), A[s / 2]->raw(), A[s / 2]->raw(), acc.raw(), MPFR_RNDN);
        mpfr_set(b[s].raw(), acc.raw(), MPFR_RNDN);
    }

    BigFloat t(prec);
    mpfr_sqr(t.raw(), L.raw(), MPFR_RNDN);
    long texp;
    const double tman = mpfr_get_d_2exp(&texp, t.raw(), MPFR_RNDN);
    const double lt = static_cast<double>(texp) + std::log2(std::fabs(tman));

    const std::size_t S = b.size();
    BigFloat r(prec);
    BigFloat term(prec);
    auto weighted = [&](std::size_t s) -> const BigFloat& {
        mpfr_div_ui(term.raw(), b[s].raw(), static_cast<unsigned long>(2 * p0 + 2 * s + 1),
                    MPFR_RNDN);
        return term;
    };
    mpfr_set(r.raw(), weighted(S - 1).raw(), MPFR_RNDN);
    double max_scaled = -std::numeric_limits<double>::infinity();
    auto note = [&](std::size_t j) {
        if (!mpfr_zero_p(r.raw())) {
            max_scaled = std::max(max_scaled,
                                  static_cast<double>(mpfr_get_exp(r.raw())) + lt * static_cast<double>(j));
        }
    };
    note(S - 1);
    for (std::size_t j = S - 1; j-- > 0;) {
        mpfr_fma(r.raw(), r.raw(), t.raw(), weighted(j).raw(), MPFR_RNDN);
        note(j);
    }

    bool noisy = mpfr_zero_p(r.raw()) != 0;
    if (!noisy && std::isfinite(max_scaled)) {
        const double lost = max_scaled - static_cast<double>(mpfr_get_exp(r.raw()));
        noisy = lost > static_cast<double>(prec) - 64;
    }
    if (noisy) {
        throw PrecisionInsufficientError(
            "norm integral cancelled down to rounding noise; raise the working precision");
    }

    mpfr_mul_2ui(r.raw(), r.raw(), 1, MPFR_RNDN);
    BigFloat Lp(prec);
    mpfr_pow_ui(Lp.raw(), L.raw(), static_cast<unsigned long>(2 * p0 + 1), MPFR_RNDN);
    mpfr_mul(r.raw(), r.raw(), Lp.raw(), MPFR_RNDN);
    return r;
}

SeriesWavefunction normalize(const SeriesWavefunction& psi, const BigFloat& L) {
    if (psi.norm_applied) return psi;

    const std::size_t p0 = psi.parity == Parity::even ? 0 : 1;
    int lead_sign = 0;
    for (std::size_t i = p0; i < psi.coefficients.size(); i += 2) {
        if (!psi.coefficients[i].is_zero()) {
            lead_sign = psi.coefficients[i].sign();
            break;
        }
    }
    if (lead_sign == 0) throw DegenerateFunctionError("cannot normalize the zero function");

    const BigFloat n2 = norm_squared(psi, L);
    if (n2.sign() <= 0) {
        throw PrecisionInsufficientError("computed norm is not positive; raise the working precision");
    }
    const mpfr_prec_t prec = n2.precision();
    BigFloat scale(prec);
    mpfr_rec_sqrt(scale.raw(), n2.raw(), MPFR_RNDN);
    // Leading behavior near 0 is a_m x^m, so this sign choice makes
    // psi(0+) > 0 for even states and psi'(0) > 0 for odd ones.
    if (lead_sign < 0) mpfr_neg(scale.raw(), scale.raw(), MPFR_RNDN);

    SeriesWavefunction out;
    out.parity = psi.parity;
    out.energy = psi.energy;
    out.norm_applied = true;
    out.coefficients.reserve(psi.coefficients.size());
    for (const auto& c : psi.coefficients) {
        BigFloat s(std::max(c.precision(), prec));
        mpfr_mul(s.raw(), c.raw(), scale.raw(), MPFR_RNDN);
        out.coefficients.push_back(std::move(s));
    }
    return out;
}

std::vector<Sample> sample_wavefunction(const SeriesWavefunction& psi, const BigFloat& L,
                                        std::size_t samples) {
    if (samples < 2) throw InvalidParameterError("need at least two sample points");
    if (!L.is_finite() || L.sign() <= 0) {
        throw InvalidParameterError("half width must be finite and positive");
    }
    const mpfr_prec_t prec = coefficient_precision(psi, L);
    const long n1 = static_cast<long>(samples) - 1;

    std::vector<Sample> out;
    out.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        // x = L * (2i - (n-1))/(n-1): endpoints land on the walls exactly and
        // the grid mirrors bit for bit under x -> -x.
        BigFloat x(prec);
        mpfr_set_si(x.raw(), 2 * static_cast<long>(i) - n1, MPFR_RNDN);
        mpfr_div_si(x.raw(), x.raw(), n1, MPFR_RNDN);
        mpfr_mul(x.raw(), x.raw(), L.raw(), MPFR_RNDN);
        BigFloat v = evaluate(psi, x);
        out.push_back({std::move(x), std::move(v)});
    }
    return out;
}

std::vector<SolvedLevel> scan_levels_full(const BoxProblem& problem, std::size_t count) {
    problem.validate();
    if (count < 1) throw InvalidParameterError("level count must be at least 1");

    const mpfr_prec_t prec = problem.precision;
    const double Ld = problem.half_width.to_double();
    const WellAnalysis wells = analyze_wells(problem.potential, -Ld, Ld);
    const double f = wells.min_frequency();
    if (!(f > 0) || !std::isfinite(f)) throw AnalysisError("well frequency is degenerate");

    double ceiling;
    if (!wells.barrier_tops.empty()) {
        ceiling = wells.lowest_barrier_value() + 3.0 * f;
    } else {
        // Single-well potential: harmonic headroom above the bottom.
        double bottom = wells.minima.front().value;
        for (const auto& m : wells.minima) bottom = std::min(bottom, m.value);
        ceiling = bottom + (static_cast<double>(count) + 3.0) * f;
    }

    const double step_d = f / 20.0;
    const BigFloat step(step_d, prec);
    const long n_steps = static_cast<long>(std::ceil(ceiling / step_d)) + 1;

    struct Bracket {
        BigFloat lo, hi;
        Parity parity;
        double mid;
    };
    std::vector<Bracket> brackets;

    for (const Parity par : {Parity::even, Parity::odd}) {
        BigFloat prev_E(0, prec);
        int prev_sign = 0;
        bool has_prev = false;
        for (long i = 0; i <= n_steps; ++i) {
            BigFloat E(prec);
            mpfr_mul_si(E.raw(), step.raw(), i, MPFR_RNDN);
            TrackedValue v = tracked_boundary(problem, E, par);
            for (int nudge = 0; !sign_reliable(v, prec) && nudge < 3; ++nudge) {
                // A sample that lands on a root is noise; step off it a little.
                E += step * 1e-3;
                v = tracked_boundary(problem, E, par);
            }
            if (!sign_reliable(v, prec)) {
                throw PrecisionInsufficientError(
                    "scan sample is cancellation noise even after nudging; raise the working "
                    "precision");
            }
            const int s = v.value.sign();
            if (has_prev && s != prev_sign) {
                brackets.push_back(
                    {prev_E, E, par, 0.5 * (prev_E.to_double() + E.to_double())});
            }
            prev_E = std::move(E);
            prev_sign = s;
            has_prev = true;
        }
    }

    std::sort(brackets.begin(), brackets.end(),
              [](const Bracket& a, const Bracket& b) { return a.mid < b.mid; });

    const int digits = digits_from_tolerance(problem.root_tolerance);

    if (brackets.size() < count) {
        std::vector<std::string> found;
        for (const auto& br : brackets) {
            found.push_back(solve_core(problem, br.lo, br.hi, br.parity).energy.to_fixed(digits));
        }
        throw IncompleteScanError("found " + std::to_string(brackets.size()) + " level(s) of " +
                                      std::to_string(count) + " below the scan ceiling",
                                  std::move(found));
    }

    struct Candidate {
        CoreResult core;
        Parity parity;
    };
    std::vector<Candidate> cands;
    const std::size_t refine = std::min(brackets.size(), count + 2);
    for (std::size_t i = 0; i < refine; ++i) {
        cands.push_back({solve_core(problem, brackets[i].lo, brackets[i].hi, brackets[i].parity),
                         brackets[i].parity});
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.core.energy < b.core.energy) return true;
        if (b.core.energy < a.core.energy) return false;
        return a.parity == Parity::even && b.parity == Parity::odd;
    });

    const BigFloat L = problem.half_width.rounded_to(prec);
    std::vector<SolvedLevel> out;
    for (std::size_t idx = 0; idx < count; ++idx) {
        Candidate& c = cands[idx];
        const std::size_t nodes =
            count_nodes(c.core.psi, node_search_bound(problem.potential, c.core.energy, L));
        if (nodes != idx) {
            throw NodeMismatchError("level " + std::to_string(idx) + " has " +
                                    std::to_string(nodes) + " node(s)");
        }
        SolvedLevel lv;
        lv.level.index = idx;
        lv.level.parity = c.parity;
        lv.level.energy = c.core.energy.to_fixed(digits);
        lv.level.nodes = nodes;
        lv.energy = std::move(c.core.energy);
        lv.wavefunction = std::move(c.core.psi);
        out.push_back(std::move(lv));
    }
    return out;
}

std::vector<Eigenlevel> scan_levels(const BoxProblem& problem, std::size_t count) {
    std::vector<Eigenlevel> out;
    for (auto& lv : scan_levels_full(problem, count)) out.push_back(std::move(lv.level));
    return out;
}

}  // namespace triplewell
