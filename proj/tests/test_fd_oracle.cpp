#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "support.hpp"
#include "triplewell/errors.hpp"
#include "triplewell/fd_oracle.hpp"

using namespace triplewell;
using namespace triplewell::testing;

namespace {

PolynomialPotential empty_potential() { return PolynomialPotential(std::vector<BigFloat>{}); }

// Analytic eigenvalues of the discretized empty box: the stencil matrix has
// lambda_k = (1 - cos(k pi / (N+1))) / h^2, k = 1..N.
double discrete_box_level(std::size_t n, double half_width, std::size_t k) {
    const double h = 2.0 * half_width / static_cast<double>(n + 1);
    const double s = std::sin(0.5 * M_PI * static_cast<double>(k) / static_cast<double>(n + 1));
    return 2.0 * s * s / (h * h);
}

}  // namespace

TEST_CASE("grid construction lays out the stencil") {
    const FdGrid g = build_fd_grid(build_triple_well(20.0, 256), 2.0, 201);
    CHECK(g.interior_points == 201);
    CHECK(g.spacing == doctest::Approx(4.0 / 202.0).epsilon(1e-15));
    CHECK(g.offdiagonal == doctest::Approx(-1.0 / (2 * g.spacing * g.spacing)).epsilon(1e-15));
    REQUIRE(g.diagonal.size() == 201);
    // The center point sits at x = 0 where the potential vanishes.
    CHECK(g.diagonal[100] == doctest::Approx(1.0 / (g.spacing * g.spacing)).epsilon(1e-12));
    // One step in from the left wall.
    const double x0 = -2.0 + g.spacing;
    CHECK(g.diagonal[0] ==
          doctest::Approx(1.0 / (g.spacing * g.spacing) + 200 * x0 * x0 * (x0 * x0 - 1) *
                                                              (x0 * x0 - 1))
              .epsilon(1e-12));
}

TEST_CASE("grid construction rejects undersized or degenerate input") {
    CHECK_THROWS_AS(build_fd_grid(build_triple_well(20.0, 256), 2.0, 99),
                    InvalidParameterError);
    CHECK_THROWS_AS(build_fd_grid(build_triple_well(20.0, 256), 0.0, 500),
                    InvalidParameterError);
    CHECK_THROWS_AS(fd_spectrum(build_triple_well(20.0, 256), 2.0, 200, 0),
                    InvalidParameterError);
    CHECK_THROWS_AS(fd_spectrum(build_triple_well(20.0, 256), 2.0, 200, 201),
                    InvalidParameterError);
}

TEST_CASE("empty box eigenvalues match the discrete closed form") {
    const std::size_t n = 500;
    const auto got = fd_spectrum(empty_potential(), 2.0, n, 3);
    REQUIRE(got.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(got[k] - discrete_box_level(n, 2.0, k + 1)) <= 2e-10);
    }
}

TEST_CASE("empty box ground energy approaches the continuum level") {
    const auto got = fd_spectrum(empty_potential(), 2.0, 4000, 3);
    const double exact = M_PI * M_PI / 32.0;
    CHECK(std::abs(got[0] - exact) <= 1e-5);
    CHECK(got[0] < got[1]);
    CHECK(got[1] < got[2]);
}

TEST_CASE("empty box Richardson value is eight digits deep") {
    const auto rich = fd_richardson(empty_potential(), 2.0, 2000, 1);
    CHECK(std::abs(rich[0] - M_PI * M_PI / 32.0) <= 1e-8);
}

TEST_CASE("stencil error shrinks by the expected fourth") {
    const double exact = M_PI * M_PI / 32.0;
    for (const std::size_t n : {400UL, 800UL}) {
        const double coarse = fd_spectrum(empty_potential(), 2.0, n, 1)[0];
        const double fine = fd_spectrum(empty_potential(), 2.0, 2 * n + 1, 1)[0];
        const double ratio = std::abs(coarse - exact) / std::abs(fine - exact);
        CHECK(ratio >= 3.5);
        CHECK(ratio <= 4.5);
    }
}

TEST_CASE("triple-well spectrum tracks the published ground value") {
    const auto got = fd_spectrum(build_triple_well(20.0, 256), 2.0, 4000, 3);
    CHECK(std::abs(got[0] - 9.1100715702553) <= 1e-3);
    CHECK(got[0] < got[1]);
    CHECK(got[1] < got[2]);
}

TEST_CASE("Richardson lands within a relative 1e-4 of the published row") {
    const auto rich = fd_richardson(build_triple_well(20.0, 256), 2.0, 2000, 3);
    const double series[3] = {9.1100715702553, 17.5140977513941, 17.6975924458074};
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(rich[k] - series[k]) / series[k] <= 1e-4);
    }
}

TEST_CASE("Richardson beats the raw grid on every low level") {
    const double series[3] = {9.1100715702553, 17.5140977513941, 17.6975924458074};
    const auto raw = fd_spectrum(build_triple_well(20.0, 256), 2.0, 2000, 3);
    const auto rich = fd_richardson(build_triple_well(20.0, 256), 2.0, 2000, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(rich[k] - series[k]) < std::abs(raw[k] - series[k]));
    }
}

TEST_CASE("Sturm counting is self-consistent at the computed eigenvalues") {
    const FdGrid g = build_fd_grid(build_triple_well(20.0, 256), 2.0, 2000);
    const auto levels = fd_spectrum(build_triple_well(20.0, 256), 2.0, 2000, 3);
    CHECK(sturm_count(g, 0.0) == 0);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(sturm_count(g, levels[k] + 1e-6) == k + 1);
        CHECK(sturm_count(g, levels[k] - 1e-6) == k);
    }
}

TEST_CASE("inverse-iteration eigenvectors alternate parity") {
    const std::size_t n = 2001;
    const FdGrid g = build_fd_grid(build_triple_well(20.0, 256), 2.0, n);
    const auto levels = fd_spectrum(build_triple_well(20.0, 256), 2.0, n, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CAPTURE(k);
        const auto v = fd_eigenvector(g, levels[k]);
        REQUIRE(v.size() == n);
        const double sign = (k == 1) ? -1.0 : 1.0;
        double worst = 0.0;
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(v[i] - sign * v[n - 1 - i]));
            norm += v[i] * v[i];
        }
        CHECK(worst <= 1e-6);
        CHECK(norm * g.spacing == doctest::Approx(1.0).epsilon(1e-10));
    }
}
