#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "latticebec/errors.hpp"
#include "latticebec/potential.hpp"

using namespace latbec;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("sinusoidal potential closed forms") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    CHECK(w.eval(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(w.eval(0.25) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(w.eval(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w.eval(1.3) == doctest::Approx(w.eval(0.3)).epsilon(1e-13));
    CHECK(w.curvature() == doctest::Approx(2.0 * pi * pi).epsilon(1e-14));

    auto w2 = PeriodicPotential::sinusoidal(2.0);
    CHECK(w2.curvature() == doctest::Approx(pi * pi / 2.0).epsilon(1e-14));

    REQUIRE(w.harmonics().size() == 2);
    CHECK(w.harmonics()[0] == doctest::Approx(0.5));
    CHECK(w.harmonics()[1] == doctest::Approx(-0.25));
}

TEST_CASE("tabulated cosine series reproduces the builtin") {
    auto ref = PeriodicPotential::sinusoidal(1.0);
    auto tab = PeriodicPotential::fourier(1.0, {0.5, -0.5});
    for (int i = 0; i <= 40; ++i) {
        double z = -0.5 + i / 40.0;
        CHECK(tab.eval(z) == doctest::Approx(ref.eval(z)).epsilon(1e-13));
    }
    CHECK(tab.curvature() ==
          doctest::Approx(ref.curvature()).epsilon(1e-12));
}

TEST_CASE("potential validation") {
    CHECK_THROWS_AS(PeriodicPotential::fourier(1.0, {0.5, -0.4}),
                    InvalidPotential); // w(0) != 0
    CHECK_THROWS_AS(PeriodicPotential::fourier(1.0, {-0.5, 0.5}),
                    InvalidPotential); // negative between sites
    CHECK_THROWS_AS(PeriodicPotential::fourier(-1.0, {0.5, -0.5}),
                    InvalidPotential);

    // Free particle: constructible, but not a well.
    auto flat = PeriodicPotential::fourier(1.0, {0.0});
    CHECK_THROWS_AS(flat.require_well(), InvalidPotential);

    // Barrier collapses at T/2: valid function, rejected as a well.
    auto dip = PeriodicPotential::fourier(1.0, {0.5, 0.0, -0.5});
    CHECK_THROWS_AS(dip.require_well(), InvalidPotential);
}

TEST_CASE("Agmon action") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    CHECK(agmon_action(w) ==
          doctest::Approx(2.0 * std::sqrt(2.0) / pi).epsilon(1e-10));

    auto w2 = PeriodicPotential::sinusoidal(2.0);
    CHECK(agmon_action(w2) ==
          doctest::Approx(4.0 * std::sqrt(2.0) / pi).epsilon(1e-10));

    // S(c w) = sqrt(c) S(w)
    auto scaled = PeriodicPotential::fourier(1.0, {1.25, -1.25});
    CHECK(agmon_action(scaled) ==
          doctest::Approx(std::sqrt(2.5) * 2.0 * std::sqrt(2.0) / pi)
              .epsilon(1e-10));
}

TEST_CASE("tunneling prefactor") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    auto pf = tunneling_prefactor(w);
    const double A_exact = std::log(2.0 / pi) / pi;
    CHECK(pf.A == doctest::Approx(A_exact).epsilon(1e-9));
    // sin^2(pi z), T = 1: the closed form collapses to 2^{7/4}, the Mathieu
    // band-splitting constant at q = 1/(2 pi^2 eps^2).
    CHECK(pf.c_tau == doctest::Approx(std::pow(2.0, 1.75)).epsilon(1e-9));
    CHECK(pf.c_tau_variant ==
          doctest::Approx(std::pow(2.0, 0.75) / std::sqrt(pi) *
                          std::exp(A_exact))
              .epsilon(1e-9));
    CHECK(pf.c_tau_variant == doctest::Approx(0.82181).epsilon(1e-4));

    auto w2 = PeriodicPotential::sinusoidal(2.0);
    auto pf2 = tunneling_prefactor(w2);
    CHECK(pf2.A == doctest::Approx(2.0 * std::log(4.0 / pi) / pi).epsilon(1e-9));
    CHECK(pf2.c_tau ==
          doctest::Approx(std::pow(2.0, 1.75) / std::sqrt(2.0)).epsilon(1e-9));

    // Covariance under w -> c w: c_tau picks up c^{3/4}, matching the exact
    // operator identity tau(c w, eps) = tau(w, eps/sqrt(c)).
    auto scaled = PeriodicPotential::fourier(1.0, {1.25, -1.25});
    auto pfs = tunneling_prefactor(scaled);
    CHECK(pfs.c_tau ==
          doctest::Approx(std::pow(2.5, 0.75) * pf.c_tau).epsilon(1e-8));

    auto flat = PeriodicPotential::fourier(1.0, {0.0});
    CHECK_THROWS_AS(tunneling_prefactor(flat), InvalidPotential);
}
