#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "latticebec/dnls.hpp"
#include "latticebec/errors.hpp"
#include "latticebec/gp1d.hpp"
#include "latticebec/potential.hpp"
#include "latticebec/wannier.hpp"

using namespace latbec;
using cplx = std::complex<double>;

namespace {

double el_residual(const DNLSProblem& p, const std::vector<cplx>& c,
                   double mu) {
    auto g = gradient_dnls(p, c);
    double r2 = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
        r2 += std::norm(g[j] - 2.0 * mu * c[j]);
    return std::sqrt(r2);
}

double branch_min(const std::vector<DNLSBranch>& branches) {
    double m = branches.front().E;
    for (const auto& b : branches) m = std::min(m, b.E);
    return m;
}

} // namespace

TEST_CASE("energy evaluator closed forms") {
    DNLSProblem p;
    p.tau = 1.0;
    p.I = 0.0;
    p.nu = 0.7;
    p.N = 1;
    p.k = 0.0;
    std::vector<cplx> c{cplx(std::sqrt(0.7), 0.0)};
    CHECK(energy_dnls(p, c) == doctest::Approx(-2.0 * 0.7).epsilon(1e-14));

    p.N = 5;
    p.I = 0.8;
    p.nu = 1.3;
    c.assign(5, cplx(std::sqrt(1.3), 0.0));
    double expect = -2.0 * p.tau * p.nu * p.N + p.I * p.nu * p.nu * p.N;
    CHECK(energy_dnls(p, c) == doctest::Approx(expect).epsilon(1e-14));

    // a global unit phase leaves the energy unchanged to rounding
    std::vector<cplx> rot = c;
    for (auto& v : rot) v *= std::polar(1.0, 1.234);
    CHECK(energy_dnls(p, rot) ==
          doctest::Approx(energy_dnls(p, c)).epsilon(1e-14));

    // I = 0 uniform Floquet state reproduces the linear band value
    p.I = 0.0;
    p.k = 0.9;
    for (int j = 0; j < 5; ++j) c[j] = std::polar(std::sqrt(p.nu), p.k * j);
    CHECK(energy_dnls(p, c) ==
          doctest::Approx(-2.0 * p.tau * std::cos(p.k) * p.particles())
              .epsilon(1e-13));
}

TEST_CASE("gradient matches finite differences") {
    std::mt19937 rng(912u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        DNLSProblem p;
        p.tau = 0.5 + 0.5 * std::abs(u(rng));
        p.I = 0.5 + 0.5 * std::abs(u(rng));
        p.nu = 1.0;
        p.N = 4;
        p.k = 1.3 * u(rng);
        std::vector<cplx> c(4);
        for (auto& v : c) v = cplx(u(rng), u(rng));
        auto g = gradient_dnls(p, c);
        const double h = 1e-6;
        for (int j = 0; j < 4; ++j) {
            for (int part = 0; part < 2; ++part) {
                auto cp = c, cm = c;
                cplx dh = (part == 0) ? cplx(h, 0.0) : cplx(0.0, h);
                cp[j] += dh;
                cm[j] -= dh;
                double fd =
                    (energy_dnls(p, cp) - energy_dnls(p, cm)) / (2.0 * h);
                double an = (part == 0) ? g[j].real() : g[j].imag();
                CHECK(std::abs(fd - an) <=
                      1e-6 * std::max(1.0, std::abs(an)));
            }
        }
    }
}

TEST_CASE("single-site branch") {
    DNLSProblem p;
    p.tau = 1.0;
    p.I = 1.0;
    p.nu = 1.0;
    p.N = 1;
    p.k = 0.0;
    auto br = closed_branches(p);
    REQUIRE(br.size() == 1);
    CHECK(br[0].E == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(br[0].mu) < 1e-14);
    CHECK(energy_dnls(p, br[0].c) ==
          doctest::Approx(br[0].E * p.particles()).epsilon(1e-13));
    CHECK(el_residual(p, br[0].c, br[0].mu) < 1e-12);

    p.k = 2.1;
    auto br2 = closed_branches(p);
    CHECK(br2[0].E ==
          doctest::Approx(-2.0 * std::cos(2.1) + 1.0).epsilon(1e-14));
    CHECK(el_residual(p, br2[0].c, br2[0].mu) < 1e-12);
}

TEST_CASE("two-site branches") {
    DNLSProblem p;
    p.tau = 1.0;
    p.I = 2.0;
    p.nu = 1.0;
    p.N = 2;
    p.k = 0.0;
    auto br = closed_branches(p);
    REQUIRE(br.size() == 3);
    CHECK(br[0].label == "uniform");
    CHECK(br[0].E == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(br[1].label == "staggered");
    CHECK(br[1].E == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(br[2].label == "imbalanced");
    CHECK(br[2].E == doctest::Approx(4.5).epsilon(1e-14));
    CHECK(br[2].mu == doctest::Approx(8.0).epsilon(1e-14));
    for (const auto& b : br) {
        double n2 = 0.0;
        for (const auto& v : b.c) n2 += std::norm(v);
        CHECK(std::abs(n2 - p.particles()) < 1e-12);
        CHECK(energy_dnls(p, b.c) ==
              doctest::Approx(b.E * p.particles()).epsilon(1e-13));
        CHECK(el_residual(p, b.c, b.mu) < 1e-12);
    }
    CHECK_THROWS_AS((void)closed_branches(DNLSProblem{1.0, 1.0, 1.0, 3, 0.0}),
                    const InvalidParameter&);
}

TEST_CASE("imbalanced branch exists exactly when |tau cos k| <= I nu") {
    DNLSProblem p;
    p.tau = 1.0;
    p.nu = 1.0;
    p.N = 2;
    p.k = 0.0;

    p.I = 1.0 - 1e-12;
    for (const auto& b : closed_branches(p)) CHECK(b.label != "imbalanced");

    p.I = 1.0;  // boundary: the moduli coincide and the branch merges
    auto br = closed_branches(p);
    bool found = false;
    for (const auto& b : br)
        if (b.label == "imbalanced") {
            found = true;
            CHECK(std::abs(std::abs(b.c[0]) - std::abs(b.c[1])) < 1e-7);
            CHECK(b.E == doctest::Approx(3.0 * p.I * p.nu).epsilon(1e-14));
        }
    CHECK(found);

    p.I = 4.0;
    found = false;
    for (const auto& b : closed_branches(p))
        if (b.label == "imbalanced") {
            found = true;
            CHECK(std::abs(b.c[0]) > std::abs(b.c[1]));
            CHECK(el_residual(p, b.c, b.mu) < 1e-12);
        }
    CHECK(found);
}

TEST_CASE("free-phase branch at cos k = 0") {
    DNLSProblem p;
    p.tau = 1.0;
    p.I = 1.0;
    p.nu = 1.0;
    p.N = 2;
    p.k = std::numbers::pi / 2.0;
    auto br = closed_branches(p);
    bool found = false;
    for (const auto& b : br)
        if (b.label == "free-phase") {
            found = true;
            CHECK(b.degenerate);
            CHECK(b.E == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(b.mu == doctest::Approx(2.0).epsilon(1e-14));
            CHECK(el_residual(p, b.c, b.mu) < 1e-12);
        }
    CHECK(found);
    // no imbalanced branch in the degenerate case
    for (const auto& b : br) CHECK(b.label != "imbalanced");

    auto st = minimize_dnls(p);
    CHECK(st.degenerate);
    CHECK(st.E == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("imbalanced-over-uniform gap is a perfect square") {
    for (double tau : {0.3, 1.0, 2.0})
        for (double I : {0.5, 1.0, 3.0})
            for (double nu : {0.5, 1.0, 2.0})
                for (double k : {0.0, 0.4, 2.5}) {
                    DNLSProblem p{tau, I, nu, 2, k};
                    double e1 = 0.0, e2 = 0.0;
                    bool has2 = false;
                    for (const auto& b : closed_branches(p)) {
                        if (b.label == "uniform") e1 = b.E;
                        if (b.label == "imbalanced") {
                            e2 = b.E;
                            has2 = true;
                        }
                    }
                    if (!has2) continue;
                    double root = tau * std::cos(k) / std::sqrt(I * nu) +
                                  std::sqrt(I * nu);
                    CHECK(std::abs((e2 - e1) - root * root) <=
                          1e-12 * std::max(1.0, std::abs(e2 - e1)));
                }
}

TEST_CASE("minimizer agrees with the closed branches") {
    std::mt19937 rng(4406u);
    std::uniform_real_distribution<double> utau(0.0, 2.0);
    std::uniform_real_distribution<double> ui(0.0, 2.0);
    std::uniform_real_distribution<double> unu(0.2, 2.0);
    std::uniform_real_distribution<double> uk(0.0, 2.0 * std::numbers::pi);
    for (int rep = 0; rep < 20; ++rep) {
        DNLSProblem p;
        p.tau = utau(rng);
        p.I = ui(rng);
        p.nu = unu(rng);
        p.N = 1 + (rep % 2);
        p.k = uk(rng);
        auto br = closed_branches(p);
        auto st = minimize_dnls(p);
        double ref = branch_min(br);
        CHECK(std::abs(st.E - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
        for (const auto& b : br) CHECK(st.E <= b.E + 1e-8);
        double n2 = 0.0;
        for (const auto& v : st.c) n2 += std::norm(v);
        CHECK(std::abs(n2 - p.particles()) < 1e-12);
        for (std::size_t i = 1; i < st.trace.size(); ++i)
            CHECK(st.trace[i] <= st.trace[i - 1] + 1e-15);
    }
}

TEST_CASE("minimizer reference points") {
    DNLSProblem p{1.0, 1.0, 1.0, 2, 0.0};
    CHECK(minimize_dnls(p).E == doctest::Approx(-1.0).epsilon(1e-10));

    DNLSProblem lin{1.0, 0.0, 1.0, 4, 0.0};
    CHECK(minimize_dnls(lin).E == doctest::Approx(-2.0).epsilon(1e-10));

    DNLSProblem quart{0.0, 1.0, 1.0, 4, 0.0};
    auto st = minimize_dnls(quart);
    CHECK(st.E == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& v : st.c) CHECK(std::abs(std::abs(v) - 1.0) < 1e-6);

    CHECK_THROWS_AS((void)minimize_dnls(DNLSProblem{-1.0, 0.0, 1.0, 2, 0.0}),
                    const InvalidParameter&);
    CHECK_THROWS_AS((void)minimize_dnls(p, 0), const InvalidParameter&);
    CHECK_THROWS_AS((void)minimize_dnls(p, 16, 0.0), const InvalidParameter&);
}

TEST_CASE("reduced coefficients from the linear problem") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    const double eps = 0.04;
    auto coeffs = reduced_coefficients(w, eps, 0.3, 8);
    double q4_one = quartic_phi1(w, eps);
    CHECK(std::abs(coeffs.U / 0.3 - q4_one) <= 0.01 * q4_one);
    CHECK(coeffs.tau > 0.0);
    CHECK(std::abs(coeffs.tau_hat) < 0.3 * coeffs.tau);

    auto zero = reduced_coefficients(w, eps, 0.0, 8);
    CHECK(zero.U == 0.0);
    CHECK(zero.tau_hat == 0.0);
    CHECK(zero.lambda_hat1 == doctest::Approx(coeffs.lambda_hat1));

    CHECK_THROWS_AS((void)reduced_coefficients(w, eps, -1.0, 8),
                    const InvalidParameter&);
}

TEST_CASE("reduced minimum orders") {
    ReducedCoefficients coeffs;
    coeffs.lambda_hat1 = 5.0;
    coeffs.tau = 0.2;
    coeffs.U = 0.3;
    coeffs.tau_hat = 0.0;

    auto m1 = minimize_reduced(coeffs, 4, 1);
    CHECK(m1.m == doctest::Approx(5.0 + 0.3 / 4.0).epsilon(1e-14));
    for (const auto& v : m1.c)
        CHECK(std::abs(v - cplx(0.5, 0.0)) < 1e-14);

    // at k = 0 the uniform state minimizes both terms, so the order-2
    // minimum is lambda_hat1 - tau + U/N
    auto m2 = minimize_reduced(coeffs, 4, 2);
    CHECK(m2.m == doctest::Approx(5.0 - 0.2 + 0.3 / 4.0).epsilon(1e-10));

    coeffs.tau = 0.0;
    CHECK(minimize_reduced(coeffs, 4, 2).m ==
          doctest::Approx(m1.m).epsilon(1e-10));

    CHECK_THROWS_AS((void)minimize_reduced(coeffs, 4, 3),
                    const InvalidParameter&);
    CHECK_THROWS_AS((void)minimize_reduced(coeffs, 0, 1),
                    const InvalidParameter&);
}

TEST_CASE("reduced minimum tracks the full multi-well problem") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    const double eps = 0.05;
    const double g_hat = 0.05;
    const int N = 4;
    auto coeffs = reduced_coefficients(w, eps, g_hat, N);
    auto m2 = minimize_reduced(coeffs, N, 2);
    auto full = minimize_a(w, eps, g_hat, N);
    CHECK(std::abs(m2.m - full.energy) <= 0.05 * std::abs(full.energy));
}
