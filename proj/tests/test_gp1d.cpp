#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "latticebec/asymptotics.hpp"
#include "latticebec/errors.hpp"
#include "latticebec/gp1d.hpp"
#include "latticebec/potential.hpp"
#include "latticebec/spectral.hpp"

using namespace latbec;

namespace {

std::vector<double> ground_state_samples(const PeriodicPotential& w,
                                         double eps, int M, int P) {
    auto H = assemble(w, eps, 0.0, M);
    auto r = lowest_eigs(H, 1);
    auto u = eval_periodic_part(H, r.vectors.col(0), P);
    std::vector<double> out(u.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = u[i].real();
        sum += out[i];
    }
    if (sum < 0.0)
        for (double& v : out) v = -v;
    return out;
}

double lp(const std::vector<double>& f, double h, int p) {
    double s = 0.0;
    for (double v : f) s += std::pow(std::abs(v), p);
    return s * h;
}

}  // namespace

TEST_CASE("effective coupling") {
    CHECK(hatg(0.0, 1.0) == 0.0);
    CHECK(hatg(2.0 * std::numbers::pi, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hatg(10.0, 5.0) ==
          doctest::Approx(25.0 / std::numbers::pi).epsilon(1e-14));
    CHECK_THROWS_AS(hatg(-1.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(hatg(1.0, 0.0), InvalidParameter);
}

TEST_CASE("energy of closed-form states") {
    auto flat = PeriodicPotential::fourier(1.0, {0.0});
    const int N = 2, P = 128;
    std::vector<double> c(std::size_t(N) * P, 1.0 / std::sqrt(2.0));
    CHECK(std::abs(energy_a(c, flat, 0.1, 0.0, N)) < 1e-12);
    CHECK(energy_a(c, flat, 0.1, 3.0, N) == doctest::Approx(1.5).epsilon(1e-12));

    auto w = PeriodicPotential::sinusoidal(1.0);
    auto u = ground_state_samples(w, 0.05, 64, 256);
    auto r = lowest_eigs(assemble(w, 0.05, 0.0, 64), 1);
    CHECK(std::abs(energy_a(u, w, 0.05, 0.0, 1) - r.values[0]) < 1e-8);

    CHECK_THROWS_AS(energy_a({1.0, 2.0}, w, 0.05, 0.0, 1), InvalidParameter);
}

TEST_CASE("gradient matches directional finite differences") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    const int N = 1, P = 64;
    const double eps = 0.1, g = 1.3, h = 1.0 / P;
    std::mt19937 rng(20240818u);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> phi(P), v(P);
        for (int i = 0; i < P; ++i) {
            phi[i] = gauss(rng);
            v[i] = gauss(rng);
        }
        double n = std::sqrt(lp(phi, h, 2));
        for (double& p : phi) p /= n;
        auto grad = gradient_a(phi, w, eps, g, N);
        double lhs = 0.0;
        for (int i = 0; i < P; ++i) lhs += grad[i] * v[i];
        lhs *= h;
        const double s = 1e-5;
        std::vector<double> plus(phi), minus(phi);
        for (int i = 0; i < P; ++i) {
            plus[i] += s * v[i];
            minus[i] -= s * v[i];
        }
        double rhs = (energy_a(plus, w, eps, g, N) -
                      energy_a(minus, w, eps, g, N)) /
                     (2.0 * s);
        CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("linear limit reproduces the ground eigenvalue") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    auto r = lowest_eigs(assemble(w, 0.05, 0.0, 64), 1);
    auto s = minimize_a(w, 0.05, 0.0, 1);
    CHECK(std::abs(s.energy - r.values[0]) < 1e-8);
    CHECK(std::abs(s.mu - s.energy) < 1e-12 * std::max(1.0, s.energy));
    CHECK(s.residual <= 1e-9 * std::max(1.0, std::abs(s.mu)));

    const double h = s.T / 256;
    CHECK(std::abs(lp(s.phi, h, 2) - 1.0) < 1e-12);
    for (std::size_t i = 1; i < s.trace.size(); ++i)
        CHECK(s.trace[i] <= s.trace[i - 1]);
    for (double p : s.phi) CHECK(p > -1e-8);
}

TEST_CASE("weak coupling obeys the first-order expansion bound") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    const double eps = 0.05, g = 0.04, h = 1.0 / 256;
    auto r = lowest_eigs(assemble(w, eps, 0.0, 64), 2);
    auto u = ground_state_samples(w, eps, 64, 256);
    double q4 = lp(u, h, 4), q6 = lp(u, h, 6);
    double remainder = std::pow(2.0, 2.5) * std::pow(g, 1.5) * std::sqrt(q6) *
                       std::sqrt(q4) / std::sqrt(r.values[1] - r.values[0]);

    auto s = minimize_a(w, eps, g, 1);
    CHECK(std::abs(s.energy - (r.values[0] + g * q4)) <= remainder + 1e-8);
    auto b = sandwich_a(s, r.values[0], g, q4);
    CHECK(b.lower <= b.value + 1e-9);
    CHECK(b.value <= b.upper + 1e-9);
}

TEST_CASE("multi-well energies sit under the single-well bound") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    const double eps = 0.05, g = 0.05;
    auto m4 = minimize_a(w, eps, g, 4, {}, 1e-9, 128);
    auto m1 = minimize_a(w, eps, g / 4.0, 1, {}, 1e-9, 128);
    auto r = lowest_eigs(assemble(w, eps, 0.0, 64), 1);
    auto u = ground_state_samples(w, eps, 64, 128);
    double q4 = lp(u, 1.0 / 128, 4);
    auto b = sandwich_a(m4, r.values[0], g, q4, m1.energy);
    CHECK(b.value <= b.single_bound + 1e-8);
    CHECK(m4.t_period_deviation < 1e-5);

    GPState1D fake = m4;
    fake.energy = r.values[0] - 1.0;
    CHECK_THROWS_AS(sandwich_a(fake, r.values[0], g, q4), InvariantViolation);
    fake.energy = r.values[0] + g * q4 + 1.0;
    CHECK_THROWS_AS(sandwich_a(fake, r.values[0], g, q4), InvariantViolation);
    fake.energy = m1.energy + 1e-3;
    CHECK_THROWS_AS(sandwich_a(fake, r.values[0], g, q4, m1.energy),
                    InvariantViolation);
}

TEST_CASE("strong coupling approaches the thomas-fermi energy") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    const double eps = 0.02, g = 707.0;
    auto s = minimize_a(w, eps, g, 1);
    auto tf = tf1d_energy(w, eps, g);
    CHECK(std::abs(s.energy / tf.energy - 1.0) < 0.10);
    CHECK(s.energy >= tf.energy - 1e-6 * tf.energy);

    auto s2 = minimize_a(w, eps, g, 2, {}, 1e-9, 256);
    auto s_half = minimize_a(w, eps, g / 2.0, 1, {}, 1e-9, 256);
    CHECK(std::abs(s2.energy / s_half.energy - 1.0) < 0.01);
}

TEST_CASE("translated initial guesses reach the same minimum") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    const int N = 2, P = 128;
    const double eps = 0.05, g = 0.1;
    const double gamma = w.curvature();
    auto comb = [&](double center) {
        std::vector<double> f(std::size_t(N) * P);
        for (int s = 0; s < N * P; ++s) {
            double z = -0.5 * N + double(s) / P;
            double d = z - center;
            d -= N * std::round(d / N);
            f[s] = std::exp(-std::sqrt(gamma) * d * d / (2.0 * eps));
        }
        return f;
    };
    auto a = minimize_a(w, eps, g, N, comb(0.0), 1e-9, P);
    auto b = minimize_a(w, eps, g, N, comb(1.0), 1e-9, P);
    CHECK(std::abs(a.energy - b.energy) < 1e-8);

    double mass_a = 0.0;
    for (int i = 0; i < P; ++i) {
        int s = N * P / 2 - P / 2 + i;
        mass_a += a.phi[s] * a.phi[s];
    }
    CHECK(mass_a / P * a.T >= 0.5 / N);
}

TEST_CASE("solver rejects bad inputs and reports non-convergence") {
    auto w = PeriodicPotential::sinusoidal(1.0);
    CHECK_THROWS_AS(minimize_a(w, 0.05, 0.0, 1, {}, -1.0), InvalidParameter);
    CHECK_THROWS_AS(minimize_a(w, 0.05, 1.0, 0), InvalidParameter);
    CHECK_THROWS_AS(minimize_a(w, 0.05, -1.0, 1), InvalidParameter);
    CHECK_THROWS_AS(minimize_a(w, 0.05, 1.0, 1, std::vector<double>(7, 1.0)),
                    InvalidParameter);
    CHECK_THROWS_AS(minimize_a(w, 0.05, 1.0, 1, {}, 1e-13, 256, 2),
                    NonConvergence);
}
