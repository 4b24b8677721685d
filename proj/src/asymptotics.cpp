#include "latticebec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latticebec/errors.hpp"
#include "latticebec/quadrature.hpp"

namespace latbec {

namespace {
constexpr double pi = std::numbers::pi;
}

HarmonicPrediction harmonic_levels(const PeriodicPotential& w, double eps,
                                   int j_max) {
    if (!(eps > 0.0)) throw InvalidParameter("harmonic_levels: eps <= 0");
    if (j_max < 1) throw InvalidParameter("harmonic_levels: j_max < 1");
    const double gamma = w.curvature();
    if (!(gamma > 0.0))
        throw InvalidPotential("harmonic_levels: needs positive curvature");
    HarmonicPrediction h;
    h.gap = std::sqrt(gamma) / eps;
    h.levels.resize(j_max);
    for (int j = 1; j <= j_max; ++j)
        h.levels[j - 1] = (j - 0.5) * std::sqrt(gamma) / eps;
    h.l4 = std::pow(gamma, 0.25) / std::sqrt(2.0 * pi * eps);
    h.l4_variant = std::pow(gamma, 0.25) / (std::sqrt(pi) * std::sqrt(eps));
    return h;
}

double tau_asymptotic(const PeriodicPotential& w, double eps) {
    if (!(eps > 0.0)) throw InvalidParameter("tau_asymptotic: eps <= 0");
    const double S = agmon_action(w);
    const auto pf = tunneling_prefactor(w);
    return pf.c_tau * std::pow(eps, -1.5) * std::exp(-S / eps);
}

TFProfile1D tf1d_profile(const std::function<double(double)>& W, double T,
                         double g_hat, int grid) {
    if (!(g_hat > 0.0)) throw InvalidParameter("tf1d: g_hat must be positive");
    if (!(T > 0.0)) throw InvalidParameter("tf1d: period must be positive");
    if (grid < 16) throw InvalidParameter("tf1d: grid too coarse");

    double w_max = 0.0;
    for (int i = 0; i <= 512; ++i) {
        double z = T * (static_cast<double>(i) / 512 - 0.5);
        w_max = std::max(w_max, W(z));
    }
    double lo = 0.0, hi = w_max + 8.0 * g_hat / T;

    auto mass = [&](double mu) {
        auto f = [&](double z) { return std::max(0.0, mu - W(z)); };
        return integrate(f, -0.5 * T, 0.5 * T, 1e-13 * std::max(1.0, mu)) /
               (2.0 * g_hat);
    };
    if (mass(hi) < 1.0)
        throw NumericalFailure("tf1d: normalization bracket failed");
    double mu = 0.0;
    for (int it = 0; it < 200; ++it) {
        mu = 0.5 * (lo + hi);
        double m = mass(mu);
        if (std::abs(m - 1.0) <= 1e-12) break;
        (m < 1.0 ? lo : hi) = mu;
    }

    TFProfile1D tf;
    tf.mu = mu;
    auto sq = [&](double z) {
        double v = std::max(0.0, mu - W(z));
        return v * v;
    };
    tf.energy = mu - integrate(sq, -0.5 * T, 0.5 * T,
                               1e-12 * std::max(1.0, mu * mu)) /
                         (4.0 * g_hat);
    tf.z.resize(grid);
    tf.phi.resize(grid);
    for (int i = 0; i < grid; ++i) {
        double z = T * (static_cast<double>(i) / grid - 0.5);
        tf.z[i] = z;
        tf.phi[i] = std::sqrt(std::max(0.0, mu - W(z)) / (2.0 * g_hat));
    }
    tf.support_overflow = std::min(W(-0.5 * T), W(0.5 * T)) < mu;
    return tf;
}

TFProfile1D tf1d_energy(const PeriodicPotential& w, double eps, double g_hat,
                        int grid) {
    if (!(eps > 0.0)) throw InvalidParameter("tf1d: eps <= 0");
    const double inv_eps2 = 1.0 / (eps * eps);
    TFProfile1D tf = tf1d_profile(
        [&](double z) { return w.eval(z) * inv_eps2; }, w.period(), g_hat,
        grid);
    const double gamma = w.curvature();
    const double shape = std::pow(3.0, 5.0 / 3.0) / 10.0 *
                         std::pow(g_hat, 2.0 / 3.0) * std::pow(eps, -2.0 / 3.0);
    tf.harmonic_energy = shape * std::cbrt(gamma);
    tf.harmonic_energy_variant =
        std::pow(2.0, -4.0 / 3.0) * std::pow(3.0, 5.0 / 3.0) / 5.0 *
        std::pow(gamma, 2.0 / 3.0) * std::pow(g_hat, 2.0 / 3.0) *
        std::pow(eps, -2.0 / 3.0);
    return tf;
}

TF2D tf2d(double g_tilde, double omega_perp, double Omega) {
    if (!(g_tilde > 0.0)) throw InvalidParameter("tf2d: g_tilde must be positive");
    if (!(omega_perp > 0.0))
        throw InvalidParameter("tf2d: omega_perp must be positive");
    if (Omega < 0.0 || Omega >= omega_perp)
        throw InvalidParameter("tf2d: rotation requires 0 <= Omega < omega_perp");
    TF2D t;
    t.lambda = std::pow(2.0, 1.5) / std::sqrt(pi);
    t.c_tf = pi * t.lambda * t.lambda * t.lambda / 24.0;
    t.upper = t.c_tf * omega_perp * std::sqrt(g_tilde);
    double ratio = Omega / omega_perp;
    t.lower_rot = t.upper * std::sqrt(1.0 - ratio * ratio);
    t.lower_universal = t.upper;
    t.r_tf = std::sqrt(t.lambda) * std::pow(g_tilde, 0.25) /
             std::sqrt(omega_perp);
    return t;
}

LineFit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InvalidParameter("line_fit: need >= 2 matched samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300)
        throw InvalidParameter("line_fit: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

double agmon_fit_from_hopping(const std::vector<double>& eps,
                              const std::vector<double>& tau) {
    std::vector<double> y(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(tau[i] > 0.0))
            throw InvalidParameter("agmon_fit_from_hopping: tau must be > 0");
        y[i] = -eps[i] * std::log(tau[i] * std::pow(eps[i], 1.5));
    }
    return line_fit(eps, y).intercept;
}

double fit_decay_rate(const std::vector<double>& eps,
                      const std::vector<double>& values) {
    std::vector<double> x(eps.size()), y(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        double v = std::abs(values[i]);
        if (!(v > 0.0))
            throw InvalidParameter("fit_decay_rate: values must be nonzero");
        x[i] = 1.0 / eps[i];
        y[i] = std::log(v);
    }
    return -line_fit(x, y).slope;
}

} // namespace latbec
