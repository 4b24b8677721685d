#include "latticebec/gp2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <numbers>
#include <string>

#include "latticebec/asymptotics.hpp"
#include "latticebec/errors.hpp"

namespace latbec {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// trapezoid measure against 2 pi r dr on the vertex grid
std::vector<double> radial_measure(std::size_t p, double r_max) {
    const double dr = r_max / double(p - 1);
    std::vector<double> m(p);
    for (std::size_t i = 0; i < p; ++i) {
        double w = (i == 0 || i + 1 == p) ? 0.5 : 1.0;
        m[i] = two_pi * dr * w * (double(i) * dr);
    }
    return m;
}

// psi' on the nodes: zero at the axis, centered inside, one-sided at R_max
void node_derivative(const std::vector<double>& psi, double dr,
                     std::vector<double>& out) {
    const std::size_t p = psi.size();
    out.resize(p);
    out[0] = 0.0;
    for (std::size_t i = 1; i + 1 < p; ++i)
        out[i] = (psi[i + 1] - psi[i - 1]) / (2.0 * dr);
    out[p - 1] = (psi[p - 1] - psi[p - 2]) / dr;
}

// K psi where E_kin = 1/2 psi^T K psi is the discrete kinetic form
void kinetic_apply(const std::vector<double>& psi,
                   const std::vector<double>& m, double dr,
                   std::vector<double>& out) {
    const std::size_t p = psi.size();
    std::vector<double> d;
    node_derivative(psi, dr, d);
    out.assign(p, 0.0);
    for (std::size_t i = 1; i + 1 < p; ++i) {
        double f = m[i] * d[i] / (2.0 * dr);
        out[i + 1] += f;
        out[i - 1] -= f;
    }
    double f = m[p - 1] * d[p - 1] / dr;
    out[p - 1] += f;
    out[p - 2] -= f;
}

// Face-based kinetic form used by the solver:
//   E_kin = sum_i kappa_i (psi_{i+1} - psi_i)^2,  kappa_i = pi r_{i+1/2}/dr.
// Unlike the node-centered form it is tridiagonal and gives the mesh
// checkerboard a maximal energy cost; with the node form that mode costs no
// kinetic energy at all and drops below the physical ground state once the
// quartic term is weak.
std::vector<double> face_kappa(std::size_t p, double r_max) {
    const double dr = r_max / double(p - 1);
    std::vector<double> k(p - 1);
    for (std::size_t i = 0; i + 1 < p; ++i)
        k[i] = std::numbers::pi * (double(i) + 0.5) * dr / dr;
    return k;
}

void kinetic_apply_face(const std::vector<double>& psi,
                        const std::vector<double>& kappa,
                        std::vector<double>& out) {
    const std::size_t p = psi.size();
    out.assign(p, 0.0);
    for (std::size_t i = 0; i + 1 < p; ++i) {
        double f = 2.0 * kappa[i] * (psi[i + 1] - psi[i]);
        out[i + 1] += f;
        out[i] -= f;
    }
}

void check_radial(double r_max, double omega_perp, double g_tilde,
                  std::size_t p) {
    if (!(r_max > 0.0)) throw InvalidParameter("r_max must be positive");
    if (!(omega_perp > 0.0))
        throw InvalidParameter("omega_perp must be positive");
    if (!(g_tilde >= 0.0))
        throw InvalidParameter("g_tilde must be non-negative");
    if (p < 16) throw InvalidParameter("grid needs at least 16 points");
}

// symmetric positive definite banded Cholesky, bandwidth 2 (the centered
// derivative couples next-nearest nodes)
class Band2Cholesky {
  public:
    Band2Cholesky(std::vector<double> d0, std::vector<double> d1,
                  std::vector<double> d2)
        : l0_(std::move(d0)), l1_(std::move(d1)), l2_(std::move(d2)) {
        const std::size_t n = l0_.size();
        for (std::size_t j = 0; j < n; ++j) {
            double v = l0_[j];
            if (j >= 1) v -= l1_[j - 1] * l1_[j - 1];
            if (j >= 2) v -= l2_[j - 2] * l2_[j - 2];
            if (!(v > 0.0))
                throw NumericalFailure("preconditioner lost definiteness");
            l0_[j] = std::sqrt(v);
            if (j + 1 < n) {
                double w = l1_[j];
                if (j >= 1) w -= l1_[j - 1] * l2_[j - 1];
                l1_[j] = w / l0_[j];
            }
            if (j + 2 < n) l2_[j] /= l0_[j];
        }
    }

    void solve(const std::vector<double>& b, std::vector<double>& x) const {
        const std::size_t n = l0_.size();
        x = b;
        for (std::size_t j = 0; j < n; ++j) {
            double v = x[j];
            if (j >= 1) v -= l1_[j - 1] * x[j - 1];
            if (j >= 2) v -= l2_[j - 2] * x[j - 2];
            x[j] = v / l0_[j];
        }
        for (std::size_t j = n; j-- > 0;) {
            double v = x[j];
            if (j + 1 < n) v -= l1_[j] * x[j + 1];
            if (j + 2 < n) v -= l2_[j] * x[j + 2];
            x[j] = v / l0_[j];
        }
    }

  private:
    std::vector<double> l0_, l1_, l2_;
};

}  // namespace

double tildeg(double g, double phi1_l4) {
    if (!(g >= 0.0)) throw InvalidParameter("g must be non-negative");
    if (!(phi1_l4 >= 0.0))
        throw InvalidParameter("int phi_1^4 must be non-negative");
    return g * phi1_l4;
}

double tildeg_asymptotic(double g, const PeriodicPotential& w, double eps) {
    if (!(g >= 0.0)) throw InvalidParameter("g must be non-negative");
    if (!(eps > 0.0)) throw InvalidParameter("eps must be positive");
    double gamma = w.curvature();
    if (!(gamma > 0.0))
        throw InvalidPotential("potential must have a quadratic minimum");
    return g * std::pow(gamma, 0.25) /
           std::sqrt(std::numbers::pi * eps);
}

double energy_b(const std::vector<double>& psi, double r_max,
                double omega_perp, double g_tilde) {
    check_radial(r_max, omega_perp, g_tilde, psi.size());
    const std::size_t p = psi.size();
    const double dr = r_max / double(p - 1);
    auto m = radial_measure(p, r_max);
    std::vector<double> d;
    node_derivative(psi, dr, d);
    double e = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        double r = double(i) * dr;
        double dens = 0.5 * d[i] * d[i] +
                      0.5 * omega_perp * omega_perp * r * r * psi[i] * psi[i] +
                      g_tilde * psi[i] * psi[i] * psi[i] * psi[i];
        e += m[i] * dens;
    }
    return e;
}

std::vector<double> gradient_b(const std::vector<double>& psi, double r_max,
                               double omega_perp, double g_tilde) {
    check_radial(r_max, omega_perp, g_tilde, psi.size());
    const std::size_t p = psi.size();
    const double dr = r_max / double(p - 1);
    auto m = radial_measure(p, r_max);
    std::vector<double> g;
    kinetic_apply(psi, m, dr, g);
    for (std::size_t i = 0; i < p; ++i) {
        double r = double(i) * dr;
        g[i] += m[i] * (omega_perp * omega_perp * r * r * psi[i] +
                        4.0 * g_tilde * psi[i] * psi[i] * psi[i]);
    }
    return g;
}

TransverseBounds minimize_b(double omega_perp, double g_tilde, double Omega,
                            double tol, int P, int max_iter) {
    if (!(omega_perp > 0.0))
        throw InvalidParameter("omega_perp must be positive");
    if (!(g_tilde >= 0.0))
        throw InvalidParameter("g_tilde must be non-negative");
    if (!(Omega >= 0.0 && Omega < omega_perp))
        throw InvalidParameter("Omega must lie in [0, omega_perp)");
    if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
    if (P < 64) throw InvalidParameter("P must be at least 64");
    if (max_iter < 1) throw InvalidParameter("max_iter must be at least 1");

    const std::size_t p = std::size_t(P);
    const double lam = std::pow(2.0, 1.5) / std::sqrt(std::numbers::pi);
    double r_tf = (g_tilde > 0.0) ? std::sqrt(lam) * std::pow(g_tilde, 0.25) /
                                        std::sqrt(omega_perp)
                                  : 0.0;
    const double r_max = std::max(1.5 * r_tf, 6.0 / std::sqrt(omega_perp));
    const double dr = r_max / double(p - 1);
    auto m = radial_measure(p, r_max);

    std::vector<double> r(p), v(p);
    for (std::size_t i = 0; i < p; ++i) {
        r[i] = double(i) * dr;
        v[i] = 0.5 * omega_perp * omega_perp * r[i] * r[i];
    }

    auto wdot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < p; ++i) s += m[i] * a[i] * b[i];
        return s;
    };
    auto normalize = [&](std::vector<double>& f) {
        double n = std::sqrt(wdot(f, f));
        if (!(n > 0.0))
            throw NumericalFailure("cannot normalize the zero state");
        for (double& q : f) q /= n;
    };

    std::vector<double> psi(p);
    if (g_tilde > 5.0) {
        double mu_tf = omega_perp * std::sqrt(2.0 * g_tilde / std::numbers::pi);
        for (std::size_t i = 0; i < p; ++i)
            psi[i] = std::sqrt(std::max(mu_tf - v[i], 0.0) /
                               (2.0 * g_tilde));
    } else {
        for (std::size_t i = 0; i < p; ++i)
            psi[i] = std::exp(-0.5 * omega_perp * r[i] * r[i]);
    }
    normalize(psi);

    // Q psi = (K + V) psi, the quadratic part of the Euclidean gradient
    auto kappa = face_kappa(p, r_max);
    auto apply_q = [&](const std::vector<double>& f, std::vector<double>& out) {
        kinetic_apply_face(f, kappa, out);
        for (std::size_t i = 0; i < p; ++i) out[i] += 2.0 * m[i] * v[i] * f[i];
    };

    auto quartic_sum = [&](const std::vector<double>& f) {
        double s = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            s += m[i] * f[i] * f[i] * f[i] * f[i];
        return s;
    };

    std::vector<double> qpsi(p), grad(p), res(p), dir(p), qdir(p);
    apply_q(psi, qpsi);
    double a0 = 0.0;
    for (std::size_t i = 0; i < p; ++i) a0 += qpsi[i] * psi[i];
    a0 *= 0.5;
    double quartic = quartic_sum(psi);
    double energy = a0 + g_tilde * quartic;

    TransverseBounds out;
    out.state.r_max = r_max;
    out.state.omega_perp = omega_perp;
    out.state.g_tilde = g_tilde;
    out.state.r = r;
    out.state.trace.push_back(energy);

    double step = 1.0, res_norm = 0.0, mu = 0.0;
    int it = 0;
    bool converged = false;
    double shift_built = -1.0;
    std::optional<Band2Cholesky> precond;
    std::vector<double> d0(p), d1(p, 0.0), d2(p, 0.0);
    auto rebuild = [&](double shift) {
        std::fill(d0.begin(), d0.end(), 0.0);
        std::fill(d1.begin(), d1.end(), 0.0);
        std::fill(d2.begin(), d2.end(), 0.0);
        for (std::size_t i = 0; i + 1 < p; ++i) {
            d0[i] += 2.0 * kappa[i];
            d0[i + 1] += 2.0 * kappa[i];
            d1[i] -= 2.0 * kappa[i];
        }
        for (std::size_t i = 0; i < p; ++i)
            d0[i] += 2.0 * m[i] * v[i] + 2.0 * shift * m[i];
        precond.emplace(d0, d1, d2);
        shift_built = shift;
    };

    {
        for (; it < max_iter; ++it) {
            mu = a0 + 2.0 * g_tilde * quartic;
            double rn2 = 0.0;
            for (std::size_t i = 0; i < p; ++i) {
                grad[i] = qpsi[i] +
                          4.0 * g_tilde * m[i] * psi[i] * psi[i] * psi[i];
                res[i] = grad[i] - 2.0 * mu * m[i] * psi[i];
                if (i > 0) rn2 += res[i] * res[i] / m[i];
            }
            res_norm = 0.5 * std::sqrt(rn2);
            if (res_norm <= tol * std::max(1.0, std::abs(mu))) {
                converged = true;
                break;
            }

            double shift = std::max(1.0, std::abs(mu));
            if (shift_built < 0.0 || shift > 4.0 * shift_built ||
                shift < 0.25 * shift_built)
                rebuild(shift);
            precond->solve(res, dir);
            double slope = 0.0;
            for (std::size_t i = 0; i < p; ++i) slope += res[i] * dir[i];
            if (!(slope > 0.0)) {
                dir = res;
                slope = 0.0;
                for (std::size_t i = 0; i < p; ++i) slope += res[i] * res[i];
            }

            apply_q(dir, qdir);
            double ax = wdot(psi, dir), bx = wdot(dir, dir);
            double qd1 = 0.0, qd2 = 0.0;
            for (std::size_t i = 0; i < p; ++i) {
                qd1 += qpsi[i] * dir[i];
                qd2 += qdir[i] * dir[i];
            }
            double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0;
            for (std::size_t i = 0; i < p; ++i) {
                double xd = psi[i] * dir[i], dd = dir[i] * dir[i];
                b1 += m[i] * psi[i] * psi[i] * xd;
                b2 += m[i] * psi[i] * psi[i] * dd;
                b3 += m[i] * xd * dd;
                b4 += m[i] * dd * dd;
            }
            const double b0 = quartic;
            const double c1 = 2.0 * a0 * ax - qd1;
            const double c2 = 0.5 * qd2 - a0 * bx;
            const double e1 = 4.0 * (b0 * ax - b1);
            const double e2 = 6.0 * b2 - b0 * (2.0 * bx + 4.0 * ax * ax);
            const double e3 = 4.0 * (b0 * ax * bx - b3);
            const double e4 = b4 - b0 * bx * bx;
            auto delta_e = [&](double s) {
                double n2 = 1.0 - 2.0 * s * ax + s * s * bx;
                if (!(n2 > 1e-12))
                    return std::numeric_limits<double>::infinity();
                return (c1 * s + c2 * s * s) / n2 +
                       g_tilde *
                           ((((e4 * s + e3) * s + e2) * s + e1) * s) /
                           (n2 * n2);
            };

            bool accepted = false;
            double s = step;
            for (int bt = 0; bt < 60; ++bt) {
                double de = delta_e(s);
                if (de <= -1e-4 * s * slope) {
                    for (std::size_t i = 0; i < p; ++i) psi[i] -= s * dir[i];
                    normalize(psi);
                    apply_q(psi, qpsi);
                    a0 = 0.0;
                    for (std::size_t i = 0; i < p; ++i) a0 += qpsi[i] * psi[i];
                    a0 *= 0.5;
                    quartic = quartic_sum(psi);
                    energy += de;
                    accepted = true;
                    step = (bt == 0) ? std::min(s * 1.3, 1e3) : s;
                    break;
                }
                s *= 0.5;
            }
            if (!accepted) {
                if (res_norm <= 1e3 * tol * std::max(1.0, std::abs(mu))) {
                    converged = true;
                    break;
                }
                throw NonConvergence("line search stalled, residual " +
                                     std::to_string(res_norm));
            }
            out.state.trace.push_back(energy);
        }
    }

    if (!converged)
        throw NonConvergence("no convergence in " + std::to_string(max_iter) +
                             " iterations, residual " +
                             std::to_string(res_norm));

    double mass = 0.0;
    for (std::size_t i = 0; i < p; ++i) mass += m[i] * psi[i];
    if (mass < 0.0)
        for (double& q : psi) q = -q;

    out.state.psi = std::move(psi);
    out.state.energy = a0 + g_tilde * quartic;
    out.state.mu = a0 + 2.0 * g_tilde * quartic;
    out.state.residual = res_norm;
    out.state.iterations = it;

    out.m_b = out.state.energy;
    if (g_tilde > 0.0) {
        auto bounds = tf2d(g_tilde, omega_perp, Omega);
        out.lower_universal = bounds.upper;
        out.lower_rot = bounds.lower_rot;
    }
    out.gap = out.m_b - out.lower_rot;
    return out;
}

}  // namespace latbec
