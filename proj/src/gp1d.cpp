#include "latticebec/gp1d.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "latticebec/errors.hpp"

namespace latbec {

namespace {

// -1/2 f'' + W f with f'' by Fourier multiplier.  The Nyquist mode is
// dropped (the skew-symmetric spectral derivative annihilates it), which
// keeps this operator consistent with the discrete energy's |Df|^2 term.
class Hamiltonian1D {
  public:
    Hamiltonian1D(std::vector<double> W, double length)
        : W_(std::move(W)), k2_(W_.size(), 0.0) {
        const std::size_t q = W_.size();
        for (std::size_t m = 0; m < q; ++m) {
            double f = (m <= q / 2) ? double(m) : double(m) - double(q);
            if (2 * m == q) f = 0.0;
            double k = 2.0 * std::numbers::pi * f / length;
            k2_[m] = k * k;
        }
    }

    void apply(const std::vector<double>& f, std::vector<double>& out) {
        const std::size_t q = f.size();
        buf_.assign(f.begin(), f.end());
        fft_.fwd(freq_, buf_);
        for (std::size_t m = 0; m < q; ++m) freq_[m] *= 0.5 * k2_[m];
        fft_.inv(buf_, freq_);
        out.resize(q);
        for (std::size_t m = 0; m < q; ++m)
            out[m] = buf_[m].real() + W_[m] * f[m];
    }

    // (shift + -1/2 d^2/dz^2)^{-1} f: Sobolev preconditioner that tames the
    // k^2 stiffness of the gradient flow
    void precondition(const std::vector<double>& f, std::vector<double>& out,
                      double shift) {
        const std::size_t q = f.size();
        buf_.assign(f.begin(), f.end());
        fft_.fwd(freq_, buf_);
        for (std::size_t m = 0; m < q; ++m)
            freq_[m] /= shift + 0.5 * k2_[m];
        fft_.inv(buf_, freq_);
        out.resize(q);
        for (std::size_t m = 0; m < q; ++m) out[m] = buf_[m].real();
    }

  private:
    std::vector<double> W_;
    std::vector<double> k2_;
    Eigen::FFT<double> fft_;
    std::vector<std::complex<double>> buf_, freq_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b,
           double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * h;
}

void normalize(std::vector<double>& phi, double h) {
    double n = std::sqrt(dot(phi, phi, h));
    if (!(n > 0.0)) throw NumericalFailure("cannot normalize the zero state");
    for (double& p : phi) p /= n;
}

std::vector<double> potential_samples(const PeriodicPotential& w, double eps,
                                      int N, int P) {
    const double T = w.period();
    const std::size_t q = std::size_t(N) * P;
    const double h = T / P;
    std::vector<double> W(q);
    for (std::size_t s = 0; s < q; ++s) {
        double z = -0.5 * N * T + double(s) * h;
        W[s] = w.eval(z) / (eps * eps);
    }
    return W;
}

void check_common(const PeriodicPotential& w, double eps, double g_hat,
                  int N) {
    (void)w;
    if (!(eps > 0.0)) throw InvalidParameter("eps must be positive");
    if (!(g_hat >= 0.0)) throw InvalidParameter("g_hat must be non-negative");
    if (N < 1) throw InvalidParameter("N must be at least 1");
}

}  // namespace

double hatg(double g, double omega_perp) {
    if (!(g >= 0.0)) throw InvalidParameter("g must be non-negative");
    if (!(omega_perp > 0.0))
        throw InvalidParameter("omega_perp must be positive");
    return g * omega_perp / (2.0 * std::numbers::pi);
}

double energy_a(const std::vector<double>& phi, const PeriodicPotential& w,
                double eps, double g_hat, int N) {
    check_common(w, eps, g_hat, N);
    if (phi.size() < 8 || phi.size() % std::size_t(N) != 0)
        throw InvalidParameter("phi must hold N*P grid values, P >= 8");
    const int P = int(phi.size() / std::size_t(N));
    const double h = w.period() / P;
    Hamiltonian1D H(potential_samples(w, eps, N, P), N * w.period());
    std::vector<double> hphi;
    H.apply(phi, hphi);
    double quartic = 0.0;
    for (double p : phi) quartic += p * p * p * p;
    return dot(hphi, phi, h) + g_hat * quartic * h;
}

std::vector<double> gradient_a(const std::vector<double>& phi,
                               const PeriodicPotential& w, double eps,
                               double g_hat, int N) {
    check_common(w, eps, g_hat, N);
    if (phi.size() < 8 || phi.size() % std::size_t(N) != 0)
        throw InvalidParameter("phi must hold N*P grid values, P >= 8");
    const int P = int(phi.size() / std::size_t(N));
    Hamiltonian1D H(potential_samples(w, eps, N, P), N * w.period());
    std::vector<double> g;
    H.apply(phi, g);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = 2.0 * g[i] + 4.0 * g_hat * phi[i] * phi[i] * phi[i];
    return g;
}

GPState1D minimize_a(const PeriodicPotential& w, double eps, double g_hat,
                     int N, const std::vector<double>& init, double tol,
                     int P, int max_iter) {
    check_common(w, eps, g_hat, N);
    if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
    if (P < 16) throw InvalidParameter("P must be at least 16");
    if (max_iter < 1) throw InvalidParameter("max_iter must be at least 1");

    const double T = w.period();
    const std::size_t q = std::size_t(N) * P;
    const double h = T / P;
    const double L = N * T;

    std::vector<double> z(q);
    for (std::size_t s = 0; s < q; ++s) z[s] = -0.5 * L + double(s) * h;

    Hamiltonian1D H(potential_samples(w, eps, N, P), L);

    std::vector<double> phi;
    if (!init.empty()) {
        if (init.size() != q)
            throw InvalidParameter("init must hold N*P grid values");
        phi = init;
    } else {
        phi.assign(q, 1.0);
        double gamma = w.curvature();
        if (gamma > 0.0) {
            double a = std::sqrt(gamma) / (2.0 * eps);
            for (std::size_t s = 0; s < q; ++s) {
                double acc = 0.0;
                for (int j = 0; j < N; ++j) {
                    double d = z[s] - j * T;
                    d -= L * std::round(d / L);
                    acc += std::exp(-a * d * d);
                }
                phi[s] = acc;
            }
        }
    }
    normalize(phi, h);

    std::vector<double> hphi, grad(q), pg(q), dir(q), hdir(q);
    auto quartic_sum = [&](const std::vector<double>& f) {
        double acc = 0.0;
        for (double p : f) acc += p * p * p * p;
        return acc * h;
    };

    H.apply(phi, hphi);
    double quartic = quartic_sum(phi);
    double a0 = dot(hphi, phi, h);
    double energy = a0 + g_hat * quartic;

    GPState1D out;
    out.T = T;
    out.N = N;
    out.z = std::move(z);
    out.trace.push_back(energy);

    double step = 1.0;
    double pg_norm = 0.0, mu = 0.0;
    int it = 0;
    bool converged = false;

    for (; it < max_iter; ++it) {
        mu = a0 + 2.0 * g_hat * quartic;
        double pg2 = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            grad[i] = 2.0 * hphi[i] + 4.0 * g_hat * phi[i] * phi[i] * phi[i];
            pg[i] = grad[i] - 2.0 * mu * phi[i];
            pg2 += pg[i] * pg[i];
        }
        pg_norm = std::sqrt(pg2 * h);
        if (0.5 * pg_norm <= tol * std::max(1.0, std::abs(mu))) {
            converged = true;
            break;
        }

        H.precondition(pg, dir, std::max(1.0, std::abs(mu)));
        double slope = dot(pg, dir, h);
        if (!(slope > 0.0)) {
            dir = pg;
            slope = pg2 * h;
        }
        H.apply(dir, hdir);

        // E(normalize(phi - s dir)) - E(phi) as an exact rational function
        // of s.  Every coefficient is a plain dot product, so the evaluation
        // error scales with s and the Armijo test stays sharp even when the
        // decrease sits far below eps * |energy|.
        double ax = dot(phi, dir, h), bx = dot(dir, dir, h);
        double ah = dot(hphi, dir, h), bh = dot(hdir, dir, h);
        double b1 = 0.0, b2 = 0.0, b3 = 0.0, b4 = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            double xd = phi[i] * dir[i], dd = dir[i] * dir[i];
            b1 += phi[i] * phi[i] * xd;
            b2 += phi[i] * phi[i] * dd;
            b3 += xd * dd;
            b4 += dd * dd;
        }
        b1 *= h, b2 *= h, b3 *= h, b4 *= h;
        const double b0 = quartic;
        const double c1 = 2.0 * (a0 * ax - ah), c2 = bh - a0 * bx;
        const double d1 = 4.0 * (b0 * ax - b1);
        const double d2 = 6.0 * b2 - b0 * (2.0 * bx + 4.0 * ax * ax);
        const double d3 = 4.0 * (b0 * ax * bx - b3);
        const double d4 = b4 - b0 * bx * bx;
        auto delta_e = [&](double s) {
            double n2 = 1.0 - 2.0 * s * ax + s * s * bx;
            if (!(n2 > 1e-12)) return std::numeric_limits<double>::infinity();
            return (c1 * s + c2 * s * s) / n2 +
                   g_hat * ((((d4 * s + d3) * s + d2) * s + d1) * s) /
                       (n2 * n2);
        };

        bool accepted = false;
        double s = step;
        for (int bt = 0; bt < 60; ++bt) {
            double de = delta_e(s);
            if (de <= -1e-4 * s * slope) {
                for (std::size_t i = 0; i < q; ++i) phi[i] -= s * dir[i];
                normalize(phi, h);
                H.apply(phi, hphi);
                quartic = quartic_sum(phi);
                a0 = dot(hphi, phi, h);
                energy += de;
                accepted = true;
                step = (bt == 0) ? std::min(s * 1.3, 1e3) : s;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) {
            if (0.5 * pg_norm <= 1e3 * tol * std::max(1.0, std::abs(mu))) {
                converged = true;
                break;
            }
            throw NonConvergence(
                "line search stalled, projected residual " +
                std::to_string(0.5 * pg_norm));
        }
        out.trace.push_back(energy);
    }

    if (!converged)
        throw NonConvergence("no convergence in " + std::to_string(max_iter) +
                             " iterations, projected residual " +
                             std::to_string(0.5 * pg_norm));

    if (dot(phi, std::vector<double>(q, 1.0), h) < 0.0)
        for (double& p : phi) p = -p;

    // pick the T-translate with the largest mass in the central period
    std::size_t best = 0;
    double best_mass = -1.0;
    for (int j = 0; j < N; ++j) {
        double m = 0.0;
        for (int i = 0; i < P; ++i) {
            std::size_t s = (q / 2 - std::size_t(P) / 2 + i + std::size_t(j) * P) % q;
            m += phi[s] * phi[s];
        }
        if (m > best_mass) {
            best_mass = m;
            best = std::size_t(j) * P;
        }
    }
    if (best != 0) {
        std::vector<double> shifted(q);
        for (std::size_t s = 0; s < q; ++s) shifted[s] = phi[(s + best) % q];
        phi.swap(shifted);
    }

    double dev = 0.0;
    for (std::size_t s = 0; s < q; ++s) {
        double d = phi[s] - phi[(s + std::size_t(P)) % q];
        dev += d * d;
    }

    out.phi = std::move(phi);
    out.energy = a0 + g_hat * quartic;
    out.mu = a0 + 2.0 * g_hat * quartic;
    out.residual = 0.5 * pg_norm;
    out.iterations = it;
    out.t_period_deviation = std::sqrt(dev * h);
    return out;
}

SandwichA sandwich_a(const GPState1D& s, double lambda1z, double g_hat,
                     double phi1_l4, double m_single) {
    SandwichA r;
    r.lower = lambda1z;
    r.upper = lambda1z + g_hat * phi1_l4;
    r.value = s.energy;
    r.single_bound = m_single;
    if (r.value < r.lower - 1e-9)
        throw InvariantViolation("m_A fell below lambda_1");
    if (r.value > r.upper + 1e-9)
        throw InvariantViolation("m_A exceeded lambda_1 + g_hat int phi_1^4");
    if (std::isfinite(m_single) && r.value > m_single + 1e-8)
        throw InvariantViolation("m_A^N exceeded the single-well bound");
    return r;
}

}  // namespace latbec
