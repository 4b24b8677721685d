#include "latticebec/dnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "latticebec/errors.hpp"
#include "latticebec/spectral.hpp"
#include "latticebec/wannier.hpp"

namespace latbec {

namespace {

using cplx = std::complex<double>;

// below this, cos k is treated as exactly zero (cos(pi/2) rounds to ~6e-17)
constexpr double kDegenerate = 1e-14;

void check_problem(const DNLSProblem& p) {
    if (!(p.tau >= 0.0)) throw InvalidParameter("dnls: tau must be >= 0");
    if (!(p.I >= 0.0)) throw InvalidParameter("dnls: I must be >= 0");
    if (!(p.nu > 0.0)) throw InvalidParameter("dnls: nu must be > 0");
    if (p.N < 1) throw InvalidParameter("dnls: N must be >= 1");
    if (!std::isfinite(p.k)) throw InvalidParameter("dnls: k must be finite");
}

void check_size(const DNLSProblem& p, const std::vector<cplx>& c) {
    if (int(c.size()) != p.N)
        throw InvalidParameter("dnls: amplitude vector must have N entries");
}

double re_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        s += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
    return s;
}

double quartic_sum(const std::vector<cplx>& g) {
    double s = 0.0;
    for (const cplx& v : g) {
        double n2 = std::norm(v);
        s += n2 * n2;
    }
    return s;
}

// Quadratic part of the gauged energy: with c_j = e^{ikj} g_j the bond sum
// becomes -tau sum_j (e^{ik} conj(g_j) g_{j+1} + c.c.) with g periodic, and
// A(g) = Re <g, quad_apply(g)> reproduces it.
std::vector<cplx> quad_apply(const DNLSProblem& p, const std::vector<cplx>& g) {
    const int n = p.N;
    const cplx f = std::polar(1.0, p.k);
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) {
        const cplx& up = g[(j + 1) % n];
        const cplx& dn = g[(j + n - 1) % n];
        out[j] = -p.tau * (f * up + std::conj(f) * dn);
    }
    return out;
}

struct RunResult {
    std::vector<cplx> g;
    double energy = 0.0;
    double mu = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

// Projected gradient descent on the sphere ||g||^2 = N_c in the gauged
// variables.  The step is chosen by expanding the energy change of the
// normalized trial exactly as a rational function of the step, which keeps
// the comparison meaningful far below the eps_mach |E| floor of a plain
// energy difference.
RunResult run_descent(const DNLSProblem& p, std::vector<cplx> g, double tol,
                      int max_iter) {
    const int n = p.N;
    const double nc = p.particles();

    double nrm = std::sqrt(re_dot(g, g));
    if (!(nrm > 0.0)) throw InvalidParameter("dnls: zero starting state");
    for (cplx& v : g) v *= std::sqrt(nc) / nrm;

    std::vector<cplx> hg = quad_apply(p, g);
    double a0 = re_dot(hg, g);
    double q0 = quartic_sum(g);
    double energy = a0 + p.I * q0;

    RunResult out;
    out.trace.reserve(64);
    std::vector<cplx> grad(n), res(n), dir(n), hd(n);
    double step = 0.5;

    for (int it = 0; it < max_iter; ++it) {
        out.trace.push_back(energy);
        for (int j = 0; j < n; ++j)
            grad[j] = 2.0 * (hg[j] + 2.0 * p.I * std::norm(g[j]) * g[j]);
        const double mu = re_dot(grad, g) / (2.0 * nc);
        double r2 = 0.0;
        for (int j = 0; j < n; ++j) {
            res[j] = grad[j] - 2.0 * mu * g[j];
            r2 += std::norm(res[j]);
        }
        out.mu = mu;
        out.residual = 0.5 * std::sqrt(r2);
        out.iterations = it;
        if (out.residual <= tol * std::max(1.0, std::abs(mu))) {
            out.converged = true;
            break;
        }

        dir = res;
        hd = quad_apply(p, dir);
        const double ax = re_dot(g, dir) / nc;
        const double bx = re_dot(dir, dir) / nc;
        const double ah = re_dot(hg, dir);
        const double bh = re_dot(hd, dir);
        const double c1 = 2.0 * (a0 * ax - ah);
        const double c2 = bh - a0 * bx;
        double f1 = 0.0, f2 = 0.0, f3 = 0.0, f4 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double al = std::norm(g[j]);
            const double be = 2.0 * (g[j].real() * dir[j].real() +
                                     g[j].imag() * dir[j].imag());
            const double ga = std::norm(dir[j]);
            f1 -= 2.0 * al * be;
            f2 += be * be + 2.0 * al * ga;
            f3 -= 2.0 * be * ga;
            f4 += ga * ga;
        }
        const double d1 = f1 + 4.0 * q0 * ax;
        const double d2 = f2 - q0 * (4.0 * ax * ax + 2.0 * bx);
        const double d3 = f3 + 4.0 * q0 * ax * bx;
        const double d4 = f4 - q0 * bx * bx;
        const double slope = -(c1 + p.I * d1);
        if (!(slope > 0.0)) break;  // critical to rounding

        auto delta_e = [&](double s) {
            const double n2 = 1.0 - 2.0 * s * ax + s * s * bx;
            if (!(n2 > 1e-12)) return std::numeric_limits<double>::infinity();
            const double quad = (c1 * s + c2 * s * s) / n2;
            const double quart =
                ((((d4 * s + d3) * s + d2) * s + d1) * s) / (n2 * n2);
            return quad + p.I * quart;
        };

        double s = step, de = 0.0;
        bool ok = false;
        int bt = 0;
        for (; bt < 60; ++bt, s *= 0.5) {
            de = delta_e(s);
            if (de <= -1e-4 * s * slope) {
                ok = true;
                break;
            }
        }
        if (!ok) break;
        const double n2 = 1.0 - 2.0 * s * ax + s * s * bx;
        const double rescale = std::sqrt(1.0 / n2);
        for (int j = 0; j < n; ++j) g[j] = (g[j] - s * dir[j]) * rescale;
        hg = quad_apply(p, g);
        a0 = re_dot(hg, g);
        q0 = quartic_sum(g);
        energy += de;
        step = (bt == 0) ? std::min(s * 1.3, 1e3) : s;
    }

    out.g = std::move(g);
    out.energy = a0 + p.I * q0;
    out.trace.push_back(energy);
    return out;
}

std::vector<cplx> ungauge(const DNLSProblem& p, const std::vector<cplx>& g) {
    std::vector<cplx> c(g.size());
    for (int j = 0; j < p.N; ++j) c[j] = std::polar(1.0, p.k * j) * g[j];
    return c;
}

DNLSBranch make_branch(const DNLSProblem& p, std::string label,
                       const std::vector<cplx>& g, double mu, double E,
                       bool degenerate = false) {
    DNLSBranch b;
    b.label = std::move(label);
    b.c = ungauge(p, g);
    b.mu = mu;
    b.E = E;
    b.degenerate = degenerate;
    return b;
}

} // namespace

double energy_dnls(const DNLSProblem& p, const std::vector<cplx>& c) {
    check_problem(p);
    check_size(p, c);
    const int n = p.N;
    cplx bonds = 0.0;
    for (int j = 0; j + 1 < n; ++j) bonds += std::conj(c[j]) * c[j + 1];
    bonds += std::conj(c[n - 1]) * std::polar(1.0, p.k * n) * c[0];
    double quart = 0.0;
    for (const cplx& v : c) {
        double n2 = std::norm(v);
        quart += n2 * n2;
    }
    return -2.0 * p.tau * bonds.real() + p.I * quart;
}

std::vector<cplx> gradient_dnls(const DNLSProblem& p,
                                const std::vector<cplx>& c) {
    check_problem(p);
    check_size(p, c);
    const int n = p.N;
    const cplx wrap = std::polar(1.0, p.k * n);
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) {
        cplx up = (j + 1 < n) ? c[j + 1] : wrap * c[0];
        cplx dn = (j > 0) ? c[j - 1] : std::conj(wrap) * c[n - 1];
        out[j] = 2.0 * (-p.tau * (up + dn) + 2.0 * p.I * std::norm(c[j]) * c[j]);
    }
    return out;
}

std::vector<DNLSBranch> closed_branches(const DNLSProblem& p) {
    check_problem(p);
    if (p.N > 2)
        throw InvalidParameter(
            "dnls: closed branches cover N = 1 and N = 2 only; use "
            "minimize_dnls");

    const double ck = std::cos(p.k);
    const double rnu = std::sqrt(p.nu);
    std::vector<DNLSBranch> out;

    if (p.N == 1) {
        out.push_back(make_branch(p, "uniform", {cplx(rnu, 0.0)},
                                  -2.0 * p.tau * ck + 2.0 * p.I * p.nu,
                                  -2.0 * p.tau * ck + p.I * p.nu));
        return out;
    }

    out.push_back(make_branch(p, "uniform", {cplx(rnu, 0.0), cplx(rnu, 0.0)},
                              2.0 * p.I * p.nu - 2.0 * p.tau * ck,
                              -2.0 * p.tau * ck + p.I * p.nu));
    out.push_back(make_branch(p, "staggered", {cplx(rnu, 0.0), cplx(-rnu, 0.0)},
                              2.0 * p.I * p.nu + 2.0 * p.tau * ck,
                              2.0 * p.tau * ck + p.I * p.nu));

    const double tc = p.tau * ck;
    if (p.I * p.nu > 0.0 && std::abs(ck) >= kDegenerate && tc != 0.0 &&
        std::abs(tc) <= p.I * p.nu) {
        // moduli split: r1 r2 = |tau cos k|/I with r1^2 + r2^2 = 2 nu, and
        // the relative phase is pi when tau cos k > 0
        const double prod = std::abs(tc) / p.I;
        const double disc = std::sqrt(std::max(0.0, p.nu * p.nu - prod * prod));
        const double r1 = std::sqrt(p.nu + disc);
        const double r2 = std::sqrt(p.nu - disc);
        const double sgn = (tc > 0.0) ? -1.0 : 1.0;
        out.push_back(make_branch(
            p, "imbalanced", {cplx(r1, 0.0), cplx(sgn * r2, 0.0)},
            4.0 * p.I * p.nu, tc * tc / (p.I * p.nu) + 2.0 * p.I * p.nu));
    }

    if (std::abs(ck) < kDegenerate) {
        // any pair of phases is critical; report one that is neither the
        // uniform nor the staggered representative
        out.push_back(make_branch(p, "free-phase",
                                  {cplx(rnu, 0.0), cplx(0.0, rnu)},
                                  2.0 * p.I * p.nu, p.I * p.nu, true));
    }
    return out;
}

DNLSState minimize_dnls(const DNLSProblem& p, int restarts, double tol,
                        unsigned seed) {
    check_problem(p);
    if (restarts < 1) throw InvalidParameter("dnls: restarts must be >= 1");
    if (!(tol > 0.0)) throw InvalidParameter("dnls: tol must be > 0");

    const int n = p.N;
    const double rnu = std::sqrt(p.nu);
    std::vector<std::vector<cplx>> starts;
    starts.emplace_back(n, cplx(rnu, 0.0));
    {
        std::vector<cplx> s(n);
        for (int j = 0; j < n; ++j) s[j] = (j % 2 == 0) ? rnu : -rnu;
        starts.push_back(std::move(s));
    }
    {
        std::vector<cplx> s(n, cplx(0.0, 0.0));
        s[0] = std::sqrt(p.particles());
        starts.push_back(std::move(s));
    }
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (int(starts.size()) < restarts) {
        std::vector<cplx> s(n);
        for (int j = 0; j < n; ++j) s[j] = cplx(gauss(rng), gauss(rng));
        starts.push_back(std::move(s));
    }
    starts.resize(std::size_t(restarts));

    const int max_iter = 20000;
    RunResult best;
    bool have = false;
    double best_residual = std::numeric_limits<double>::infinity();
    for (auto& s : starts) {
        RunResult r = run_descent(p, std::move(s), tol, max_iter);
        best_residual = std::min(best_residual, r.residual);
        if (!r.converged) continue;
        if (!have || r.energy < best.energy) {
            best = std::move(r);
            have = true;
        }
    }
    if (!have)
        throw NonConvergence("dnls: no start converged within 20000 "
                             "iterations, best residual " +
                             std::to_string(best_residual));

    DNLSState st;
    st.c = ungauge(p, best.g);
    st.energy = best.energy;
    st.E = best.energy / p.particles();
    st.mu = best.mu;
    st.residual = best.residual;
    st.iterations = best.iterations;
    st.degenerate = (p.N == 2) && (std::abs(std::cos(p.k)) < kDegenerate);
    st.trace = std::move(best.trace);
    return st;
}

ReducedCoefficients reduced_coefficients(const PeriodicPotential& w,
                                         double eps, double g_hat, int N,
                                         int M, int P) {
    if (!(g_hat >= 0.0))
        throw InvalidParameter("reduced_coefficients: g_hat must be >= 0");
    WannierBasis basis = build_wannier(w, eps, N, M, P);
    Overlaps q = overlaps(basis);
    ReducedCoefficients out;
    out.lambda_hat1 =
        std::accumulate(basis.eigenvalues.begin(), basis.eigenvalues.end(),
                        0.0) /
        double(N);
    out.tau = hopping_from_band(w, eps, 64, M).tau;
    out.U = g_hat * q.q4;
    out.tau_hat = g_hat * q.q31;
    return out;
}

ReducedMinimum minimize_reduced(const ReducedCoefficients& coeffs, int N,
                                int order) {
    if (N < 1) throw InvalidParameter("minimize_reduced: N must be >= 1");
    if (order != 1 && order != 2)
        throw InvalidParameter("minimize_reduced: order must be 1 or 2");
    if (!(coeffs.U >= 0.0))
        throw InvalidParameter("minimize_reduced: U must be >= 0");

    ReducedMinimum out;
    if (order == 1) {
        out.m = coeffs.lambda_hat1 + coeffs.U / double(N);
        out.c.assign(N, cplx(1.0 / std::sqrt(double(N)), 0.0));
        return out;
    }
    if (!(coeffs.tau >= 0.0))
        throw InvalidParameter("minimize_reduced: tau must be >= 0");
    DNLSProblem p;
    p.tau = 0.5 * coeffs.tau;  // band form -tau Re sum c conj(c_+): half bond
    p.I = coeffs.U;
    p.nu = 1.0 / double(N);
    p.N = N;
    p.k = 0.0;
    DNLSState st = minimize_dnls(p);
    out.m = coeffs.lambda_hat1 + st.energy;
    out.c = std::move(st.c);
    return out;
}

} // namespace latbec
