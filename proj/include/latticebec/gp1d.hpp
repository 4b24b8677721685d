#pragma once

#include <limits>
#include <vector>

#include "latticebec/potential.hpp"

namespace latbec {

// Converged state of the longitudinal reduced problem: minimize
//   E_A(phi) = int ( 1/2 |phi'|^2 + w(z)/eps^2 |phi|^2 + g_hat |phi|^4 )
// over real L2-normalized (NT)-periodic functions, on a uniform grid of
// N*P points covering [-NT/2, NT/2).
struct GPState1D {
    double T = 1.0;
    int N = 1;
    std::vector<double> z;
    std::vector<double> phi;
    double energy = 0.0;
    double mu = 0.0;        // int( 1/2 phi'^2 + W phi^2 + 2 g_hat phi^4 )
    double residual = 0.0;  // L2 norm of (H - mu) phi + 2 g_hat phi^3
    int iterations = 0;
    // L2 distance between phi and its one-period translate.  The module does
    // not assert T-periodicity of the minimizer; it only measures it.
    double t_period_deviation = 0.0;
    std::vector<double> trace;  // energy of every accepted iterate
};

// Effective 1d coupling g * omega_perp / (2 pi).
double hatg(double g, double omega_perp);

// Energy of a grid function phi (size N*P) under the discrete functional.
// The derivative is Fourier-spectral on the periodic grid; integrals are
// trapezoid sums, which the uniform periodic grid makes spectrally accurate.
double energy_a(const std::vector<double>& phi, const PeriodicPotential& w,
                double eps, double g_hat, int N);

// L2 gradient of energy_a at phi: 2 H phi + 4 g_hat phi^3 with
// H = -1/2 d^2/dz^2 + w/eps^2 discretized exactly as in energy_a.
std::vector<double> gradient_a(const std::vector<double>& phi,
                               const PeriodicPotential& w, double eps,
                               double g_hat, int N);

// Projected-gradient minimization (Barzilai-Borwein step, backtracking to
// keep the energy non-increasing, renormalization after every step).
// init may be empty (Gaussian comb over the wells) or a grid function of
// size N*P.  Stops when the projected Euler-Lagrange residual drops below
// tol * max(1, |mu|).  Among the N equivalent T-translates of the result,
// returns the one with the largest mass in [-T/2, T/2).
GPState1D minimize_a(const PeriodicPotential& w, double eps, double g_hat,
                     int N, const std::vector<double>& init = {},
                     double tol = 1e-9, int P = 256, int max_iter = 50000);

struct SandwichA {
    double lower = 0.0;   // lambda_1
    double upper = 0.0;   // lambda_1 + g_hat int phi_1^4
    double value = 0.0;   // converged energy
    double single_bound = std::numeric_limits<double>::quiet_NaN();
};

// Checks lambda_1 <= m_A^N <= lambda_1 + g_hat int phi_1^4 with slack 1e-9,
// and, when m_single = m_A(eps, g_hat/N) is supplied, the N-well comparison
// m_A^N <= m_single + 1e-8.  Violations throw InvariantViolation: they mean
// a solver or discretization bug, not physics.
SandwichA sandwich_a(const GPState1D& s, double lambda1z, double g_hat,
                     double phi1_l4,
                     double m_single = std::numeric_limits<double>::quiet_NaN());

}  // namespace latbec
