#pragma once

#include <vector>

#include "latticebec/potential.hpp"

namespace latbec {

// Converged state of the transverse reduced problem: minimize
//   E_B(psi) = 2 pi int ( 1/2 psi'^2 + 1/2 omega^2 r^2 psi^2
//                          + g_tilde psi^4 ) r dr
// over real radial states with 2 pi int psi^2 r dr = 1, on the vertex grid
// r_i = i R_max/(P-1).
struct RadialState {
    double r_max = 0.0;
    double omega_perp = 0.0;
    double g_tilde = 0.0;
    std::vector<double> r;
    std::vector<double> psi;
    double energy = 0.0;
    double mu = 0.0;
    double residual = 0.0;
    int iterations = 0;
    std::vector<double> trace;  // energy of every accepted iterate
};

// Effective transverse coupling g * int phi_1^4.
double tildeg(double g, double phi1_l4);

// Harmonic-regime law g * pi^{-1/2} w''(0)^{1/4} eps^{-1/2} for the same
// quantity, exposed for regime classification and cross-checks.  This is the
// constant quoted with the law; the Gaussian quartic integral itself carries
// an extra 2^{-1/2} (see HarmonicPrediction::l4), so expect a sqrt(2) gap
// against tildeg(g, measured integral).
double tildeg_asymptotic(double g, const PeriodicPotential& w, double eps);

// Energy of a radial grid function.  psi' is centered in the interior,
// zero at r = 0 (Neumann symmetry) and one-sided at r = R_max; integrals
// are trapezoid sums against 2 pi r dr, whose r = 0 Jacobian zero removes
// any axis singularity.
double energy_b(const std::vector<double>& psi, double r_max,
                double omega_perp, double g_tilde);

// Euclidean gradient of the discrete energy_b with respect to the grid
// values, for finite-difference validation and the solver.
std::vector<double> gradient_b(const std::vector<double>& psi, double r_max,
                               double omega_perp, double g_tilde);

struct TransverseBounds {
    RadialState state;
    double m_b = 0.0;              // minimized radial energy (upper bound)
    double lower_universal = 0.0;  // c_TF omega sqrt(g_tilde)
    double lower_rot = 0.0;        // same, scaled by sqrt(1 - Omega^2/omega^2)
    double gap = 0.0;              // m_b - lower_rot
};

// Minimizes the radial energy (rotation acts trivially on real radial
// states, so the result bounds the rotating problem from above) and pairs
// it with the Thomas-Fermi lower bounds for velocity Omega.
TransverseBounds minimize_b(double omega_perp, double g_tilde, double Omega,
                            double tol = 1e-9, int P = 4096,
                            int max_iter = 20000);

}  // namespace latbec
