#pragma once

#include <complex>
#include <string>
#include <vector>

#include "latticebec/potential.hpp"

namespace latbec {

// Discrete model on N sites with hopping tau, on-site interaction I and the
// Floquet wrap c_{N+1} = e^{ikN} c_1.  nu = N_c/N is the filling, so the
// normalization reads sum |c_j|^2 = nu N.
struct DNLSProblem {
    double tau = 0.0;
    double I = 0.0;
    double nu = 1.0;
    int N = 1;
    double k = 0.0;

    double particles() const { return nu * double(N); }
};

struct DNLSState {
    std::vector<std::complex<double>> c;
    double energy = 0.0;   // H^{N,k}(c)
    double E = 0.0;        // energy per particle
    double mu = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool degenerate = false;  // cos k = 0: the relative phases are free
    std::vector<double> trace;
};

struct DNLSBranch {
    std::string label;
    std::vector<std::complex<double>> c;
    double mu = 0.0;
    double E = 0.0;
    bool degenerate = false;
};

// H^{N,k}(c) = -tau sum_j (conj(c_j) c_{j+1} + c_j conj(c_{j+1})) + I sum |c_j|^4,
// the last bond wrapping through e^{ikN}.  Plain evaluator, any c of size N.
double energy_dnls(const DNLSProblem& p,
                   const std::vector<std::complex<double>>& c);

// Euclidean gradient of energy_dnls with respect to (Re c_j, Im c_j), packed
// as the complex vector 2 dH/d(conj c_j); critical points satisfy G = 2 mu c.
std::vector<std::complex<double>> gradient_dnls(
    const DNLSProblem& p, const std::vector<std::complex<double>>& c);

// All critical branches known in closed form (N = 1 and N = 2 only):
//   N = 1        "uniform"     E = -2 tau cos k + I nu
//   N = 2        "uniform"     E = -2 tau cos k + I nu
//                "staggered"   E = +2 tau cos k + I nu
//                "imbalanced"  E = tau^2 cos^2 k/(I nu) + 2 I nu,
//                              present iff |tau cos k| <= I nu (and tau cos k,
//                              I both nonzero); the moduli split as
//                              nu +- sqrt(nu^2 - (tau cos k/I)^2)
//                "free-phase"  E = I nu at cos k = 0, any relative phase
// Amplitudes are returned in the original gauge c_j = e^{ikj} g_j.
std::vector<DNLSBranch> closed_branches(const DNLSProblem& p);

// Projected-gradient minimization over the sphere sum |c_j|^2 = nu N with
// multi-start (uniform, staggered, single-site, random); deterministic for
// a fixed seed.  Restarts are independent.  Throws NonConvergence when no
// start converges.
DNLSState minimize_dnls(const DNLSProblem& p, int restarts = 16,
                        double tol = 1e-12, unsigned seed = 20260818u);

// Coefficients of the reduced lattice functionals built from the linear
// problem: lambda_hat1 is the mean of the N lowest Floquet eigenvalues
// (exponentially close to lambda_1), tau the hopping amplitude fitted from
// the lowest band, U = g_hat int psi_0^4 and tau_hat = g_hat int psi_0^3 psi_1
// over the supercell Wannier orbitals.  Needs N >= 3.
struct ReducedCoefficients {
    double lambda_hat1 = 0.0;
    double tau = 0.0;
    double U = 0.0;
    double tau_hat = 0.0;
};

ReducedCoefficients reduced_coefficients(const PeriodicPotential& w,
                                         double eps, double g_hat, int N,
                                         int M = 128, int P = 256);

// Minimum of the reduced functional over sum |c_j|^2 = 1.
//   order 1 (no tunneling):    m = lambda_hat1 + U/N, uniform c
//   order 2 (with tunneling):  lambda_hat1 + min of the induced lattice
//                              problem at k = 0.  The band quadratic form is
//                              -tau Re sum c_j conj(c_{j+1}), half the bond
//                              sum of energy_dnls, so the induced problem
//                              carries hopping tau/2.
struct ReducedMinimum {
    double m = 0.0;
    std::vector<std::complex<double>> c;
};

ReducedMinimum minimize_reduced(const ReducedCoefficients& coeffs, int N,
                                int order);

} // namespace latbec
