#pragma once

#include <complex>
#include <vector>

#include "latticebec/potential.hpp"
#include "latticebec/qd.hpp"

namespace latbec {

// Lowest-band Bloch eigenfunctions phi_1(z, k_ell) on the Floquet grid
// k_ell = 2 pi ell/(N T), sampled over one period z_i = -T/2 + i T/P.
struct BlochFamily {
    double T = 1.0;
    int N = 0;
    std::vector<double> k;
    std::vector<double> z;
    std::vector<std::vector<std::complex<double>>> phi; // [ell][i]
};

// Raw family straight from the eigensolver (per-k phases arbitrary).
BlochFamily bloch_family(const PeriodicPotential& w, double eps, int N,
                         int M = 128, int P = 256);

// Parallel-transport gauge along the k-grid, global phase fixed at k = 0
// (real positive at the modulus maximum), then conjugation symmetry
// phi(z, k) = conj(phi(z, -k)) enforced by symmetrising +-k pairs.
// Throws GaugeFailure when consecutive overlaps vanish (band crossing).
BlochFamily gauge_fix(const BlochFamily& raw);

// N real orthonormal (NT)-periodic orbitals psi_j, j = 0..N-1, psi_j centred
// at jT, on the supercell grid z_s = -NT/2 + s T/P, s = 0..NP-1.
//
// The orbitals are synthesised in 128-bit arithmetic from independently
// refined Bloch eigenvectors whose gauge is fixed by the sign of
// sum_n c_n (= sign of u(0), consistent across the grid for a well at z=0);
// the quad copies are kept because the cross overlaps q31, q22 and the
// hopping matrix element sit at e^{-S/eps} where double synthesis is pure
// cancellation noise.
struct WannierBasis {
    double T = 1.0;
    double eps = 0.0;
    int N = 0;
    int P = 0;
    int M = 0;
    std::vector<double> z;
    std::vector<std::vector<double>> psi;    // [j][s]
    std::vector<double> eigenvalues;         // lambda_1(k_ell), ell = 0..N-1
    double gap = 0.0;                        // min_ell lambda_2 - max_ell lambda_1
    double max_imag = 0.0;                   // realness diagnostic
    std::vector<std::vector<qd>> psi_q;      // [j][s]
    std::vector<std::vector<qd>> dpsi_q;     // [j][s]
};

// Throws IllSeparatedBand when the (N+1)-th NT-eigenvalue is not separated
// (gap < 1e-6) from the first N, e.g. for the free particle.
WannierBasis build_wannier(const PeriodicPotential& w, double eps, int N,
                           int M = 128, int P = 256);

// tau = -a(T) from lowest-band samples on a uniform k-grid (endpoint
// excluded); exact for synthetic trigonometric bands.
double hopping_from_band(const std::vector<double>& band1_samples);

// tau = -<H psi_0, psi_1> = -int(1/2 psi_0' psi_1' + W_eps psi_0 psi_1),
// evaluated in 128-bit arithmetic on the supercell grid.  Needs N >= 3.
double hopping_matrix_element(const WannierBasis& basis,
                              const PeriodicPotential& w, double eps);

struct Overlaps {
    double q4;  // int psi_0^4
    double q31; // int psi_0^3 psi_1
    double q22; // int psi_0^2 psi_1^2
};

// Needs N >= 3 so that psi_0 and psi_1 are genuinely distinct orbitals.
Overlaps overlaps(const WannierBasis& basis);

// int_T |phi_1|^4 for the one-period ground state at k = 0 (the quartic
// overlap of the Bloch ground state itself).
double quartic_phi1(const PeriodicPotential& w, double eps, int M = 128,
                    int P = 1024);

} // namespace latbec
