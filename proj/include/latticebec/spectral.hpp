#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "latticebec/banded.hpp"
#include "latticebec/potential.hpp"
#include "latticebec/qd.hpp"

namespace latbec {

// Plane-wave discretisation of the Floquet fibre
//   H_{z,k} = -1/2 (d/dz + ik)^2 + w(z)/eps^2   on L^2(R/TZ)
// in the orthonormal basis e_n(z) = e^{i 2 pi n z/T}/sqrt(T), n = -M..M.
// For the even potentials handled here the matrix is real symmetric with a
// varying diagonal and one constant value per off-diagonal offset.
struct AssembledOperator {
    double T = 1.0;
    double eps = 0.0;
    double k = 0.0;
    int M = 0;
    std::vector<double> diag;    // 2M+1 entries, diag[i] with n = i - M
    std::vector<double> offdiag; // offsets 1..B

    int dim() const { return 2 * M + 1; }
    Eigen::MatrixXd dense() const;
    BandedSymQ banded_q() const;
};

AssembledOperator assemble(const PeriodicPotential& w, double eps, double k,
                           int M = 128);

struct EigsResult {
    std::vector<double> values;    // ascending
    Eigen::MatrixXd vectors;       // column j = plane-wave coefficients
    std::vector<double> residuals; // ||H v - lambda v|| per pair
};

// n lowest eigenpairs; dense solve seeded, then inverse-iteration refined so
// every returned residual is < 1e-9 even at M = 128 where ||H|| ~ 3e5.
EigsResult lowest_eigs(const AssembledOperator& H, int n);

// Periodic part u(z) = (1/sqrt(T)) sum_n c_n e^{i 2 pi n z/T} sampled on the
// uniform period grid z_i = -T/2 + i T/P, i = 0..P-1.
std::vector<std::complex<double>>
eval_periodic_part(const AssembledOperator& H, const Eigen::VectorXd& coeffs,
                   int P);

struct BandStructure {
    double T = 1.0;
    double eps = 0.0;
    int M = 0;
    std::vector<double> k;                   // n_k values in [0, 2 pi/T)
    std::vector<std::vector<double>> bands;  // [band][ik]
};

// Bands lambda_1..lambda_{n_bands} on the uniform k-grid k_m = 2 pi m/(n_k T),
// m = 0..n_k-1 (endpoint excluded).
BandStructure band_structure(const PeriodicPotential& w, double eps, int n_k,
                             int n_bands, int M = 128);

// Fourier coefficients a(ell T) = (T/2pi) int e^{-i ell k T} lambda(k) dk of a
// band sampled on the uniform grid (endpoint excluded); cosine transform since
// the band is even in k.
std::vector<double> band_fourier(const std::vector<double>& band_samples,
                                 int L);

struct NTLevel {
    double value;
    int ell;  // Floquet index, k_ell = 2 pi ell/(N T)
    int band;
};

// Spectrum of the NT-periodic problem: union of the Floquet spectra at
// k_ell = 2 pi ell/(N T), ell = 0..N-1, sorted ascending, first `count`.
std::vector<NTLevel> nt_spectrum(const PeriodicPotential& w, double eps, int N,
                                 int count, int M = 128);

// ---- quad-precision band-1 path ------------------------------------------
// Assembled directly in 128-bit arithmetic so that exponentially small
// k-variation (bandwidth ~ tau) survives; a double-precision assembly would
// bury tau(eps = 0.02) ~ 1e-17 under rounding of the matrix entries.

struct BandPointQ {
    qd lambda;
    std::vector<qd> c; // real plane-wave coefficients, unit norm
    qd residual;
    double lambda_above; // next eigenvalue (double precision, gap checks)
};

BandPointQ lowest_pair_q(const PeriodicPotential& w, double eps, qd k, int M,
                         int band = 1);

// lambda_1 on the n_k-point grid, exploiting lambda(k) = lambda(2 pi/T - k).
std::vector<qd> band1_samples_q(const PeriodicPotential& w, double eps,
                                int n_k, int M);

struct HoppingBand {
    double tau;  // -a(T)
    double a0;
    double a1;
    double a2;
    int n_k;
};

// Nearest-neighbour hopping from the band-1 Fourier coefficient a(T).
HoppingBand hopping_from_band(const PeriodicPotential& w, double eps,
                              int n_k = 64, int M = 128);

} // namespace latbec
