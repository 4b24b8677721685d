#include "latticebec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latticebec/errors.hpp"

namespace latbec {

namespace {
constexpr double pi = std::numbers::pi;

void check_assembly_inputs(const PeriodicPotential& w, double eps, int M) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw InvalidParameter("assemble: eps must be positive");
    if (M < 4) throw InvalidParameter("assemble: M too small");
    int B = static_cast<int>(w.harmonics().size()) - 1;
    if (B > M)
        throw UnsupportedPotential(
            "assemble: potential has more harmonics than plane waves");
}

BandedSymQ assemble_q(const PeriodicPotential& w, qd eps, qd k, int M) {
    const auto& what = w.harmonics();
    const int B = static_cast<int>(what.size()) - 1;
    const qd T = w.period();
    const qd inv_eps2 = qd(1) / (eps * eps);
    BandedSymQ A;
    A.diag.resize(2 * M + 1);
    for (int i = 0; i <= 2 * M; ++i) {
        qd q = k + qd(2) * qd_pi() * qd(i - M) / T;
        A.diag[i] = qd(0.5) * q * q + qd(what[0]) * inv_eps2;
    }
    A.offdiag.resize(B);
    for (int d = 1; d <= B; ++d) A.offdiag[d - 1] = qd(what[d]) * inv_eps2;
    return A;
}

// Double-precision seed for the quad refinement: dense solve of the cast
// matrix, good to ~1e-11 which inverse iteration then squeezes to ~1e-30.
EigsResult dense_seed(const BandedSymQ& A, int n) {
    const int N = A.n();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) H(i, i) = to_double(A.diag[i]);
    for (int d = 1; d <= A.bandwidth(); ++d) {
        double v = to_double(A.offdiag[d - 1]);
        for (int i = 0; i + d < N; ++i) {
            H(i, i + d) = v;
            H(i + d, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success)
        throw NumericalFailure("lowest_eigs: dense eigensolve failed");
    EigsResult r;
    r.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    r.vectors = es.eigenvectors().leftCols(n);
    return r;
}

RefinedPairQ refined_pair(const BandedSymQ& A, double seed_value,
                          const Eigen::VectorXd& seed_vec) {
    std::vector<qd> seed(seed_vec.size());
    for (int i = 0; i < seed_vec.size(); ++i) seed[i] = qd(seed_vec[i]);
    return refine_eigenpair(A, qd(seed_value), seed);
}

} // namespace

Eigen::MatrixXd AssembledOperator::dense() const {
    const int N = dim();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) H(i, i) = diag[i];
    for (std::size_t d = 1; d <= offdiag.size(); ++d)
        for (int i = 0; i + static_cast<int>(d) < N; ++i) {
            H(i, i + d) = offdiag[d - 1];
            H(i + d, i) = offdiag[d - 1];
        }
    return H;
}

BandedSymQ AssembledOperator::banded_q() const {
    BandedSymQ A;
    A.diag.assign(diag.begin(), diag.end());
    A.offdiag.assign(offdiag.begin(), offdiag.end());
    return A;
}

AssembledOperator assemble(const PeriodicPotential& w, double eps, double k,
                           int M) {
    check_assembly_inputs(w, eps, M);
    AssembledOperator H;
    H.T = w.period();
    H.eps = eps;
    H.k = k;
    H.M = M;
    const auto& what = w.harmonics();
    const double inv_eps2 = 1.0 / (eps * eps);
    H.diag.resize(H.dim());
    for (int i = 0; i < H.dim(); ++i) {
        double q = k + 2.0 * pi * static_cast<double>(i - M) / H.T;
        H.diag[i] = 0.5 * q * q + what[0] * inv_eps2;
    }
    H.offdiag.resize(what.size() - 1);
    for (std::size_t d = 1; d < what.size(); ++d)
        H.offdiag[d - 1] = what[d] * inv_eps2;
    return H;
}

EigsResult lowest_eigs(const AssembledOperator& H, int n) {
    if (n < 1 || n > H.dim())
        throw InvalidParameter("lowest_eigs: bad eigenpair count");
    BandedSymQ A = H.banded_q();
    EigsResult r = dense_seed(A, n);
    r.residuals.resize(n);

    std::vector<std::vector<qd>> refined;
    for (int j = 0; j < n; ++j) {
        RefinedPairQ p = refined_pair(A, r.values[j], r.vectors.col(j));
        // Re-orthogonalise inside (near-)degenerate clusters; inverse
        // iteration can land two seeds on the same direction there.
        for (int i = 0; i < j; ++i) {
            if (std::abs(r.values[i] - r.values[j]) >
                1e-6 * (1.0 + std::abs(r.values[j])))
                continue;
            qd ov = dot(refined[i], p.v);
            for (int t = 0; t < A.n(); ++t) p.v[t] -= ov * refined[i][t];
        }
        qd nrm = norm2(p.v);
        if (!(to_double(nrm) > 1e-8))
            throw NumericalFailure("lowest_eigs: degenerate cluster collapse");
        for (auto& x : p.v) x /= nrm;

        std::vector<qd> Av;
        A.apply(p.v, Av);
        qd lambda = dot(p.v, Av);
        qd r2 = 0;
        for (int t = 0; t < A.n(); ++t) {
            qd d = Av[t] - lambda * p.v[t];
            r2 += d * d;
        }
        r.values[j] = to_double(lambda);
        for (int t = 0; t < A.n(); ++t) r.vectors(t, j) = to_double(p.v[t]);
        r.residuals[j] = to_double(qd_sqrt(r2));
        refined.push_back(std::move(p.v));
    }
    return r;
}

std::vector<std::complex<double>>
eval_periodic_part(const AssembledOperator& H, const Eigen::VectorXd& coeffs,
                   int P) {
    if (coeffs.size() != H.dim())
        throw InvalidParameter("eval_periodic_part: coefficient size mismatch");
    if (P < 2) throw InvalidParameter("eval_periodic_part: bad grid");
    std::vector<std::complex<double>> u(P);
    const double norm = 1.0 / std::sqrt(H.T);
    for (int i = 0; i < P; ++i) {
        double z = H.T * (static_cast<double>(i) / P - 0.5);
        std::complex<double> s = 0.0;
        for (int t = 0; t < H.dim(); ++t) {
            double phase = 2.0 * pi * static_cast<double>(t - H.M) * z / H.T;
            s += coeffs[t] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        u[i] = s * norm;
    }
    return u;
}

BandStructure band_structure(const PeriodicPotential& w, double eps, int n_k,
                             int n_bands, int M) {
    if (n_k < 1) throw InvalidParameter("band_structure: n_k must be positive");
    if (n_bands < 1)
        throw InvalidParameter("band_structure: n_bands must be positive");
    BandStructure bs;
    bs.T = w.period();
    bs.eps = eps;
    bs.M = M;
    bs.k.resize(n_k);
    bs.bands.assign(n_bands, std::vector<double>(n_k));
    for (int m = 0; m < n_k; ++m) {
        double k = 2.0 * pi * static_cast<double>(m) / (n_k * bs.T);
        bs.k[m] = k;
        AssembledOperator H = assemble(w, eps, k, M);
        EigsResult r = lowest_eigs(H, n_bands);
        for (int b = 0; b < n_bands; ++b) bs.bands[b][m] = r.values[b];
    }
    return bs;
}

std::vector<double> band_fourier(const std::vector<double>& band_samples,
                                 int L) {
    const int n = static_cast<int>(band_samples.size());
    if (n < 2) throw InvalidParameter("band_fourier: too few samples");
    if (L < 0 || 2 * L >= n)
        throw InvalidParameter("band_fourier: harmonic order exceeds grid");
    std::vector<double> a(L + 1, 0.0);
    for (int j = 0; j <= L; ++j) {
        long double s = 0.0L;
        for (int m = 0; m < n; ++m)
            s += static_cast<long double>(band_samples[m]) *
                 std::cos(2.0 * pi * static_cast<double>(j) * m / n);
        a[j] = static_cast<double>(s / n);
    }
    return a;
}

std::vector<NTLevel> nt_spectrum(const PeriodicPotential& w, double eps, int N,
                                 int count, int M) {
    if (N < 1) throw InvalidParameter("nt_spectrum: N must be positive");
    if (count < 1) throw InvalidParameter("nt_spectrum: count must be positive");
    const int bands = count / N + 2;
    std::vector<NTLevel> all;
    for (int ell = 0; ell < N; ++ell) {
        double k = 2.0 * pi * static_cast<double>(ell) / (N * w.period());
        AssembledOperator H = assemble(w, eps, k, M);
        EigsResult r = lowest_eigs(H, bands);
        for (int b = 0; b < bands; ++b)
            all.push_back({r.values[b], ell, b + 1});
    }
    std::sort(all.begin(), all.end(),
              [](const NTLevel& x, const NTLevel& y) { return x.value < y.value; });
    all.resize(count);
    return all;
}

BandPointQ lowest_pair_q(const PeriodicPotential& w, double eps, qd k, int M,
                         int band) {
    check_assembly_inputs(w, eps, M);
    if (band < 1) throw InvalidParameter("lowest_pair_q: bad band index");
    BandedSymQ A = assemble_q(w, qd(eps), k, M);
    EigsResult seed = dense_seed(A, band + 1);
    RefinedPairQ p = refined_pair(A, seed.values[band - 1],
                                  seed.vectors.col(band - 1));
    return {p.lambda, std::move(p.v), p.residual, seed.values[band]};
}

std::vector<qd> band1_samples_q(const PeriodicPotential& w, double eps,
                                int n_k, int M) {
    if (n_k < 4 || n_k % 2 != 0)
        throw InvalidParameter("band1_samples_q: n_k must be even and >= 4");
    std::vector<qd> lam(n_k);
    const qd T = qd(w.period());
    for (int m = 0; m <= n_k / 2; ++m) {
        qd k = qd(2) * qd_pi() * qd(m) / (qd(n_k) * T);
        lam[m] = lowest_pair_q(w, eps, k, M).lambda;
    }
    for (int m = n_k / 2 + 1; m < n_k; ++m) lam[m] = lam[n_k - m];
    return lam;
}

HoppingBand hopping_from_band(const PeriodicPotential& w, double eps, int n_k,
                              int M) {
    w.require_well();
    std::vector<qd> lam = band1_samples_q(w, eps, n_k, M);
    const int n = n_k;
    qd a[3] = {0, 0, 0};
    for (int j = 0; j < 3; ++j) {
        qd s = 0;
        for (int m = 0; m < n; ++m)
            s += lam[m] * qd_cos(qd(2) * qd_pi() * qd(j) * qd(m) / qd(n));
        a[j] = s / qd(n);
    }
    HoppingBand hb;
    hb.tau = to_double(-a[1]);
    hb.a0 = to_double(a[0]);
    hb.a1 = to_double(a[1]);
    hb.a2 = to_double(a[2]);
    hb.n_k = n_k;
    return hb;
}

} // namespace latbec
