#include "latticebec/wannier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latticebec/errors.hpp"
#include "latticebec/spectral.hpp"

namespace latbec {

namespace {
constexpr double pi = std::numbers::pi;

qd eval_q(const PeriodicPotential& w, qd z) {
    const qd T = w.period();
    if (w.kind() == PeriodicPotential::Kind::sin2) {
        qd s = qd_sin(qd_pi() * z / T);
        return s * s;
    }
    const auto& what = w.harmonics();
    qd v = qd(what[0]);
    for (std::size_t m = 1; m < what.size(); ++m)
        v += qd(2.0 * what[m]) * qd_cos(qd(2) * qd_pi() * qd(double(m)) * z / T);
    return v;
}

std::complex<double> inner(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b,
                           double h) {
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s * h;
}

// u(z_s) and the bracket v = e^{-ikz} phi'(z_s) for s = 0..P-1 of the
// supercell grid; both are T-periodic so one period of offsets suffices.
struct FibreSamples {
    std::vector<qcomplex> u;
    std::vector<qcomplex> v;
};

FibreSamples sample_fibre(const std::vector<qd>& c, qd T, qd k, int M, int N,
                          int P) {
    FibreSamples f;
    f.u.assign(P, {0, 0});
    f.v.assign(P, {0, 0});
    const qd inv_sqrtT = qd(1) / qd_sqrt(T);
    const qd two_pi = qd(2) * qd_pi();
    for (int s = 0; s < P; ++s) {
        qd z = T * (qd(double(s)) / qd(double(P)) - qd(double(N)) / qd(2));
        qd theta = two_pi * z / T;
        qcomplex rot = qpolar(theta);
        qcomplex cur = qpolar(qd(double(-M)) * theta);
        qcomplex au{0, 0}, av{0, 0};
        for (int t = 0; t <= 2 * M; ++t) {
            qd qn = k + two_pi * qd(double(t - M)) / T;
            au.re += c[t] * cur.re;
            au.im += c[t] * cur.im;
            // i * cur = (-cur.im, cur.re)
            av.re += c[t] * qn * (-cur.im);
            av.im += c[t] * qn * cur.re;
            cur = qmul(cur, rot);
        }
        f.u[s] = {au.re * inv_sqrtT, au.im * inv_sqrtT};
        f.v[s] = {av.re * inv_sqrtT, av.im * inv_sqrtT};
    }
    return f;
}

} // namespace

BlochFamily bloch_family(const PeriodicPotential& w, double eps, int N, int M,
                         int P) {
    if (N < 1) throw InvalidParameter("bloch_family: N must be positive");
    if (P < 8) throw InvalidParameter("bloch_family: grid too coarse");
    BlochFamily fam;
    fam.T = w.period();
    fam.N = N;
    fam.k.resize(N);
    fam.z.resize(P);
    for (int i = 0; i < P; ++i)
        fam.z[i] = fam.T * (static_cast<double>(i) / P - 0.5);
    fam.phi.resize(N);
    for (int ell = 0; ell < N; ++ell) {
        double k = 2.0 * pi * static_cast<double>(ell) / (N * fam.T);
        fam.k[ell] = k;
        AssembledOperator H = assemble(w, eps, k, M);
        EigsResult r = lowest_eigs(H, 1);
        auto u = eval_periodic_part(H, r.vectors.col(0), P);
        fam.phi[ell].resize(P);
        for (int i = 0; i < P; ++i) {
            double ph = k * fam.z[i];
            fam.phi[ell][i] =
                std::complex<double>(std::cos(ph), std::sin(ph)) * u[i];
        }
    }
    return fam;
}

BlochFamily gauge_fix(const BlochFamily& raw) {
    BlochFamily fam = raw;
    const int N = fam.N;
    const int P = static_cast<int>(fam.z.size());
    const double h = fam.T / P;

    for (int ell = 1; ell < N; ++ell) {
        std::complex<double> o = inner(fam.phi[ell - 1], fam.phi[ell], h);
        if (std::abs(o) < 1e-8)
            throw GaugeFailure(
                "gauge_fix: vanishing overlap between consecutive k points");
        std::complex<double> ph = std::conj(o) / std::abs(o);
        for (auto& v : fam.phi[ell]) v *= ph;
    }

    auto align_real = [&](std::vector<std::complex<double>>& f) {
        int imax = 0;
        for (int i = 1; i < P; ++i)
            if (std::abs(f[i]) > std::abs(f[imax])) imax = i;
        if (std::abs(f[imax]) == 0.0)
            throw GaugeFailure("gauge_fix: zero eigenfunction");
        std::complex<double> ph = std::conj(f[imax]) / std::abs(f[imax]);
        for (auto& v : f) v *= ph;
        return ph;
    };
    std::complex<double> global = align_real(fam.phi[0]);
    for (int ell = 1; ell < N; ++ell)
        for (auto& v : fam.phi[ell]) v *= global;

    auto restrict_real = [&](std::vector<std::complex<double>>& f) {
        align_real(f);
        double n2 = 0.0;
        for (auto& v : f) {
            v = std::complex<double>(v.real(), 0.0);
            n2 += v.real() * v.real();
        }
        n2 *= h;
        if (n2 < 0.25)
            throw GaugeFailure("gauge_fix: self-conjugate fibre is not real");
        for (auto& v : f) v /= std::sqrt(n2);
    };
    restrict_real(fam.phi[0]);
    if (N % 2 == 0 && N > 1) restrict_real(fam.phi[N / 2]);

    for (int ell = 1; 2 * ell < N; ++ell) {
        auto& a = fam.phi[ell];
        auto& b = fam.phi[N - ell];
        double n2 = 0.0;
        for (int i = 0; i < P; ++i) {
            b[i] = 0.5 * (b[i] + std::conj(a[i]));
            n2 += std::norm(b[i]);
        }
        n2 *= h;
        if (n2 < 0.25)
            throw GaugeFailure("gauge_fix: conjugate pair nearly cancels");
        double inv = 1.0 / std::sqrt(n2);
        for (int i = 0; i < P; ++i) {
            b[i] *= inv;
            a[i] = std::conj(b[i]);
        }
    }
    return fam;
}

WannierBasis build_wannier(const PeriodicPotential& w, double eps, int N,
                           int M, int P) {
    if (N < 2) throw InvalidParameter("build_wannier: N must be >= 2");
    if (P < 8) throw InvalidParameter("build_wannier: grid too coarse");

    WannierBasis basis;
    basis.T = w.period();
    basis.eps = eps;
    basis.N = N;
    basis.P = P;
    basis.M = M;

    const qd Tq = basis.T;
    const qd two_pi = qd(2) * qd_pi();

    std::vector<BandPointQ> fibres;
    fibres.reserve(N);
    double lam1_max = -1e300, lam2_min = 1e300;
    for (int ell = 0; ell < N; ++ell) {
        qd k = two_pi * qd(double(ell)) / (qd(double(N)) * Tq);
        BandPointQ bp = lowest_pair_q(w, eps, k, M);
        lam1_max = std::max(lam1_max, to_double(bp.lambda));
        lam2_min = std::min(lam2_min, bp.lambda_above);
        fibres.push_back(std::move(bp));
    }
    basis.gap = lam2_min - lam1_max;
    if (basis.gap < 1e-6)
        throw IllSeparatedBand(
            "build_wannier: first band not separated from the rest");

    // Gauge: real coefficients with sum_n c_n = sqrt(T) u(0) > 0.  For an
    // even potential this reproduces the parallel-transport, conjugation-
    // symmetric gauge exactly (fibres at k and 2pi/T - k become conjugate).
    for (auto& f : fibres) {
        qd s = 0, abs_sum = 0;
        for (qd c : f.c) {
            s += c;
            abs_sum += qd_abs(c);
        }
        if (qd_abs(s) < qd(1e-6) * abs_sum)
            throw GaugeFailure("build_wannier: Bloch function vanishes at the "
                               "well; sign gauge undefined");
        if (s < qd(0))
            for (auto& c : f.c) c = -c;
    }

    const int S = N * P;
    std::vector<qcomplex> psi0(S, {0, 0}), dpsi0(S, {0, 0});
    for (int ell = 0; ell < N; ++ell) {
        qd k = two_pi * qd(double(ell)) / (qd(double(N)) * Tq);
        FibreSamples f = sample_fibre(fibres[ell].c, Tq, k, M, N, P);
        for (int s = 0; s < S; ++s) {
            qd z = Tq * (qd(double(s)) / qd(double(P)) - qd(double(N)) / qd(2));
            qcomplex ph = qpolar(k * z);
            const qcomplex& u = f.u[s % P];
            const qcomplex& v = f.v[s % P];
            qcomplex pu = qmul(ph, u), pv = qmul(ph, v);
            psi0[s].re += pu.re;
            psi0[s].im += pu.im;
            dpsi0[s].re += pv.re;
            dpsi0[s].im += pv.im;
        }
    }
    const qd invN = qd(1) / qd(double(N));
    qd max_im = 0;
    std::vector<qd> p0(S), d0(S);
    for (int s = 0; s < S; ++s) {
        p0[s] = psi0[s].re * invN;
        d0[s] = dpsi0[s].re * invN;
        max_im = std::max(max_im, qd_abs(psi0[s].im * invN));
    }
    basis.max_imag = to_double(max_im);

    const qd h = Tq / qd(double(P));
    qd nrm2 = 0;
    for (int s = 0; s < S; ++s) nrm2 += p0[s] * p0[s];
    nrm2 *= h;
    if (std::abs(to_double(nrm2) - 1.0) > 1e-8)
        throw InvariantViolation("build_wannier: orbital norm drift");

    basis.z.resize(S);
    for (int s = 0; s < S; ++s)
        basis.z[s] = basis.T * (static_cast<double>(s) / P - 0.5 * N);
    basis.psi_q.resize(N);
    basis.dpsi_q.resize(N);
    basis.psi.resize(N);
    for (int j = 0; j < N; ++j) {
        basis.psi_q[j].resize(S);
        basis.dpsi_q[j].resize(S);
        basis.psi[j].resize(S);
        for (int s = 0; s < S; ++s) {
            int src = ((s - j * P) % S + S) % S;
            basis.psi_q[j][s] = p0[src];
            basis.dpsi_q[j][s] = d0[src];
            basis.psi[j][s] = to_double(p0[src]);
        }
    }
    basis.eigenvalues.resize(N);
    for (int ell = 0; ell < N; ++ell)
        basis.eigenvalues[ell] = to_double(fibres[ell].lambda);
    return basis;
}

double hopping_from_band(const std::vector<double>& band1_samples) {
    return -band_fourier(band1_samples, 1)[1];
}

double hopping_matrix_element(const WannierBasis& basis,
                              const PeriodicPotential& w, double eps) {
    if (basis.N < 3)
        throw InvalidParameter(
            "hopping_matrix_element: need N >= 3 distinct orbitals");
    const int S = basis.N * basis.P;
    const qd Tq = basis.T;
    const qd h = Tq / qd(double(basis.P));
    const qd inv_eps2 = qd(1) / (qd(eps) * qd(eps));
    qd acc = 0;
    for (int s = 0; s < S; ++s) {
        qd z = Tq * (qd(double(s)) / qd(double(basis.P)) -
                     qd(double(basis.N)) / qd(2));
        acc += qd(0.5) * basis.dpsi_q[0][s] * basis.dpsi_q[1][s] +
               eval_q(w, z) * inv_eps2 * basis.psi_q[0][s] * basis.psi_q[1][s];
    }
    return -to_double(acc * h);
}

Overlaps overlaps(const WannierBasis& basis) {
    if (basis.N < 3)
        throw InvalidParameter("overlaps: need N >= 3 distinct orbitals");
    const int S = basis.N * basis.P;
    const qd h = qd(basis.T) / qd(double(basis.P));
    qd q4 = 0, q31 = 0, q22 = 0;
    for (int s = 0; s < S; ++s) {
        qd a = basis.psi_q[0][s], b = basis.psi_q[1][s];
        qd a2 = a * a;
        q4 += a2 * a2;
        q31 += a2 * a * b;
        q22 += a2 * b * b;
    }
    return {to_double(q4 * h), to_double(q31 * h), to_double(q22 * h)};
}

double quartic_phi1(const PeriodicPotential& w, double eps, int M, int P) {
    AssembledOperator H = assemble(w, eps, 0.0, M);
    EigsResult r = lowest_eigs(H, 1);
    auto u = eval_periodic_part(H, r.vectors.col(0), P);
    long double s = 0.0L;
    for (const auto& v : u) {
        long double m2 = std::norm(v);
        s += m2 * m2;
    }
    return static_cast<double>(s * (H.T / P));
}

} // namespace latbec
