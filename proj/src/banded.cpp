#include "latticebec/banded.hpp"

#include <algorithm>

#include "latticebec/errors.hpp"

namespace latbec {

void BandedSymQ::apply(const std::vector<qd>& x, std::vector<qd>& y) const {
    const int N = n();
    const int B = bandwidth();
    y.assign(N, qd(0));
    for (int i = 0; i < N; ++i) y[i] = diag[i] * x[i];
    for (int d = 1; d <= B; ++d) {
        const qd w = offdiag[d - 1];
        for (int i = 0; i + d < N; ++i) {
            y[i] += w * x[i + d];
            y[i + d] += w * x[i];
        }
    }
}

BandLUQ::BandLUQ(const BandedSymQ& A, qd sigma) {
    n_ = A.n();
    kl_ = A.bandwidth();
    kw_ = 2 * kl_;
    rows_ = kl_ + kw_ + 1;
    ab_.assign(static_cast<std::size_t>(n_) * rows_, qd(0));
    piv_.assign(n_, 0);

    for (int j = 0; j < n_; ++j) {
        at(j, j) = A.diag[j] - sigma;
        for (int d = 1; d <= kl_; ++d) {
            if (j - d >= 0) at(j - d, j) = A.offdiag[d - 1];
            if (j + d < n_) at(j + d, j) = A.offdiag[d - 1];
        }
    }

    qd scale = 0;
    for (int j = 0; j < n_; ++j) scale = std::max(scale, qd_abs(A.diag[j]));

    for (int k = 0; k < n_; ++k) {
        const int iend = std::min(k + kl_, n_ - 1);
        int imax = k;
        qd amax = qd_abs(at(k, k));
        for (int i = k + 1; i <= iend; ++i) {
            qd v = qd_abs(at(i, k));
            if (v > amax) {
                amax = v;
                imax = i;
            }
        }
        piv_[k] = imax;
        const int jend = std::min(k + kw_, n_ - 1);
        if (imax != k)
            for (int j = k; j <= jend; ++j) std::swap(at(k, j), at(imax, j));
        qd pivot = at(k, k);
        const qd tiny = scale * qd(1e-280) * qd(1e-280);
        if (qd_abs(pivot) <= tiny) {
            // Exactly singular shift; nudge so inverse iteration can proceed.
            pivot = (pivot >= 0 ? qd(1) : qd(-1)) * scale * qd(1e-60);
            at(k, k) = pivot;
            near_singular_ = true;
        }
        for (int i = k + 1; i <= iend; ++i) {
            qd m = at(i, k) / pivot;
            at(i, k) = m;
            for (int j = k + 1; j <= jend; ++j) at(i, j) -= m * at(k, j);
        }
    }
}

void BandLUQ::solve(std::vector<qd>& b) const {
    if (static_cast<int>(b.size()) != n_)
        throw InvalidParameter("BandLUQ::solve: size mismatch");
    for (int k = 0; k < n_; ++k) {
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
        const int iend = std::min(k + kl_, n_ - 1);
        for (int i = k + 1; i <= iend; ++i) b[i] -= at(i, k) * b[k];
    }
    for (int k = n_ - 1; k >= 0; --k) {
        const int jend = std::min(k + kw_, n_ - 1);
        for (int j = k + 1; j <= jend; ++j) b[k] -= at(k, j) * b[j];
        b[k] /= at(k, k);
    }
}

RefinedPairQ refine_eigenpair(const BandedSymQ& A, qd sigma,
                              const std::vector<qd>& seed, int iters) {
    BandLUQ lu(A, sigma);
    std::vector<qd> v = seed;
    qd nrm = norm2(v);
    if (!(to_double(nrm) > 0))
        throw NumericalFailure("refine_eigenpair: zero seed vector");
    for (auto& x : v) x /= nrm;

    for (int it = 0; it < iters; ++it) {
        lu.solve(v);
        nrm = norm2(v);
        for (auto& x : v) x /= nrm;
    }

    std::vector<qd> Av;
    A.apply(v, Av);
    qd lambda = dot(v, Av);
    qd r2 = 0;
    for (int i = 0; i < A.n(); ++i) {
        qd d = Av[i] - lambda * v[i];
        r2 += d * d;
    }
    return {lambda, std::move(v), qd_sqrt(r2)};
}

} // namespace latbec
