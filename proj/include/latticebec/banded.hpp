#pragma once

#include <vector>

#include "latticebec/qd.hpp"

namespace latbec {

// Symmetric banded matrix with Toeplitz off-diagonals: the plane-wave
// discretisation of -1/2 (d/dz + ik)^2 + w/eps^2 has a varying diagonal and
// one constant value per off-diagonal offset.
struct BandedSymQ {
    std::vector<qd> diag;    // n entries
    std::vector<qd> offdiag; // offsets 1..B, constant along each

    int n() const { return static_cast<int>(diag.size()); }
    int bandwidth() const { return static_cast<int>(offdiag.size()); }

    void apply(const std::vector<qd>& x, std::vector<qd>& y) const;
};

// LU factorisation with partial pivoting of (A - sigma I) for a banded A,
// LAPACK gbtrf-style column storage with fill-in space.  Sized for the
// inverse-iteration solves used by the band refinement; n ~ a few hundred.
class BandLUQ {
  public:
    BandLUQ(const BandedSymQ& A, qd sigma);

    // In-place solve of (A - sigma I) x = b.
    void solve(std::vector<qd>& b) const;

    bool near_singular() const { return near_singular_; }

  private:
    int n_;
    int kl_;
    int kw_; // widened upper bandwidth kl + ku
    int rows_;
    std::vector<qd> ab_; // column-major: ab_[j * rows_ + (i - j + kw_)]
    std::vector<int> piv_;
    bool near_singular_ = false;

    qd& at(int i, int j) { return ab_[static_cast<std::size_t>(j) * rows_ + (i - j + kw_)]; }
    const qd& at(int i, int j) const {
        return ab_[static_cast<std::size_t>(j) * rows_ + (i - j + kw_)];
    }
};

struct RefinedPairQ {
    qd lambda;
    std::vector<qd> v; // unit norm
    qd residual;       // ||A v - lambda v||
};

// Inverse iteration at a fixed shift (from a double-precision seed), pushing
// an approximate eigenpair to quad-precision accuracy.
RefinedPairQ refine_eigenpair(const BandedSymQ& A, qd sigma,
                              const std::vector<qd>& seed, int iters = 4);

} // namespace latbec
