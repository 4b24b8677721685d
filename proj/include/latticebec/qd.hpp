#pragma once

#include <quadmath.h>

#include <cmath>
#include <cstddef>
#include <vector>

namespace latbec {

// 128-bit scalar used where double roundoff would drown exponentially small
// quantities (hopping elements, Wannier tails).  Everything here is a thin
// veneer over libquadmath so the numeric kernels can be written against a
// single scalar alias.

using qd = __float128;

inline qd qd_sqrt(qd x) { return sqrtq(x); }
inline qd qd_exp(qd x) { return expq(x); }
inline qd qd_log(qd x) { return logq(x); }
inline qd qd_cos(qd x) { return cosq(x); }
inline qd qd_sin(qd x) { return sinq(x); }
inline qd qd_abs(qd x) { return fabsq(x); }
inline double to_double(qd x) { return static_cast<double>(x); }

inline qd qd_pi() {
    static const qd v = acosq(qd(-1));
    return v;
}

// Minimal complex pair for phase-rotation recurrences; std::complex is not
// specialised for __float128.
struct qcomplex {
    qd re{0};
    qd im{0};
};

inline qcomplex qmul(const qcomplex& a, const qcomplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline qcomplex qpolar(qd angle) { return {qd_cos(angle), qd_sin(angle)}; }

inline qd dot(const std::vector<qd>& a, const std::vector<qd>& b) {
    qd s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline qd norm2(const std::vector<qd>& a) { return qd_sqrt(dot(a, a)); }

} // namespace latbec
