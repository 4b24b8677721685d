#include "latticebec/quadrature.hpp"

#include <cmath>

#include "latticebec/errors.hpp"

namespace latbec {

namespace {

// Kronrod-15 abscissae on [-1,1] (nonnegative half) and weights, with the
// embedded Gauss-7 weights on the odd-indexed nodes.
constexpr double xk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double k15;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xk[i]);
        fv[14 - i] = f(c + h * xk[i]);
    }
    fv[7] = f(c);
    double k15 = wk[7] * fv[7];
    double g7 = wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        k15 += wk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) g7 += wg[i / 2] * (fv[i] + fv[14 - i]);
    }
    k15 *= h;
    g7 *= h;
    return {k15, std::abs(k15 - g7)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth, int max_depth) {
    PanelResult r = gk15(f, a, b);
    if (r.err <= tol || !(b - a > 0)) return r.k15;
    if (depth >= max_depth) {
        if (r.err > 1e3 * tol)
            throw NonConvergence("adaptive quadrature: panel refinement exhausted");
        return r.k15;
    }
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (!(b >= a)) throw InvalidParameter("integrate: b < a");
    if (a == b) return 0.0;
    return adapt(f, a, b, abs_tol, 0, max_depth);
}

double periodic_trapezoid(const std::vector<double>& values, double h) {
    long double s = 0.0L;
    for (double v : values) s += v;
    return static_cast<double>(s * static_cast<long double>(h));
}

double trapezoid(const std::vector<double>& values, double h) {
    if (values.size() < 2) return 0.0;
    long double s = 0.5L * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
    return static_cast<double>(s * static_cast<long double>(h));
}

} // namespace latbec
