#include "latticebec/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "latticebec/errors.hpp"
#include "latticebec/quadrature.hpp"

namespace latbec {

namespace {
constexpr double pi = std::numbers::pi;
}

PeriodicPotential::PeriodicPotential(Kind kind, double T,
                                     std::vector<double> coeffs)
    : kind_(kind), T_(T), a_(std::move(coeffs)) {
    if (!(T_ > 0.0) || !std::isfinite(T_))
        throw InvalidPotential("potential: period must be positive");
    if (kind_ == Kind::sin2) {
        a_ = {0.5, -0.5};
    }
    if (a_.empty()) throw InvalidPotential("potential: empty coefficient list");
    for (double c : a_)
        if (!std::isfinite(c))
            throw InvalidPotential("potential: non-finite coefficient");

    double at0 = 0.0;
    for (double c : a_) at0 += c;
    if (std::abs(at0) > 1e-12)
        throw InvalidPotential("potential: w(0) != 0");

    // Nonnegativity scan; the construction already forces evenness.
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
        double z = T_ * (static_cast<double>(i) / n - 0.5);
        if (eval(z) < -1e-12)
            throw InvalidPotential("potential: negative value at z = " +
                                   std::to_string(z));
    }

    what_.assign(a_.size(), 0.0);
    what_[0] = a_[0];
    for (std::size_t m = 1; m < a_.size(); ++m) what_[m] = 0.5 * a_[m];
}

PeriodicPotential PeriodicPotential::sinusoidal(double T) {
    return PeriodicPotential(Kind::sin2, T, {});
}

PeriodicPotential PeriodicPotential::fourier(double T,
                                             std::vector<double> coeffs) {
    return PeriodicPotential(Kind::fourier, T, std::move(coeffs));
}

double PeriodicPotential::eval(double z) const {
    if (kind_ == Kind::sin2) {
        double s = std::sin(pi * z / T_);
        return s * s;
    }
    double w = 0.0;
    for (std::size_t m = a_.size(); m-- > 1;)
        w += a_[m] * std::cos(2.0 * pi * static_cast<double>(m) * z / T_);
    return w + a_[0];
}

double PeriodicPotential::curvature() const {
    if (kind_ == Kind::sin2) return 2.0 * pi * pi / (T_ * T_);
    double c = 0.0;
    for (std::size_t m = 1; m < a_.size(); ++m) {
        double q = 2.0 * pi * static_cast<double>(m) / T_;
        c -= a_[m] * q * q;
    }
    return c;
}

void PeriodicPotential::require_well() const {
    double gamma = curvature();
    if (!(gamma > 1e-12))
        throw InvalidPotential("potential: degenerate well, w''(0) <= 0");
    const int n = 2048;
    for (int i = 1; i < n; ++i) {
        double z = 0.5 * T_ * static_cast<double>(i) / n;
        double floor = std::min(0.25 * gamma * z * z, 1e-6 * gamma * T_ * T_);
        if (eval(z) < floor)
            throw InvalidPotential(
                "potential: barrier dips toward zero away from the site");
    }
}

std::string PeriodicPotential::describe() const {
    std::ostringstream os;
    if (kind_ == Kind::sin2) {
        os << "sin^2(pi z/" << T_ << ")";
    } else {
        os << "cosine series, " << a_.size() << " coefficients, period " << T_;
    }
    return os.str();
}

double agmon_action(const PeriodicPotential& w, double abs_tol) {
    w.require_well();
    const double T = w.period();
    auto f = [&](double z) { return std::sqrt(std::max(0.0, 2.0 * w.eval(z))); };
    // sqrt(w) has a |z| kink at the site; integrate the halves separately.
    return integrate(f, -0.5 * T, 0.0, 0.5 * abs_tol) +
           integrate(f, 0.0, 0.5 * T, 0.5 * abs_tol);
}

TunnelingPrefactor tunneling_prefactor(const PeriodicPotential& w,
                                       double abs_tol) {
    w.require_well();
    const double T = w.period();
    const double gamma = w.curvature();
    const double slope = std::sqrt(2.0 / gamma);
    const double r0 = T / 8.0;

    auto regular = [&](double z) {
        return 1.0 / std::sqrt(w.eval(z)) - slope / z;
    };
    auto plain = [&](double z) { return 1.0 / std::sqrt(w.eval(z)); };

    double A = integrate(regular, 0.0, r0, 0.5 * abs_tol) +
               integrate(plain, r0, 0.5 * T, 0.5 * abs_tol) +
               slope * std::log(r0);
    double c_tau =
        std::pow(gamma, 0.75) / std::sqrt(pi) * std::exp(std::sqrt(0.5 * gamma) * A);
    double c_tau_variant = std::pow(2.0, 0.75) / std::sqrt(pi) * std::exp(A);
    return {A, c_tau, c_tau_variant};
}

} // namespace latbec
