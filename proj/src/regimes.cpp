#include "latticebec/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latticebec/errors.hpp"

namespace latbec {

namespace {

void check_params(const PhysicalParams& p) {
    if (!std::isfinite(p.g) || p.g < 0.0)
        throw InvalidParameter("g must be finite and >= 0");
    if (!std::isfinite(p.omega_perp) || p.omega_perp <= 0.0)
        throw InvalidParameter("omega_perp must be finite and > 0");
    if (!std::isfinite(p.Omega) || p.Omega < 0.0 || p.Omega >= p.omega_perp)
        throw InvalidParameter("Omega must satisfy 0 <= Omega < omega_perp");
    if (!std::isfinite(p.epsilon) || p.epsilon <= 0.0)
        throw InvalidParameter("epsilon must be finite and > 0");
    if (!std::isfinite(p.T) || p.T <= 0.0)
        throw InvalidParameter("T must be finite and > 0");
    if (p.N < 1) throw InvalidParameter("N must be >= 1");
}

ConditionRow much_less(std::string name, double lhs, double rhs, double rho) {
    ConditionRow r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = lhs / rhs;
    r.much_less = true;
    r.satisfied = lhs <= rho * rhs;
    return r;
}

ConditionRow at_most(std::string name, double lhs, double c) {
    ConditionRow r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = c;
    r.ratio = lhs / c;
    r.much_less = false;
    r.satisfied = lhs <= c;
    return r;
}

} // namespace

double transverse_spectrum(const PhysicalParams& p, int j, int k) {
    check_params(p);
    if (j < 0 || k < 0) throw InvalidParameter("level indices must be >= 0");
    return p.omega_perp + (p.omega_perp - p.Omega) * double(j) +
           (p.omega_perp + p.Omega) * double(k);
}

RegimeReport classify(const PhysicalParams& p, double rho, double c,
                      double measured_m_a) {
    check_params(p);
    if (!std::isfinite(rho) || rho <= 0.0 || rho >= 1.0)
        throw InvalidParameter("rho must lie in (0, 1)");
    if (c == 0.0) c = 1.0 / rho;
    if (!std::isfinite(c) || c <= 0.0)
        throw InvalidParameter("c must be > 0 (or 0 for the default 1/rho)");
    if (!std::isnan(measured_m_a) &&
        (!std::isfinite(measured_m_a) || measured_m_a <= 0.0))
        throw InvalidParameter("measured m_A must be > 0 when supplied");

    const double g = p.g, om = p.omega_perp, eps = p.epsilon;
    const double delta = p.delta_perp();
    const double se = std::sqrt(eps);

    RegimeReport rep;
    rep.rho = rho;
    rep.c = c;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.order_value = nan;
    rep.bounds = {nan, nan, nan};

    auto& rows = rep.conditions;
    rows.push_back(much_less("QLa", g, se, rho));
    rows.push_back(much_less("QLb", g * om * se, 1.0, rho));
    rows.push_back(much_less("AWIa", 1.0, eps * delta, rho));
    rows.push_back(at_most("AWIb", g * om * se, c));
    rows.push_back(much_less("ATFa", 1.0, g * om * se, rho));
    rows.push_back(at_most("ATFb", g * om * eps * eps, c));
    rows.push_back(much_less("ATFc",
                             std::pow(g, 5.0 / 12.0) *
                                 std::pow(eps, -1.0 / 6.0) *
                                 std::pow(om, 5.0 / 12.0),
                             std::pow(delta, 3.0 / 8.0), rho));
    rows.push_back(at_most("BWIa", g / se, c));
    rows.push_back(much_less("BWIb", om * eps, 1.0, rho));
    rows.push_back(much_less("BTFa", se, g, rho));
    rows.push_back(much_less("BTFb", om * std::sqrt(g) * std::pow(eps, 0.75),
                             1.0, rho));
    rows.push_back(much_less("BTFc",
                             std::pow(g, 1.5) * std::pow(eps, 0.25) * om, 1.0,
                             rho));

    auto on = [&rows](const char* name) {
        for (const auto& r : rows)
            if (r.name == name) return r.satisfied;
        return false;
    };

    if (on("QLa") || on("QLb")) {
        rep.regime = "QL";
        rep.route = 'Q';
        rep.order_formula = "lambda_1z + omega_perp";
    } else if (on("AWIa") && on("AWIb")) {
        rep.regime = "A-WI";
        rep.route = 'A';
        rep.order_formula = "1/epsilon";
        rep.order_value = 1.0 / eps;
    } else if (on("ATFa") && on("ATFb") && on("ATFc")) {
        rep.regime = "A-TF";
        rep.route = 'A';
        rep.order_formula = "(g omega_perp / epsilon)^(2/3)";
        rep.order_value = std::pow(g * om / eps, 2.0 / 3.0);
    } else if (on("BWIa") && on("BWIb")) {
        rep.regime = "B-WI";
        rep.route = 'B';
        rep.order_formula = "omega_perp";
        rep.order_value = om;
    } else if (on("BTFa") && on("BTFb") && on("BTFc")) {
        rep.regime = "B-TF";
        rep.route = 'B';
        rep.order_formula = "omega_perp sqrt(g) epsilon^(-1/4)";
        rep.order_value = om * std::sqrt(g) / std::pow(eps, 0.25);
    } else {
        rep.regime = "unclassified";
        rep.route = '-';
        rep.order_formula = "";
    }

    // Rotation-stability rows for route A, with the measured reduced minimum
    // when the caller has one, else the selected regime's predicted order.
    double m_a = nan;
    if (!std::isnan(measured_m_a)) {
        m_a = measured_m_a;
        rep.m_a_source = "measured";
    } else if (rep.route == 'A') {
        m_a = rep.order_value;
        rep.m_a_source = "predicted";
    } else {
        rep.m_a_source = "unavailable";
    }
    if (!std::isnan(m_a)) {
        rows.push_back(much_less("AOmega-a", m_a / delta, 1.0, rho));
        rows.push_back(much_less("AOmega-b",
                                 g * (2.0 * om - p.Omega) * m_a /
                                     std::pow(delta, 1.5),
                                 1.0, rho));
    }
    return rep;
}

UniversalBounds universal_bounds(const PhysicalParams& p, double lambda1z,
                                 double phi1_l4) {
    check_params(p);
    if (!std::isfinite(lambda1z))
        throw InvalidParameter("lambda_1z must be finite");
    if (!std::isfinite(phi1_l4) || phi1_l4 < 0.0)
        throw InvalidParameter("int phi_1^4 must be finite and >= 0");
    UniversalBounds b;
    b.i_n = p.g * p.omega_perp * phi1_l4 /
            (2.0 * double(p.N) * std::numbers::pi);
    b.lower = lambda1z + p.omega_perp;
    b.upper = b.lower + b.i_n;
    return b;
}

double compose(const PhysicalParams& p, char route, double m, double lambda1z,
               double phi1_l4) {
    if (route != 'A' && route != 'B')
        throw InvalidParameter("route must be 'A' or 'B'");
    if (!std::isfinite(m)) throw InvalidParameter("m must be finite");
    const UniversalBounds b = universal_bounds(p, lambda1z, phi1_l4);
    const double e = (route == 'A') ? p.omega_perp + m : lambda1z + m;
    const double slack = 1e-6 * std::max(1.0, std::abs(e));
    if (e < b.lower - slack || e > b.upper + slack)
        throw InvariantViolation("composed energy leaves the universal "
                                 "bounds: E = " + std::to_string(e) +
                                 ", bounds [" + std::to_string(b.lower) +
                                 ", " + std::to_string(b.upper) + "]");
    return e;
}

} // namespace latbec
