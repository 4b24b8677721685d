#pragma once

#include <limits>
#include <string>
#include <vector>

namespace latbec {

// Full physical parameter set of the three-dimensional problem.
struct PhysicalParams {
    double g = 0.0;           // scattering strength, >= 0
    double omega_perp = 1.0;  // transverse frequency, > 0
    double Omega = 0.0;       // rotation speed, 0 <= Omega < omega_perp
    double epsilon = 0.1;     // lattice semi-classical parameter, > 0
    double T = 1.0;           // lattice period, > 0
    int N = 1;                // number of wells, >= 1

    double delta_perp() const { return omega_perp - Omega; }
};

// Transverse Landau-type level E_{j,k} = omega_perp + (omega_perp - Omega) j
// + (omega_perp + Omega) k; the ground state omega_perp does not depend on
// the rotation and the gap is delta_perp.
double transverse_spectrum(const PhysicalParams& p, int j, int k);

// One asymptotic condition of the form "lhs << rhs" (satisfied when
// lhs <= rho rhs) or "lhs <= c" (rhs is the constant itself).
struct ConditionRow {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs/rhs
    bool much_less = true;
    bool satisfied = false;
};

struct UniversalBounds {
    double lower = 0.0;
    double upper = 0.0;
    double i_n = 0.0;
};

struct RegimeReport {
    double rho = 0.1;
    double c = 10.0;
    std::vector<ConditionRow> conditions;
    std::string regime;        // QL, A-WI, A-TF, B-WI, B-TF, unclassified
    char route = '-';          // 'Q', 'A', 'B' or '-'
    std::string order_formula; // scaling of the reduced minimum (or of E)
    double order_value = 0.0;  // NaN when the order needs spectral data
    std::string m_a_source;    // "measured", "predicted" or "unavailable"
    UniversalBounds bounds{};  // NaN until filled from spectral data
};

// Evaluates every named condition and selects the first matching regime in
// the order QL, A-WI, A-TF, B-WI, B-TF (the quasi-linear statement is the
// coarsest and wins whenever it applies, cf. the g = 0 case).  "a << b" is
// operationalized as a <= rho b; the "a <= c" conditions, whose constant is
// otherwise unquantified, use c (default 1/rho, so that the weak-interaction
// windows close exactly where the converse Thomas-Fermi conditions open).  The rotation-stability
// rows (m_A/delta_perp and g (2 omega - Omega) m_A delta_perp^{-3/2}) are
// evaluated with measured_m_a when supplied, else with the selected regime's
// predicted order; m_a_source records which.
RegimeReport classify(const PhysicalParams& p, double rho = 0.1,
                      double c = 0.0, double measured_m_a =
                          std::numeric_limits<double>::quiet_NaN());

// lambda_1z + omega_perp <= E <= lambda_1z + omega_perp + I_N with
// I_N = g omega_perp/(2 N pi) int phi_1^4.
UniversalBounds universal_bounds(const PhysicalParams& p, double lambda1z,
                                 double phi1_l4);

// Predicted total energy from a reduced-model minimum: route 'A' gives
// omega_perp + m, route 'B' gives lambda_1z + m.  Throws InvariantViolation
// when the composition leaves the universal bounds.
double compose(const PhysicalParams& p, char route, double m, double lambda1z,
               double phi1_l4);

} // namespace latbec
