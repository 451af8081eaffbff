#pragma once

#include <map>
#include <optional>
#include <utility>

#include "pdmspec/recursion.hpp"

namespace pdmspec {

/// Coulomb potential V = -q/r with the power-law mass
/// m(r) = m_c / (1 + a r)^lambda.
struct PowerLawCoulomb {
    double m_c = 0.5;
    double a = 0.0;
    double lambda = 0.0;
    double q = 1.0;

    MassModel mass() const { return MassModel::power_law(m_c, a, lambda); }
    PotentialModel potential() const { return PotentialModel::coulomb(q); }
};

/// Geometric quantities of the circular orbit: t = 1 + a r0,
/// s = t^lambda - (lambda/2)(t^lambda - t^(lambda-1)), and the
/// constant-mass reference energy E_B = -m_c q^2 / (2 hbar^2 n^2).
struct OrbitGeometry {
    double r0 = 0.0;
    double t = 0.0;
    double s = 0.0;
    double E_B = 0.0;
};

OrbitGeometry orbit_geometry(const PowerLawCoulomb& params, const QuantumNumbers& qn);

/// Closed-form frequency at the orbit,
/// omega^2 = m_c q t^(-lambda-1) [a^2 r0^2 (2-lambda)(1-lambda)
///           + 2 a r0 (2-lambda) + 2] / (r0 (2 + (2-lambda) a r0)).
double closed_frequency(const PowerLawCoulomb& params, double r0);

/// Closed-form zeroth energy and first correction:
///   E0 = -q/r0 + Lambda^2 t^lambda / (2 m_c r0^2),
///   E1 = (2 n_r + 1) t^lambda (omega r0 - Lambda) / (2 m_c r0^2).
std::pair<double, double> closed_e0_e1(const PowerLawCoulomb& params, const QuantumNumbers& qn);

/// The n_r-dependent part of the second correction,
/// (t^(lambda-2) / (16 m_c omega^2 r0^4)) (n_r^2 + n_r) g.  The remaining
/// additive piece depends on the principal number only and cancels in
/// same-n differences, which is the only way this value is compared.
double e2_nr_part(const PowerLawCoulomb& params, const QuantumNumbers& qn);

enum class LevelOrdering {
    normal,     // E(n_r, l) < E(n_r - 1, l + 1), lambda > 0
    inverted,   // E(n_r, l) > E(n_r - 1, l + 1), lambda < 0
    degenerate  // lambda = 0 or a = 0
};

/// Predicted ordering of same-n neighbours from the sign of lambda,
/// cross-checked against the sign of (omega r0 / Lambda - 1).
LevelOrdering level_order(const PowerLawCoulomb& params, const QuantumNumbers& qn);

/// Same-n level-spacing report for the triple
/// (n_r - 1, l + 1), (n_r, l), (n_r + 1, l - 1).
struct SpacingReport {
    int n = 0;
    int n_r = 0;
    double b1 = 0.0;
    double b2 = 0.0;
    std::optional<double> ratio_closed;     // from the closed b1/b2 forms
    std::optional<double> ratio_expansion;  // from third-order partial sums
    LevelOrdering ordering = LevelOrdering::degenerate;
    bool degenerate_spacing = false;
};

/// Requires n >= 3 and 1 <= n_r <= n - 2 so the three levels exist.
SpacingReport spacing_ratio(const PowerLawCoulomb& params, int n, int n_r, double hbar = 1.0);

}  // namespace pdmspec
