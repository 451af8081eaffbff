#pragma once

#include <vector>

#include "pdmspec/recursion.hpp"

namespace pdmspec {

struct StateNotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform radial grid for the shooting integration.
struct RadialGrid {
    double r_min = 0.0;
    double r_max = 0.0;
    int points = 0;

    double step() const { return (r_max - r_min) / (points - 1); }
    double r(int i) const { return r_min + i * step(); }
};

/// Coefficient of the reduced equation chi'' = W(r; E) chi obtained from
/// the substitution psi = chi sqrt(m):
///   W = l(l+1)/r^2 + (3/4 + ag + a + g) Q^2 - ((1 + a + g)/2) P
///       + 2 m (V - E) / hbar^2.
double effective_w(const MassModel& mass, const PotentialModel& pot, const AmbiguitySet& amb,
                   int l, double E, double r, double hbar = 1.0);

/// Places the outer boundary past the outer classical turning point for
/// the trial energy; r_min = 1e-6 * r0.
RadialGrid default_grid(const MassModel& mass, const PotentialModel& pot, const AmbiguitySet& amb,
                        int l, double E_trial, double r0, int points = 48001, double hbar = 1.0);

struct ShootingResult {
    double energy = 0.0;
    int nodes = 0;
    RadialGrid grid;
};

/// Exact bound-state eigenvalue by Numerov shooting: node-count bisection
/// brackets the state with n_r nodes, then log-derivative matching at the
/// grid point nearest r0 refines it.  E_guess seeds the bracket (widened
/// geometrically on failure).
ShootingResult numerov_eigenvalue(const MassModel& mass, const PotentialModel& pot,
                                  const AmbiguitySet& amb, const QuantumNumbers& qn,
                                  double E_guess, double r0, int points = 48001);

/// Node count of the matched wave function at the given energy.
int count_nodes(const MassModel& mass, const PotentialModel& pot, const AmbiguitySet& amb, int l,
                double E, const RadialGrid& grid, double hbar = 1.0);

/// Order-by-order Laurent-series solution of the Riccati hierarchy.  Each
/// order is assembled termwise with series algebra and solved linearly for
/// the unknown coefficients and E_k; no collected index formula is used,
/// which makes this an independent check of the correction table.
std::vector<double> riccati_series_solve(const ClassicalPoint& cp, const CentrifugalSplit& split,
                                         const TruncatedSeries& m_series,
                                         const TruncatedSeries& f_series,
                                         const QuantumNumbers& qn, int K);

}  // namespace pdmspec
