#pragma once

#include "pdmspec/models.hpp"
#include "pdmspec/series.hpp"

namespace pdmspec {

/// Classical-limit data at the stable circular orbit: radius, zeroth
/// energy, oscillation frequency and the leading log-derivative series
/// C_0(x) = x * sum_i c0[i] x^i.
struct ClassicalPoint {
    double r0 = 0.0;
    double E0 = 0.0;
    double omega = 0.0;
    TruncatedSeries shape = TruncatedSeries::zero(0);  // [1, a_1, a_2, ...]
    TruncatedSeries c0 = TruncatedSeries::zero(0);     // C_i^0
    bool multiple_stable_roots = false;
};

/// Radius of the stable circular orbit:
/// m(r0) r0^3 V'(r0) = Lambda^2 (1 + m'(r0) r0 / (2 m(r0))).
/// With several stable roots the smallest is returned and the flag set.
double find_orbit_radius(const MassModel& mass, const PotentialModel& pot, double Lambda,
                         bool* multiple_stable = nullptr);

/// E0 = V(r0) + Lambda^2 / (2 m(r0) r0^2).
double zeroth_energy(const MassModel& mass, const PotentialModel& pot, double Lambda, double r0);

struct FrequencyResult {
    double omega;
    TruncatedSeries shape;  // [1, a_1, ..., a_N]
};

/// Oscillation frequency and well-shape coefficients from the Taylor data
/// of m and V about r0:
///   omega^2 = 2 (m0 V2 + m1 V1) + 2 m0 V1 (3 m0 - m2) / (2 m0 + m1),
///   a_i = (2/omega^2)(sum_{j=0}^{i+1} m_j V_{i-j+2}
///         + (m0^2 V1/(2 m0 + m1)) ((i+3)(-1)^i - m_{i+2}/m0)).
/// Both input series must carry order >= N + 2.
FrequencyResult leading_frequency(const TruncatedSeries& m_series,
                                  const TruncatedSeries& v_series, double r0, int N);

/// C_i^0 from the square-root recursion:
///   C_0^0 = -omega,
///   C_i^0 = (1/2 omega)(sum_{j=1}^{i-1} C_j^0 C_{i-j}^0 - omega^2 a_i).
TruncatedSeries leading_logderiv(double omega, const TruncatedSeries& shape, int N);

/// Full classical-point assembly; series carried to truncation order N.
ClassicalPoint classical_point(const MassModel& mass, const PotentialModel& pot, double Lambda,
                               int N);

}  // namespace pdmspec
