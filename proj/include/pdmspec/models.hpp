#pragma once

#include <functional>
#include <stdexcept>

#include "pdmspec/series.hpp"

namespace pdmspec {

struct NoStableOrbitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnstableOrbitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Kinetic-operator ordering parameters.  The constraint
/// alpha + beta + gamma = -1 is built in: beta is derived, never stored.
struct AmbiguitySet {
    double alpha = 0.0;
    double gamma = 0.0;

    double beta() const { return -1.0 - alpha - gamma; }

    /// Coefficient of Q^2 in the effective correction term.
    double q2_coeff() const { return 0.75 + alpha * gamma + alpha + gamma; }
    /// Coefficient of P (with the -1/2 factor applied by the caller).
    double p_coeff() const { return 1.0 + alpha + gamma; }
};

/// Radial mass profile m(r).  Supplies pointwise values, two derivatives
/// and Taylor coefficients m_i = r0^i m^(i)(r0)/i! about any expansion
/// point.  Custom models must provide analytic first derivative; the
/// second derivative falls back to Richardson-extrapolated central
/// differences, and high-order Taylor data requires a generator.
class MassModel {
  public:
    static MassModel power_law(double m_c, double a, double lambda);
    static MassModel constant(double m_c);
    static MassModel custom(std::function<double(double)> value,
                            std::function<double(double)> d1,
                            std::function<double(double)> d2 = nullptr,
                            std::function<TruncatedSeries(double, int)> taylor = nullptr);

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;

    /// Taylor coefficients {m_i}, i = 0..N, about r0 in x = (r - r0)/r0.
    TruncatedSeries taylor(double r0, int N) const;

    bool is_power_law() const { return power_law_; }
    double power_law_mc() const { return m_c_; }
    double power_law_a() const { return a_; }
    double power_law_lambda() const { return lambda_; }

  private:
    MassModel() = default;

    bool power_law_ = false;
    double m_c_ = 0.0, a_ = 0.0, lambda_ = 0.0;
    std::function<double(double)> value_, d1_, d2_;
    std::function<TruncatedSeries(double, int)> taylor_;
};

/// Interaction potential V(r).
class PotentialModel {
  public:
    static PotentialModel coulomb(double q);
    static PotentialModel custom(std::function<double(double)> value,
                                 std::function<double(double)> d1,
                                 std::function<TruncatedSeries(double, int)> taylor = nullptr);

    double value(double r) const;
    double d1(double r) const;

    /// Taylor coefficients {V_i}, i = 0..N, about r0.
    TruncatedSeries taylor(double r0, int N) const;

    bool is_coulomb() const { return coulomb_; }
    double coulomb_q() const { return q_; }

  private:
    PotentialModel() = default;

    bool coulomb_ = false;
    double q_ = 0.0;
    std::function<double(double)> value_, d1_;
    std::function<TruncatedSeries(double, int)> taylor_;
};

/// Mass-ratio functions entering the reduced radial equation:
/// Q(r) = m'/m and P(r) = (m'' + 2m'/r)/m, evaluated pointwise.
double mass_q(const MassModel& mass, double r);
double mass_p(const MassModel& mass, double r);

struct QpfSeries {
    TruncatedSeries Q;
    TruncatedSeries P;
    TruncatedSeries F;
};

/// Taylor expansions about r0 of Q, P and of the effective correction
/// term F = (3/4 + ag + a + g) Q^2 - ((1 + a + g)/2) P.  The mass series
/// must carry order >= N + 2 so two x-derivatives stay exact through x^N.
QpfSeries qpf_series(const TruncatedSeries& mass_series, const AmbiguitySet& amb,
                     double r0, int N);

/// Pointwise value of F(r), for the shooting-equation coefficient.
double effective_f(const MassModel& mass, const AmbiguitySet& amb, double r);

}  // namespace pdmspec
