#include "pdmspec/classical.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pdmspec {

namespace {

/// Orbit-equation residual, zero at a circular orbit.
double orbit_residual(const MassModel& mass, const PotentialModel& pot, double Lambda, double r) {
    const double m = mass.value(r);
    return m * r * r * r * pot.d1(r) - Lambda * Lambda * (1.0 + mass.d1(r) * r / (2.0 * m));
}

/// Squared oscillation frequency at a candidate orbit radius; negative
/// radicand marks an unstable orbit.
double omega_squared(const MassModel& mass, const PotentialModel& pot, double r) {
    const TruncatedSeries m = mass.taylor(r, 2);
    const TruncatedSeries v = pot.taylor(r, 2);
    const double denom = 2.0 * m[0] + m[1];
    if (denom == 0.0) {
        return -1.0;
    }
    return 2.0 * (m[0] * v[2] + m[1] * v[1]) + 2.0 * m[0] * v[1] * (3.0 * m[0] - m[2]) / denom;
}

}  // namespace

double find_orbit_radius(const MassModel& mass, const PotentialModel& pot, double Lambda,
                         bool* multiple_stable) {
    if (!(Lambda > 0.0)) {
        throw std::invalid_argument("find_orbit_radius: Lambda must be positive");
    }
    auto g = [&](double r) { return orbit_residual(mass, pot, Lambda, r); };

    // Logarithmic bracket scan over 16 decades around unit scale.
    const double lo = 1e-8, hi = 1e8;
    const int per_decade = 160;
    const int n = static_cast<int>(per_decade * std::log10(hi / lo));
    std::vector<double> roots;
    double r_prev = lo;
    double g_prev = g(r_prev);
    const double step = std::pow(hi / lo, 1.0 / n);
    for (int i = 1; i <= n; ++i) {
        const double r = lo * std::pow(step, i);
        const double gr = g(r);
        if (std::isfinite(g_prev) && std::isfinite(gr) && g_prev * gr < 0.0) {
            // Bisect to 1e-14 relative.
            double a = r_prev, b = r, ga = g_prev;
            while ((b - a) > 1e-14 * b) {
                const double mid = 0.5 * (a + b);
                const double gm = g(mid);
                if (ga * gm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    ga = gm;
                }
            }
            double root = 0.5 * (a + b);
            // One Newton polish with a numeric derivative.
            const double h = root * 1e-7;
            const double slope = (g(root + h) - g(root - h)) / (2.0 * h);
            if (slope != 0.0) {
                const double polished = root - g(root) / slope;
                if (polished > a - (b - a) && polished < b + (b - a) && polished > 0.0) {
                    root = polished;
                }
            }
            roots.push_back(root);
        }
        r_prev = r;
        g_prev = gr;
    }
    if (roots.empty()) {
        throw NoStableOrbitError("find_orbit_radius: no sign change of the orbit equation");
    }

    std::vector<double> stable;
    for (double r : roots) {
        if (omega_squared(mass, pot, r) > 0.0) {
            stable.push_back(r);
        }
    }
    if (stable.empty()) {
        throw UnstableOrbitError("find_orbit_radius: every orbit-equation root is unstable");
    }
    if (multiple_stable != nullptr) {
        *multiple_stable = stable.size() > 1;
    }
    return *std::min_element(stable.begin(), stable.end());
}

double zeroth_energy(const MassModel& mass, const PotentialModel& pot, double Lambda, double r0) {
    return pot.value(r0) + Lambda * Lambda / (2.0 * mass.value(r0) * r0 * r0);
}

FrequencyResult leading_frequency(const TruncatedSeries& m_series,
                                  const TruncatedSeries& v_series, double r0, int N) {
    (void)r0;
    if (m_series.order() < N + 2 || v_series.order() < N + 2) {
        throw std::invalid_argument("leading_frequency: series order must be >= N + 2");
    }
    const double m0 = m_series[0];
    const double denom = 2.0 * m0 + m_series[1];
    if (denom == 0.0) {
        throw UnstableOrbitError("leading_frequency: degenerate denominator 2 m0 + m1 = 0");
    }
    const double coupling = m0 * m0 * v_series[1] / denom;
    const double w2 =
        2.0 * (m0 * v_series[2] + m_series[1] * v_series[1]) + 2.0 * coupling * (3.0 - m_series[2] / m0);
    if (!(w2 > 0.0)) {
        throw UnstableOrbitError("leading_frequency: non-positive squared frequency");
    }
    std::vector<double> shape(static_cast<std::size_t>(N) + 1, 0.0);
    shape[0] = 1.0;
    for (int i = 1; i <= N; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i + 1; ++j) {
            acc += m_series[j] * v_series[i - j + 2];
        }
        const int sign = (i % 2 == 0) ? 1 : -1;
        acc += coupling * (sign * (i + 3) - m_series[i + 2] / m0);
        shape[static_cast<std::size_t>(i)] = 2.0 * acc / w2;
    }
    return FrequencyResult{std::sqrt(w2), TruncatedSeries(std::move(shape))};
}

TruncatedSeries leading_logderiv(double omega, const TruncatedSeries& shape, int N) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("leading_logderiv: omega must be positive");
    }
    std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
    c[0] = -omega;
    for (int i = 1; i <= N; ++i) {
        double acc = 0.0;
        for (int j = 1; j < i; ++j) {
            acc += c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(i - j)];
        }
        c[static_cast<std::size_t>(i)] =
            (acc - omega * omega * shape.at_or_zero(i)) / (2.0 * omega);
    }
    return TruncatedSeries(std::move(c));
}

ClassicalPoint classical_point(const MassModel& mass, const PotentialModel& pot, double Lambda,
                               int N) {
    ClassicalPoint cp;
    cp.r0 = find_orbit_radius(mass, pot, Lambda, &cp.multiple_stable_roots);
    cp.E0 = zeroth_energy(mass, pot, Lambda, cp.r0);
    FrequencyResult fr =
        leading_frequency(mass.taylor(cp.r0, N + 2), pot.taylor(cp.r0, N + 2), cp.r0, N);
    cp.omega = fr.omega;
    cp.shape = std::move(fr.shape);
    cp.c0 = leading_logderiv(cp.omega, cp.shape, N);
    return cp;
}

}  // namespace pdmspec
