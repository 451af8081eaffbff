#include "pdmspec/models.hpp"

#include <cmath>

namespace pdmspec {

namespace {

/// Taylor coefficients of m_c (1 + a r)^(-lambda) about r0:
/// m_i = m_c (-a r0)^i [lambda]_i / (i! t^(lambda+i)), t = 1 + a r0.
TruncatedSeries power_law_taylor(double m_c, double a, double lambda, double r0, int N) {
    const double t = 1.0 + a * r0;
    if (!(t > 0.0)) {
        throw std::domain_error("MassModel: power-law mass singular at expansion point");
    }
    std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
    double term = m_c * std::pow(t, -lambda);
    c[0] = term;
    for (int i = 1; i <= N; ++i) {
        term *= (-a * r0) * (lambda + (i - 1)) / (static_cast<double>(i) * t);
        c[static_cast<std::size_t>(i)] = term;
    }
    return TruncatedSeries(std::move(c));
}

double richardson_d2(const std::function<double(double)>& f, double r) {
    // Central second difference with one Richardson step, h = r * 1e-4.
    const double h = r * 1e-4;
    auto d2 = [&](double hh) { return (f(r + hh) - 2.0 * f(r) + f(r - hh)) / (hh * hh); };
    const double coarse = d2(2.0 * h);
    const double fine = d2(h);
    return fine + (fine - coarse) / 3.0;
}

}  // namespace

MassModel MassModel::power_law(double m_c, double a, double lambda) {
    if (!(m_c > 0.0)) {
        throw std::invalid_argument("MassModel: reference mass must be positive");
    }
    MassModel m;
    m.power_law_ = true;
    m.m_c_ = m_c;
    m.a_ = a;
    m.lambda_ = lambda;
    return m;
}

MassModel MassModel::constant(double m_c) { return power_law(m_c, 0.0, 0.0); }

MassModel MassModel::custom(std::function<double(double)> value, std::function<double(double)> d1,
                            std::function<double(double)> d2,
                            std::function<TruncatedSeries(double, int)> taylor) {
    if (!value || !d1) {
        throw std::invalid_argument("MassModel: custom model needs value and first derivative");
    }
    MassModel m;
    m.value_ = std::move(value);
    m.d1_ = std::move(d1);
    m.d2_ = std::move(d2);
    m.taylor_ = std::move(taylor);
    return m;
}

double MassModel::value(double r) const {
    if (power_law_) {
        return m_c_ * std::pow(1.0 + a_ * r, -lambda_);
    }
    return value_(r);
}

double MassModel::d1(double r) const {
    if (power_law_) {
        const double t = 1.0 + a_ * r;
        return -lambda_ * a_ * m_c_ * std::pow(t, -lambda_ - 1.0);
    }
    return d1_(r);
}

double MassModel::d2(double r) const {
    if (power_law_) {
        const double t = 1.0 + a_ * r;
        return lambda_ * (lambda_ + 1.0) * a_ * a_ * m_c_ * std::pow(t, -lambda_ - 2.0);
    }
    if (d2_) {
        return d2_(r);
    }
    return richardson_d2(value_, r);
}

TruncatedSeries MassModel::taylor(double r0, int N) const {
    if (!(r0 > 0.0)) {
        throw std::domain_error("MassModel: expansion point must be positive");
    }
    if (power_law_) {
        return power_law_taylor(m_c_, a_, lambda_, r0, N);
    }
    if (taylor_) {
        TruncatedSeries s = taylor_(r0, N);
        if (s.order() != N) {
            throw std::invalid_argument("MassModel: taylor generator returned wrong order");
        }
        return s;
    }
    if (N > 2) {
        throw std::domain_error(
            "MassModel: custom model without a Taylor generator supports order <= 2 only");
    }
    std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
    c[0] = value(r0);
    if (N >= 1) c[1] = r0 * d1(r0);
    if (N >= 2) c[2] = r0 * r0 * d2(r0) / 2.0;
    return TruncatedSeries(std::move(c));
}

PotentialModel PotentialModel::coulomb(double q) {
    if (!(q > 0.0)) {
        throw std::invalid_argument("PotentialModel: Coulomb coupling must be positive");
    }
    PotentialModel p;
    p.coulomb_ = true;
    p.q_ = q;
    return p;
}

PotentialModel PotentialModel::custom(std::function<double(double)> value,
                                      std::function<double(double)> d1,
                                      std::function<TruncatedSeries(double, int)> taylor) {
    if (!value || !d1) {
        throw std::invalid_argument("PotentialModel: custom model needs value and derivative");
    }
    PotentialModel p;
    p.value_ = std::move(value);
    p.d1_ = std::move(d1);
    p.taylor_ = std::move(taylor);
    return p;
}

double PotentialModel::value(double r) const {
    if (coulomb_) {
        return -q_ / r;
    }
    return value_(r);
}

double PotentialModel::d1(double r) const {
    if (coulomb_) {
        return q_ / (r * r);
    }
    return d1_(r);
}

TruncatedSeries PotentialModel::taylor(double r0, int N) const {
    if (!(r0 > 0.0)) {
        throw std::domain_error("PotentialModel: expansion point must be positive");
    }
    if (coulomb_) {
        // -q/r = -(q/r0) (1+x)^{-1}: V_i = -(q/r0)(-1)^i.
        std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
        double v = -q_ / r0;
        for (int i = 0; i <= N; ++i) {
            c[static_cast<std::size_t>(i)] = v;
            v = -v;
        }
        return TruncatedSeries(std::move(c));
    }
    if (taylor_) {
        TruncatedSeries s = taylor_(r0, N);
        if (s.order() != N) {
            throw std::invalid_argument("PotentialModel: taylor generator returned wrong order");
        }
        return s;
    }
    if (N > 1) {
        throw std::domain_error(
            "PotentialModel: custom model without a Taylor generator supports order <= 1 only");
    }
    std::vector<double> c(static_cast<std::size_t>(N) + 1, 0.0);
    c[0] = value(r0);
    if (N >= 1) c[1] = r0 * d1(r0);
    return TruncatedSeries(std::move(c));
}

double mass_q(const MassModel& mass, double r) { return mass.d1(r) / mass.value(r); }

double mass_p(const MassModel& mass, double r) {
    return (mass.d2(r) + 2.0 * mass.d1(r) / r) / mass.value(r);
}

QpfSeries qpf_series(const TruncatedSeries& mass_series, const AmbiguitySet& amb, double r0,
                     int N) {
    if (!(mass_series[0] > 0.0)) {
        throw std::domain_error("qpf_series: mass must be positive at expansion point");
    }
    if (mass_series.order() < N + 2) {
        throw std::invalid_argument("qpf_series: mass series order must be >= N + 2");
    }
    // Work at order N; two x-derivatives of the order-(N+2) input stay exact.
    std::vector<double> m(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> dm(m.size(), 0.0), d2m(m.size(), 0.0);
    for (int i = 0; i <= N; ++i) {
        m[static_cast<std::size_t>(i)] = mass_series[i];
        dm[static_cast<std::size_t>(i)] = (i + 1) * mass_series.at_or_zero(i + 1) / r0;
        d2m[static_cast<std::size_t>(i)] =
            (i + 1) * (i + 2) * mass_series.at_or_zero(i + 2) / (r0 * r0);
    }
    const TruncatedSeries ms{std::move(m)};
    const TruncatedSeries dms{std::move(dm)};
    const TruncatedSeries d2ms{std::move(d2m)};
    const TruncatedSeries inv_m = series_recip(ms);
    const TruncatedSeries rinv = binomial_series(-1.0, N).scaled(1.0 / r0);  // 1/r

    TruncatedSeries Q = series_mul(dms, inv_m);
    TruncatedSeries P = series_mul(d2ms + series_mul(dms, rinv).scaled(2.0), inv_m);
    TruncatedSeries F =
        series_mul(Q, Q).scaled(amb.q2_coeff()) - P.scaled(0.5 * amb.p_coeff());
    return QpfSeries{std::move(Q), std::move(P), std::move(F)};
}

double effective_f(const MassModel& mass, const AmbiguitySet& amb, double r) {
    const double q = mass_q(mass, r);
    const double p = mass_p(mass, r);
    return amb.q2_coeff() * q * q - 0.5 * amb.p_coeff() * p;
}

}  // namespace pdmspec
