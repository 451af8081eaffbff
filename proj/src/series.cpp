#include "pdmspec/series.hpp"

#include <cmath>
#include <stdexcept>

namespace pdmspec {

namespace {

void require_finite(const std::vector<double>& c) {
    for (double v : c) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("TruncatedSeries: non-finite coefficient");
        }
    }
}

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) {
        throw std::invalid_argument("TruncatedSeries: mismatched truncation orders");
    }
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) {
        throw std::invalid_argument("TruncatedSeries: empty coefficient list");
    }
    require_finite(c_);
}

TruncatedSeries::TruncatedSeries(std::initializer_list<double> coeffs)
    : TruncatedSeries(std::vector<double>(coeffs)) {}

TruncatedSeries TruncatedSeries::zero(int order) {
    return TruncatedSeries(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0));
}

TruncatedSeries TruncatedSeries::constant(double c, int order) {
    std::vector<double> v(static_cast<std::size_t>(order) + 1, 0.0);
    v[0] = c;
    return TruncatedSeries(std::move(v));
}

double TruncatedSeries::at_or_zero(int i) const {
    if (i < 0 || i > order()) {
        return 0.0;
    }
    return c_[static_cast<std::size_t>(i)];
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& other) const {
    require_same_order(*this, other);
    std::vector<double> out(c_);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += other.c_[i];
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& other) const {
    require_same_order(*this, other);
    std::vector<double> out(c_);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= other.c_[i];
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries TruncatedSeries::scaled(double factor) const {
    std::vector<double> out(c_);
    for (double& v : out) {
        v *= factor;
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries TruncatedSeries::derivative() const {
    std::vector<double> out(c_.size(), 0.0);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        out[i - 1] = static_cast<double>(i) * c_[i];
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order()) {
        throw std::invalid_argument("series_mul: mismatched truncation orders");
    }
    const int n = a.order();
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) {
            acc += a[j] * b[i - j];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return TruncatedSeries(std::move(out));
}

TruncatedSeries series_sqrt(const TruncatedSeries& a) {
    if (!(a[0] > 0.0)) {
        throw std::domain_error("series_sqrt: constant term must be positive");
    }
    const int n = a.order();
    std::vector<double> s(static_cast<std::size_t>(n) + 1, 0.0);
    s[0] = std::sqrt(a[0]);
    for (int i = 1; i <= n; ++i) {
        double acc = a[i];
        for (int j = 1; j < i; ++j) {
            acc -= s[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(i - j)];
        }
        s[static_cast<std::size_t>(i)] = acc / (2.0 * s[0]);
    }
    return TruncatedSeries(std::move(s));
}

TruncatedSeries series_recip(const TruncatedSeries& a) {
    if (a[0] == 0.0) {
        throw std::domain_error("series_recip: constant term must be nonzero");
    }
    const int n = a.order();
    std::vector<double> r(static_cast<std::size_t>(n) + 1, 0.0);
    r[0] = 1.0 / a[0];
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int j = 1; j <= i; ++j) {
            acc += a[j] * r[static_cast<std::size_t>(i - j)];
        }
        r[static_cast<std::size_t>(i)] = -acc / a[0];
    }
    return TruncatedSeries(std::move(r));
}

TruncatedSeries binomial_series(double exponent, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = 1.0;
    for (int i = 1; i <= order; ++i) {
        c[static_cast<std::size_t>(i)] =
            c[static_cast<std::size_t>(i - 1)] * (exponent - (i - 1)) / static_cast<double>(i);
    }
    return TruncatedSeries(std::move(c));
}

}  // namespace pdmspec
