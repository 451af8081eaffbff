#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace pdmspec {

/// Dense truncated power series in the dimensionless variable
/// x = (r - r0)/r0.  The truncation order is fixed at construction and
/// every binary operation requires both operands to carry the same order;
/// silent promotion would mask index bugs in the correction recursion.
class TruncatedSeries {
  public:
    explicit TruncatedSeries(std::vector<double> coeffs);
    TruncatedSeries(std::initializer_list<double> coeffs);

    /// Series with all coefficients zero.
    static TruncatedSeries zero(int order);
    /// Constant series c + 0*x + ...
    static TruncatedSeries constant(double c, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& coeffs() const { return c_; }

    /// Coefficient at index i, zero beyond the truncation order.
    double at_or_zero(int i) const;

    TruncatedSeries operator+(const TruncatedSeries& other) const;
    TruncatedSeries operator-(const TruncatedSeries& other) const;
    TruncatedSeries scaled(double factor) const;

    /// d/dx, keeping the truncation order (top coefficient becomes zero).
    TruncatedSeries derivative() const;

  private:
    std::vector<double> c_;
};

/// Cauchy product truncated at the common order.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// Square root with positive constant term, s*s == a to truncation order.
TruncatedSeries series_sqrt(const TruncatedSeries& a);

/// Multiplicative inverse, a*recip(a) == 1 to truncation order.
TruncatedSeries series_recip(const TruncatedSeries& a);

/// Expansion of (1+x)^p about x = 0 (binomial series), used for 1/r powers.
TruncatedSeries binomial_series(double exponent, int order);

}  // namespace pdmspec
