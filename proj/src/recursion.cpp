#include "pdmspec/recursion.hpp"

#include <cmath>
#include <stdexcept>

namespace pdmspec {

CentrifugalSplit centrifugal_split(const QuantumNumbers& qn) {
    if (qn.n_r < 0 || qn.l < 0 || !(qn.hbar > 0.0)) {
        throw std::invalid_argument("centrifugal_split: invalid quantum numbers");
    }
    CentrifugalSplit s;
    s.Lambda = qn.hbar * qn.principal();
    s.A = -2.0 * qn.n_r - 1.0;
    s.B = static_cast<double>(qn.n_r) * qn.n_r + qn.n_r;
    return s;
}

CorrectionTable correction_table(const ClassicalPoint& cp, const CentrifugalSplit& split,
                                 const TruncatedSeries& m_series, const TruncatedSeries& f_series,
                                 const QuantumNumbers& qn, int K) {
    if (K < 0 || K > kMaxExpansionOrder) {
        throw std::invalid_argument("correction_table: expansion order out of range");
    }
    const int imax = table_index_bound(K);
    if (m_series.order() < imax || f_series.order() < 2 * K) {
        throw std::invalid_argument("correction_table: insufficient series truncation order");
    }
    if (cp.c0[0] == 0.0) {
        throw std::domain_error("correction_table: singular recursion, C_0^0 = 0");
    }
    const double r0 = cp.r0;
    const double m0 = m_series[0];
    const double two_c00 = 2.0 * cp.c0[0];

    CorrectionTable t;
    t.r0 = r0;
    t.omega = cp.omega;
    t.c.assign(static_cast<std::size_t>(K) + 1,
               std::vector<double>(static_cast<std::size_t>(imax) + 1, 0.0));
    t.e.assign(static_cast<std::size_t>(K) + 1, 0.0);
    for (int i = 0; i <= imax; ++i) {
        t.c[0][static_cast<std::size_t>(i)] = cp.c0.at_or_zero(i);
    }
    t.e[0] = cp.E0;

    for (int k = 1; k <= K; ++k) {
        auto& row = t.c[static_cast<std::size_t>(k)];
        const double gk = split.gamma(k, r0);
        const double f0 = (k == 2) ? f_series[0] : 0.0;
        const int pin = 2 * k - 2;
        // Entries below the pinned index carry no Heaviside-gated terms.
        // The pinned entry itself comes from the quantization condition and
        // must be in place before the convolution sums read it.
        row[static_cast<std::size_t>(pin)] = (k == 1) ? qn.n_r / r0 : 0.0;

        // Convolution over earlier rows at fixed target index i:
        // sum_{j=1}^{k-1} sum_{p=0}^{i} C_p^j C_{i-p}^{k-j}.
        // Extended-precision accumulators keep the two independent solution
        // paths within 1e-9 relative of each other out to k = 6.
        auto mid_convolution = [&](int i) {
            long double acc = 0.0L;
            for (int j = 1; j < k; ++j) {
                const auto& rj = t.c[static_cast<std::size_t>(j)];
                const auto& rk = t.c[static_cast<std::size_t>(k - j)];
                for (int p = 0; p <= i; ++p) {
                    acc += static_cast<long double>(rj[static_cast<std::size_t>(p)]) *
                           rk[static_cast<std::size_t>(i - p)];
                }
            }
            return acc;
        };
        // Same-row convolution against C^0, excluding the p = 0 term that
        // holds the unknown: sum_{p=1}^{i} C_p^0 C_{i-p}^k.
        auto head_convolution = [&](int i) {
            long double acc = 0.0L;
            const auto& r0row = t.c[0];
            for (int p = 1; p <= i; ++p) {
                acc += static_cast<long double>(r0row[static_cast<std::size_t>(p)]) *
                       row[static_cast<std::size_t>(i - p)];
            }
            return acc;
        };

        for (int i = 0; i < pin; ++i) {
            const long double acc =
                -(3.0L - 2.0L * k + i) / r0 *
                    t.c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)] -
                mid_convolution(i) - 2.0L * head_convolution(i);
            row[static_cast<std::size_t>(i)] = static_cast<double>(acc / two_c00);
        }

        // E_k at the pinned slot.  The full double sum includes the j = 0
        // and j = k boundary terms over the current row.
        long double full_sum = mid_convolution(pin);
        for (int p = 0; p <= pin; ++p) {
            full_sum += 2.0L * static_cast<long double>(t.c[0][static_cast<std::size_t>(p)]) *
                        row[static_cast<std::size_t>(pin - p)];
        }
        const double prev_pin = t.c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(pin)];
        t.e[static_cast<std::size_t>(k)] =
            static_cast<double>((gk + f0 - prev_pin / r0 - full_sum) / (2.0L * m0));

        for (int i = pin + 1; i <= imax; ++i) {
            long double acc = 0.0L;
            // Heaviside-gated part: the mass-weighted bracket is exactly
            // 2 m_{i+2-2k} E_k once E_k is known.
            const int sign = (i % 2 == 0) ? 1 : -1;
            acc += gk * sign * (3.0 - 2.0 * k + i);
            if (k == 2 && i >= 2) {
                acc += f_series[i - 2];
            }
            acc -= 2.0L * m_series.at_or_zero(i + 2 - 2 * k) * t.e[static_cast<std::size_t>(k)];
            acc -= (3.0L - 2.0L * k + i) / r0 *
                   t.c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)];
            acc -= mid_convolution(i) + 2.0L * head_convolution(i);
            row[static_cast<std::size_t>(i)] = static_cast<double>(acc / two_c00);
        }
    }
    return t;
}

SpectrumResult partial_sums(const CorrectionTable& table, const QuantumNumbers& qn, double tol) {
    SpectrumResult res;
    res.qn = qn;
    res.corrections = table.e;
    res.r0 = table.r0;
    res.omega = table.omega;
    double sum = 0.0;
    double weight = 1.0;
    double last_increment = 0.0;
    for (double ek : table.e) {
        last_increment = ek * weight;
        sum += last_increment;
        res.partials.push_back(sum);
        weight *= qn.hbar;
    }
    res.converged = std::abs(last_increment) < tol * std::abs(sum);
    return res;
}

SpectrumResult hbar_expansion_spectrum(const MassModel& mass, const PotentialModel& pot,
                                       const AmbiguitySet& amb, const QuantumNumbers& qn, int K) {
    const CentrifugalSplit split = centrifugal_split(qn);
    const int order = table_index_bound(K) + 2;
    bool multiple = false;
    const double r0 = find_orbit_radius(mass, pot, split.Lambda, &multiple);

    ClassicalPoint cp;
    cp.r0 = r0;
    cp.E0 = zeroth_energy(mass, pot, split.Lambda, r0);
    cp.multiple_stable_roots = multiple;
    const TruncatedSeries m_full = mass.taylor(r0, order + 2);
    FrequencyResult fr = leading_frequency(m_full, pot.taylor(r0, order + 2), r0, order);
    cp.omega = fr.omega;
    cp.shape = std::move(fr.shape);
    cp.c0 = leading_logderiv(cp.omega, cp.shape, order);

    const QpfSeries qpf = qpf_series(m_full, amb, r0, order);
    const CorrectionTable table = correction_table(cp, split, m_full, qpf.F, qn, K);
    SpectrumResult res = partial_sums(table, qn);
    res.multiple_stable_roots = multiple;
    return res;
}

}  // namespace pdmspec
