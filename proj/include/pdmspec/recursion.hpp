#pragma once

#include <optional>
#include <vector>

#include "pdmspec/classical.hpp"
#include "pdmspec/series.hpp"

namespace pdmspec {

struct QuantumNumbers {
    int n_r = 0;  // radial quantum number (node count)
    int l = 0;    // orbital quantum number
    double hbar = 1.0;

    int principal() const { return n_r + l + 1; }
};

/// The split hbar^2 l(l+1) = Lambda^2 + hbar A Lambda + hbar^2 B with the
/// Balmer-restoring choice Lambda = hbar (n_r + l + 1).
struct CentrifugalSplit {
    double Lambda = 0.0;
    double A = 0.0;
    double B = 0.0;

    /// gamma_1 = A Lambda / r0^2, gamma_2 = B / r0^2, zero beyond.
    double gamma(int k, double r0) const {
        if (k == 1) return A * Lambda / (r0 * r0);
        if (k == 2) return B / (r0 * r0);
        return 0.0;
    }
};

CentrifugalSplit centrifugal_split(const QuantumNumbers& qn);

/// Triangular table of Laurent coefficients C_i^k (row k, index i, Laurent
/// offset x^(1-2k)) together with the energy corrections E_0..E_K.
struct CorrectionTable {
    std::vector<std::vector<double>> c;  // c[k][i]
    std::vector<double> e;               // e[k] = E_k
    double r0 = 0.0;
    double omega = 0.0;

    int max_order() const { return static_cast<int>(e.size()) - 1; }
};

/// Maximum Laurent index stored per row; covers every index referenced by
/// rows up to K.
inline int table_index_bound(int K) { return 2 * K + 2; }

/// Hard cap on the expansion depth; the series is asymptotic and deeper
/// rows are numerically meaningless for generic models.
inline constexpr int kMaxExpansionOrder = 12;

/// Builds the correction table row by row (k-major, i ascending).  The
/// quantization condition pins C^k_{2k-2} = (n_r/r0) delta_{k,1}; every
/// other entry follows from the collected recursion, and E_k is emitted at
/// the pinned slot.  The mass series must carry order >= 2K+2 and the F
/// series order >= 2K.
CorrectionTable correction_table(const ClassicalPoint& cp, const CentrifugalSplit& split,
                                 const TruncatedSeries& m_series, const TruncatedSeries& f_series,
                                 const QuantumNumbers& qn, int K);

struct SpectrumResult {
    QuantumNumbers qn;
    std::vector<double> corrections;  // E_k
    std::vector<double> partials;     // E^(k) = sum_{j<=k} E_j hbar^j
    double r0 = 0.0;
    double omega = 0.0;
    std::optional<double> oracle_energy;
    bool converged = false;
    bool multiple_stable_roots = false;
};

/// Partial sums E^(k); converged when the last increment is below
/// tol * |E^(K)| in magnitude.
SpectrumResult partial_sums(const CorrectionTable& table, const QuantumNumbers& qn,
                            double tol = 1e-4);

/// One-call pipeline: classical point, split, series data, table, sums.
SpectrumResult hbar_expansion_spectrum(const MassModel& mass, const PotentialModel& pot,
                                       const AmbiguitySet& amb, const QuantumNumbers& qn, int K);

}  // namespace pdmspec
