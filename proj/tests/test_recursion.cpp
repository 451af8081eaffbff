#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pdmspec/coulomb_pdm.hpp"
#include "pdmspec/recursion.hpp"

using namespace pdmspec;

namespace {

SpectrumResult power_law_spectrum(double lambda, int n_r, int l, int K) {
    const MassModel mass = MassModel::power_law(0.5, 0.1, lambda);
    const PotentialModel pot = PotentialModel::coulomb(10.0);
    return hbar_expansion_spectrum(mass, pot, AmbiguitySet{}, QuantumNumbers{n_r, l}, K);
}

}  // namespace

TEST_CASE("centrifugal split identity") {
    for (int n_r = 0; n_r <= 4; ++n_r) {
        for (int l = 0; l <= 4; ++l) {
            const QuantumNumbers qn{n_r, l};
            const CentrifugalSplit sp = centrifugal_split(qn);
            CHECK(sp.Lambda == doctest::Approx(n_r + l + 1.0));
            CHECK(sp.A == doctest::Approx(-2.0 * n_r - 1.0));
            CHECK(sp.B == doctest::Approx(double(n_r) * n_r + n_r));
            // Lambda^2 + hbar A Lambda + hbar^2 B == hbar^2 l (l+1).
            const double lhs = sp.Lambda * sp.Lambda + sp.A * sp.Lambda + sp.B;
            CHECK(lhs == doctest::Approx(double(l) * (l + 1)).epsilon(1e-14));
        }
    }
}

TEST_CASE("constant mass reproduces the Balmer formula at zeroth order") {
    const MassModel mass = MassModel::constant(0.5);
    const PotentialModel pot = PotentialModel::coulomb(10.0);
    for (int n_r = 0; n_r <= 2; ++n_r) {
        for (int l = 0; l <= 2; ++l) {
            const QuantumNumbers qn{n_r, l};
            const double n = qn.principal();
            const SpectrumResult sr = hbar_expansion_spectrum(mass, pot, AmbiguitySet{}, qn, 5);
            CHECK(sr.corrections[0] == doctest::Approx(-0.5 * 100.0 / (2.0 * n * n)).epsilon(1e-12));
            for (int k = 1; k <= 5; ++k) {
                CHECK(std::abs(sr.corrections[k]) < 1e-10 * std::abs(sr.corrections[0]));
            }
        }
    }
}

TEST_CASE("lambda = 2, (n_r=0, l=2): exact corrections and termination") {
    const SpectrumResult sr = power_law_spectrum(2.0, 0, 2, 6);
    const std::vector<double> expect = {-16.0 / 9.0, -1.0 / 6.0, 1.0 / 9.0,
                                        1.0 / 300.0, -1.0 / 900.0, 0.0, 0.0};
    REQUIRE(sr.corrections.size() == 7);
    for (int k = 0; k <= 6; ++k) {
        CHECK(sr.corrections[k] == doctest::Approx(expect[k]).epsilon(1e-9).scale(1.0));
    }
    CHECK(sr.r0 == doctest::Approx(1.8 / 0.82).epsilon(1e-12));
    CHECK(sr.converged);
}

TEST_CASE("reference partial-sum magnitudes, all eight columns") {
    struct Column {
        double lambda;
        int n_r, l;
        std::vector<double> abs_partials;  // k = 0..5
    };
    const std::vector<Column> columns = {
        {2.0, 0, 2, {1.77778, 1.94444, 1.83333, 1.83000, 1.83111, 1.83111}},
        {3.0, 0, 2, {1.18817, 1.45345, 1.25876, 1.24978, 1.25190, 1.25184}},
        {-2.0, 0, 2, {3.64395, 3.50153, 3.58047, 3.57934, 3.58015, 3.58014}},
        {-3.0, 0, 2, {4.04566, 3.83753, 3.94991, 3.94732, 3.94898, 3.94896}},
        {2.0, 1, 1, {1.77778, 2.27778, 2.07556, 2.05556, 2.06000, 2.06000}},
        {3.0, 1, 1, {1.18817, 1.98401, 1.66974, 1.61180, 1.62647, 1.62478}},
        {-2.0, 1, 1, {3.64395, 3.21669, 3.39891, 3.39064, 3.39352, 3.39330}},
        {-3.0, 1, 1, {4.04566, 3.42127, 3.69143, 3.67228, 3.67887, 3.67837}},
    };
    for (const Column& col : columns) {
        CAPTURE(col.lambda);
        CAPTURE(col.n_r);
        const SpectrumResult sr = power_law_spectrum(col.lambda, col.n_r, col.l, 5);
        REQUIRE(sr.partials.size() == 6);
        for (int k = 0; k <= 5; ++k) {
            CAPTURE(k);
            CHECK(std::abs(sr.partials[k]) ==
                  doctest::Approx(col.abs_partials[k]).epsilon(5e-6));
        }
    }
}

TEST_CASE("hbar scaling: partial sums are polynomials in hbar") {
    // Recomputing with hbar = 1/2 must reproduce sum E_k(hbar) hbar^k where
    // the corrections themselves depend on hbar only through Lambda.
    const MassModel mass = MassModel::power_law(0.5, 0.1, 3.0);
    const PotentialModel pot = PotentialModel::coulomb(10.0);
    QuantumNumbers qn{0, 2, 0.5};
    const SpectrumResult sr = hbar_expansion_spectrum(mass, pot, AmbiguitySet{}, qn, 4);
    double acc = 0.0;
    for (int k = 0; k <= 4; ++k) {
        acc += sr.corrections[k] * std::pow(qn.hbar, k);
        CHECK(sr.partials[k] == doctest::Approx(acc).epsilon(1e-12));
    }
}

TEST_CASE("table rows satisfy the raw Riccati identity") {
    // Direct residual check of order k = 1 and k = 2 equations without the
    // collected coefficient formula: substitute the stored rows into
    //   hbar (1/r0) C_{k-1}' + sum_{j=0}^{k} C_j C_{k-j}
    //     = -2 m E_k + gamma_k (1+x)^{-2} + F delta_{k,2},
    // expanded coefficient-wise in the Laurent offsets.
    const double lambda = 3.0;
    const MassModel mass = MassModel::power_law(0.5, 0.1, lambda);
    const PotentialModel pot = PotentialModel::coulomb(10.0);
    const QuantumNumbers qn{1, 1};
    const CentrifugalSplit sp = centrifugal_split(qn);
    const int K = 3;
    const int order = table_index_bound(K) + 2;
    const ClassicalPoint cp = classical_point(mass, pot, sp.Lambda, order);
    const TruncatedSeries m_s = mass.taylor(cp.r0, order + 2);
    const QpfSeries qpf = qpf_series(m_s, AmbiguitySet{}, cp.r0, order);
    const CorrectionTable tab =
        correction_table(cp, sp, m_s, qpf.F, qn, K);

    const TruncatedSeries inv_sq = binomial_series(-2.0, order);
    const int bound = table_index_bound(K);

    for (int k = 1; k <= 2; ++k) {
        // Relative power p counts from x^{2-2k}; keep terms the table pins.
        for (int p = 0; p <= 2 * k; ++p) {
            double lhs = 0.0;
            // (1/r0) d/dx of row k-1 with offset 1-2(k-1): the term landing
            // at relative power p (offset 2-2k) has index i = p.
            {
                const int off = 1 - 2 * (k - 1);
                const int i = p;
                if (i >= 0 && i <= bound) {
                    lhs += (off + i) * tab.c[k - 1][i] / tab.r0;
                }
            }
            for (int j = 0; j <= k; ++j) {
                // Row j offset 1-2j, row k-j offset 1-2(k-j); product offset
                // 2-2k, so indices sum to p.
                for (int i = 0; i <= p; ++i) {
                    const int i2 = p - i;
                    if (i <= bound && i2 <= bound) {
                        lhs += tab.c[j][i] * tab.c[k - j][i2];
                    }
                }
            }
            double rhs = 0.0;
            // RHS terms are Taylor series in x, entering at relative power
            // p >= 2k-2 with Taylor index q = p - (2k-2).
            const int q = p - (2 * k - 2);
            if (q >= 0) {
                rhs += -2.0 * m_s[q] * tab.e[k];
                rhs += sp.gamma(k, tab.r0) * inv_sq[q];
                if (k == 2) rhs += qpf.F[q];
            }
            CAPTURE(k);
            CAPTURE(p);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("pinned entries carry the quantization condition") {
    const MassModel mass = MassModel::power_law(0.5, 0.1, -2.0);
    const PotentialModel pot = PotentialModel::coulomb(10.0);
    for (int n_r : {0, 1, 2}) {
        const QuantumNumbers qn{n_r, 1};
        const CentrifugalSplit sp = centrifugal_split(qn);
        const int K = 3;
        const int order = table_index_bound(K) + 2;
        const ClassicalPoint cp = classical_point(mass, pot, sp.Lambda, order);
        const TruncatedSeries m_s = mass.taylor(cp.r0, order + 2);
        const QpfSeries qpf = qpf_series(m_s, AmbiguitySet{}, cp.r0, order);
        const CorrectionTable tab = correction_table(cp, sp, m_s, qpf.F, qn, K);
        CHECK(tab.c[1][0] == doctest::Approx(n_r / tab.r0).epsilon(1e-12).scale(1.0));
        for (int k = 2; k <= K; ++k) {
            CHECK(tab.c[k][2 * k - 2] == doctest::Approx(0.0).scale(1.0));
        }
    }
}

TEST_CASE("expansion order cap") {
    const MassModel mass = MassModel::power_law(0.5, 0.1, 2.0);
    const PotentialModel pot = PotentialModel::coulomb(10.0);
    CHECK_THROWS_AS(hbar_expansion_spectrum(mass, pot, AmbiguitySet{}, QuantumNumbers{0, 2},
                                            kMaxExpansionOrder + 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(hbar_expansion_spectrum(mass, pot, AmbiguitySet{}, QuantumNumbers{0, 2}, -1),
                    std::invalid_argument);
}

TEST_CASE("convergence flag reflects the last increment") {
    const SpectrumResult tight = power_law_spectrum(2.0, 0, 2, 5);
    CHECK(tight.converged);
    const SpectrumResult loose = power_law_spectrum(3.0, 1, 1, 1);
    CHECK_FALSE(loose.converged);
}
