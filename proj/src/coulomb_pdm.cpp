#include "pdmspec/coulomb_pdm.hpp"

#include <cmath>

namespace pdmspec {

namespace {

struct OrbitContext {
    double r0, t, s, Lambda, omega, a1, a2;
};

/// Orbit radius plus the shape coefficients a_1, a_2 needed by the
/// second-correction bracket.
OrbitContext orbit_context(const PowerLawCoulomb& params, const QuantumNumbers& qn) {
    const CentrifugalSplit split = centrifugal_split(qn);
    const MassModel mass = params.mass();
    const PotentialModel pot = params.potential();
    OrbitContext ctx{};
    ctx.Lambda = split.Lambda;
    ctx.r0 = find_orbit_radius(mass, pot, split.Lambda);
    ctx.t = 1.0 + params.a * ctx.r0;
    ctx.s = std::pow(ctx.t, params.lambda) -
            0.5 * params.lambda * (std::pow(ctx.t, params.lambda) - std::pow(ctx.t, params.lambda - 1.0));
    const FrequencyResult fr =
        leading_frequency(mass.taylor(ctx.r0, 4), pot.taylor(ctx.r0, 4), ctx.r0, 2);
    ctx.omega = fr.omega;
    ctx.a1 = fr.shape[1];
    ctx.a2 = fr.shape[2];
    return ctx;
}

/// The bracketed expression multiplying (n_r^2 + n_r) in the second
/// correction, written out verbatim.
double g_bracket(const PowerLawCoulomb& params, const OrbitContext& ctx) {
    const double lam = params.lambda;
    const double ar = params.a * ctx.r0;
    const double L = ctx.Lambda;
    const double wr = ctx.omega * ctx.r0;
    const double a1 = ctx.a1, a2 = ctx.a2;
    const double term1 = -8.0 * L * L * (ar * (lam - 2.0) - 2.0) * (ar * (lam - 2.0) - 2.0);
    const double term2 =
        -8.0 * L * wr *
        (6.0 * (1.0 + a1) - 3.0 * ar * ar * (lam - 2.0) * (1.0 + lam + a1) +
         ar * (12.0 * (1.0 + a1) - lam * (3.0 * a1 - 4.0)));
    const double term3 =
        -wr * wr *
        (ar * ar * (16.0 * lam * lam + 15.0 * a1 * a1 + 8.0 * lam * (3.0 * a1 + 1.0) -
                    12.0 * a2 - 8.0) +
         2.0 * ar * (15.0 * a1 * a1 + 12.0 * lam * a1 - 12.0 * a2 - 8.0) +
         15.0 * a1 * a1 - 12.0 * a2 - 8.0);
    return term1 + term2 + term3;
}

double b1_value(const PowerLawCoulomb& params, const OrbitContext& ctx, double hbar) {
    const double w2r4 = ctx.omega * ctx.omega * ctx.r0 * ctx.r0 * ctx.r0 * ctx.r0;
    return std::pow(ctx.t, params.lambda - 2.0) * hbar * hbar * g_bracket(params, ctx) /
           (16.0 * params.m_c * w2r4);
}

}  // namespace

OrbitGeometry orbit_geometry(const PowerLawCoulomb& params, const QuantumNumbers& qn) {
    const CentrifugalSplit split = centrifugal_split(qn);
    OrbitGeometry geo;
    geo.r0 = find_orbit_radius(params.mass(), params.potential(), split.Lambda);
    geo.t = 1.0 + params.a * geo.r0;
    geo.s = std::pow(geo.t, params.lambda) -
            0.5 * params.lambda *
                (std::pow(geo.t, params.lambda) - std::pow(geo.t, params.lambda - 1.0));
    const double n = qn.principal();
    geo.E_B = -params.m_c * params.q * params.q / (2.0 * qn.hbar * qn.hbar * n * n);
    return geo;
}

double closed_frequency(const PowerLawCoulomb& params, double r0) {
    const double lam = params.lambda;
    const double ar = params.a * r0;
    const double t = 1.0 + ar;
    const double numerator = params.m_c * params.q * std::pow(t, -lam - 1.0) *
                             (ar * ar * (2.0 - lam) * (1.0 - lam) + 2.0 * ar * (2.0 - lam) + 2.0);
    const double denominator = r0 * (2.0 + (2.0 - lam) * ar);
    const double w2 = numerator / denominator;
    if (!(w2 > 0.0)) {
        throw UnstableOrbitError("closed_frequency: non-positive squared frequency");
    }
    return std::sqrt(w2);
}

std::pair<double, double> closed_e0_e1(const PowerLawCoulomb& params, const QuantumNumbers& qn) {
    const CentrifugalSplit split = centrifugal_split(qn);
    const double r0 = find_orbit_radius(params.mass(), params.potential(), split.Lambda);
    const double t = 1.0 + params.a * r0;
    const double tl = std::pow(t, params.lambda);
    const double omega = closed_frequency(params, r0);
    const double e0 = -params.q / r0 + split.Lambda * split.Lambda * tl / (2.0 * params.m_c * r0 * r0);
    const double e1 =
        (2.0 * qn.n_r + 1.0) * tl * (omega * r0 - split.Lambda) / (2.0 * params.m_c * r0 * r0);
    return {e0, e1};
}

double e2_nr_part(const PowerLawCoulomb& params, const QuantumNumbers& qn) {
    const OrbitContext ctx = orbit_context(params, qn);
    const double nr = qn.n_r;
    const double w2r4 = ctx.omega * ctx.omega * ctx.r0 * ctx.r0 * ctx.r0 * ctx.r0;
    return std::pow(ctx.t, params.lambda - 2.0) / (16.0 * params.m_c * w2r4) * (nr * nr + nr) *
           g_bracket(params, ctx);
}

LevelOrdering level_order(const PowerLawCoulomb& params, const QuantumNumbers& qn) {
    if (params.lambda == 0.0 || params.a == 0.0) {
        return LevelOrdering::degenerate;
    }
    const LevelOrdering predicted =
        params.lambda > 0.0 ? LevelOrdering::normal : LevelOrdering::inverted;

    // Cross-check: the degeneracy-splitting term carries the sign of
    // omega r0 / Lambda - 1.
    const OrbitContext ctx = orbit_context(params, qn);
    const double shift = ctx.omega * ctx.r0 / ctx.Lambda - 1.0;
    const LevelOrdering observed = shift < 0.0 ? LevelOrdering::normal
                                   : shift > 0.0 ? LevelOrdering::inverted
                                                 : LevelOrdering::degenerate;
    if (observed != predicted) {
        throw std::logic_error("level_order: sign of lambda and frequency shift disagree");
    }
    return predicted;
}

SpacingReport spacing_ratio(const PowerLawCoulomb& params, int n, int n_r, double hbar) {
    if (n < 3 || n_r < 1 || n_r > n - 2) {
        throw std::invalid_argument("spacing_ratio: need n >= 3 and 1 <= n_r <= n - 2");
    }
    SpacingReport report;
    report.n = n;
    report.n_r = n_r;

    const QuantumNumbers qn{n_r, n - n_r - 1, hbar};
    report.ordering = level_order(params, qn);
    if (report.ordering == LevelOrdering::degenerate) {
        report.degenerate_spacing = true;
        return report;
    }

    const OrbitContext ctx = orbit_context(params, qn);
    report.b1 = b1_value(params, ctx, hbar);
    const double shift = ctx.omega * ctx.r0 / ctx.Lambda - 1.0;
    report.b2 = params.m_c * params.q * params.q * std::pow(ctx.t, params.lambda) * hbar /
                    (ctx.Lambda * ctx.Lambda * ctx.Lambda * ctx.s * ctx.s) * shift +
                report.b1;
    const double denom_closed = 1.0 + (2.0 * n_r + 1.0) * report.b1 / report.b2;
    if (denom_closed != 0.0) {
        report.ratio_closed = (1.0 + (2.0 * n_r - 1.0) * report.b1 / report.b2) / denom_closed;
    }

    // Independent route: third-order partial sums from the recursion.
    const AmbiguitySet amb{};
    auto e2sum = [&](int nr_state) {
        const QuantumNumbers state{nr_state, n - nr_state - 1, hbar};
        const SpectrumResult res =
            hbar_expansion_spectrum(params.mass(), params.potential(), amb, state, 2);
        return res.partials.back();
    };
    const double upper = e2sum(n_r - 1);
    const double mid = e2sum(n_r);
    const double lower = e2sum(n_r + 1);
    if (mid != lower) {
        report.ratio_expansion = (upper - mid) / (mid - lower);
    } else {
        report.degenerate_spacing = true;
    }
    return report;
}

}  // namespace pdmspec
