#include "pdmspec/oracle.hpp"

#include <cmath>
#include <limits>

namespace pdmspec {

namespace {

constexpr double kRescaleThreshold = 1e250;

/// Outward Numerov sweep; returns the node count over the whole grid.
/// Only three running values are kept, with periodic rescaling so the
/// exponential growth in the forbidden region cannot overflow.
int outward_nodes(const MassModel& mass, const PotentialModel& pot, const AmbiguitySet& amb,
                  int l, double E, const RadialGrid& grid, double hbar) {
    const int n = grid.points;
    const double h = grid.step();
    const double h2_12 = h * h / 12.0;
    double f_prev = 1.0 - h2_12 * effective_w(mass, pot, amb, l, E, grid.r(0), hbar);
    double f_cur = 1.0 - h2_12 * effective_w(mass, pot, amb, l, E, grid.r(1), hbar);
    double u_prev = std::pow(grid.r(0), l + 1);
    double u_cur = std::pow(grid.r(1), l + 1);
    int nodes = 0;
    for (int i = 1; i < n - 1; ++i) {
        const double f_next = 1.0 - h2_12 * effective_w(mass, pot, amb, l, E, grid.r(i + 1), hbar);
        double u_next = ((12.0 - 10.0 * f_cur) * u_cur - f_prev * u_prev) / f_next;
        if (u_next * u_cur < 0.0 || (u_next == 0.0 && u_cur != 0.0)) {
            ++nodes;
        }
        if (std::abs(u_next) > kRescaleThreshold) {
            u_next /= kRescaleThreshold;
            u_cur /= kRescaleThreshold;
        }
        u_prev = u_cur;
        u_cur = u_next;
        f_prev = f_cur;
        f_cur = f_next;
    }
    return nodes;
}

struct MatchData {
    double mismatch = 0.0;  // scaled difference of log-derivatives at the match point
    int nodes = 0;          // nodes of the matched wave function
};

/// Outward sweep to one past the match index and inward sweep back to one
/// before it; the mismatch zero locates the eigenvalue with a decaying
/// outer tail.  Both branches are rescaled in place on overflow danger,
/// which leaves log-derivatives and node counts untouched.
MatchData matched_shoot(const MassModel& mass, const PotentialModel& pot, const AmbiguitySet& amb,
                        int l, double E, const RadialGrid& grid, int i_match, double hbar) {
    const int n = grid.points;
    const double h = grid.step();
    const double h2_12 = h * h / 12.0;
    std::vector<double> f(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        f[static_cast<std::size_t>(i)] =
            1.0 - h2_12 * effective_w(mass, pot, amb, l, E, grid.r(i), hbar);
    }

    std::vector<double> u(static_cast<std::size_t>(i_match) + 2, 0.0);
    u[0] = std::pow(grid.r(0), l + 1);
    u[1] = std::pow(grid.r(1), l + 1);
    for (int i = 1; i <= i_match; ++i) {
        u[static_cast<std::size_t>(i) + 1] =
            ((12.0 - 10.0 * f[static_cast<std::size_t>(i)]) * u[static_cast<std::size_t>(i)] -
             f[static_cast<std::size_t>(i) - 1] * u[static_cast<std::size_t>(i) - 1]) /
            f[static_cast<std::size_t>(i) + 1];
        if (std::abs(u[static_cast<std::size_t>(i) + 1]) > kRescaleThreshold) {
            for (int j = 0; j <= i + 1; ++j) {
                u[static_cast<std::size_t>(j)] /= kRescaleThreshold;
            }
        }
    }

    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    v[static_cast<std::size_t>(n) - 1] = 1e-30;
    const double w_edge = effective_w(mass, pot, amb, l, E, grid.r(n - 1), hbar);
    v[static_cast<std::size_t>(n) - 2] = 1e-30 * std::exp(std::sqrt(std::max(w_edge, 0.0)) * h);
    const int inner_stop = std::max(i_match - 1, 0);
    for (int i = n - 2; i > inner_stop; --i) {
        v[static_cast<std::size_t>(i) - 1] =
            ((12.0 - 10.0 * f[static_cast<std::size_t>(i)]) * v[static_cast<std::size_t>(i)] -
             f[static_cast<std::size_t>(i) + 1] * v[static_cast<std::size_t>(i) + 1]) /
            f[static_cast<std::size_t>(i) - 1];
        if (std::abs(v[static_cast<std::size_t>(i) - 1]) > kRescaleThreshold) {
            for (int j = i - 1; j < n; ++j) {
                v[static_cast<std::size_t>(j)] /= kRescaleThreshold;
            }
        }
    }

    MatchData out{};
    for (int i = 1; i < i_match; ++i) {
        if (u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i) + 1] < 0.0) {
            ++out.nodes;
        }
    }
    for (int i = i_match; i < n - 1; ++i) {
        if (v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i) + 1] < 0.0) {
            ++out.nodes;
        }
    }

    const double uo_m = u[static_cast<std::size_t>(i_match)];
    const double vi_m = v[static_cast<std::size_t>(i_match)];
    if (uo_m == 0.0 || vi_m == 0.0) {
        out.mismatch = std::numeric_limits<double>::infinity();
        return out;
    }
    const double d_out =
        (u[static_cast<std::size_t>(i_match) + 1] - u[static_cast<std::size_t>(i_match) - 1]) /
        (2.0 * h * uo_m);
    const double d_in =
        (v[static_cast<std::size_t>(i_match) + 1] - v[static_cast<std::size_t>(i_match) - 1]) /
        (2.0 * h * vi_m);
    out.mismatch = d_out - d_in;
    return out;
}

}  // namespace

double effective_w(const MassModel& mass, const PotentialModel& pot, const AmbiguitySet& amb,
                   int l, double E, double r, double hbar) {
    const double centrifugal = static_cast<double>(l) * (l + 1) / (r * r);
    return centrifugal + effective_f(mass, amb, r) +
           2.0 * mass.value(r) * (pot.value(r) - E) / (hbar * hbar);
}

RadialGrid default_grid(const MassModel& mass, const PotentialModel& pot, const AmbiguitySet& amb,
                        int l, double E_trial, double r0, int points, double hbar) {
    // Logarithmic pre-scan for the outermost classically allowed radius.
    double r_turn = r0;
    double r = r0;
    const double r_limit = 1e5 * r0;
    while (r < r_limit) {
        if (effective_w(mass, pot, amb, l, E_trial, r, hbar) < 0.0) {
            r_turn = r;
        }
        r *= 1.02;
    }
    RadialGrid grid;
    grid.r_min = 1e-6 * r0;
    grid.r_max = std::max(3.0 * r_turn, 20.0 * r0);
    grid.points = points;
    return grid;
}

int count_nodes(const MassModel& mass, const PotentialModel& pot, const AmbiguitySet& amb, int l,
                double E, const RadialGrid& grid, double hbar) {
    const int i_match = static_cast<int>(std::lround((0.5 * grid.r_max - grid.r_min) / grid.step()));
    return matched_shoot(mass, pot, amb, l, E, grid,
                         std::max(2, std::min(i_match, grid.points - 3)), hbar)
        .nodes;
}

ShootingResult numerov_eigenvalue(const MassModel& mass, const PotentialModel& pot,
                                  const AmbiguitySet& amb, const QuantumNumbers& qn,
                                  double E_guess, double r0, int points) {
    if (!(E_guess < 0.0)) {
        throw std::invalid_argument("numerov_eigenvalue: bound-state search needs E_guess < 0");
    }
    const double hbar = qn.hbar;
    RadialGrid grid = default_grid(mass, pot, amb, qn.l, E_guess, r0, points, hbar);
    auto nodes_at = [&](double E) {
        return outward_nodes(mass, pot, amb, qn.l, E, grid, hbar);
    };

    // Bracket the target node count, widening geometrically from the seed.
    double e_lo = E_guess * 1.3;  // deeper
    double e_hi = E_guess * 0.7;  // shallower
    int guard = 0;
    while (nodes_at(e_lo) > qn.n_r) {
        e_lo *= 1.5;
        if (++guard > 60) {
            throw StateNotFoundError("numerov_eigenvalue: no lower energy bracket");
        }
    }
    guard = 0;
    while (nodes_at(e_hi) <= qn.n_r) {
        e_hi *= 0.5;
        if (std::abs(e_hi) < 1e-14 * std::abs(E_guess) || ++guard > 60) {
            throw StateNotFoundError("numerov_eigenvalue: no state with requested node count");
        }
    }

    // Node-count bisection down to a narrow window.
    for (int it = 0; it < 200 && (e_hi - e_lo) > 1e-8 * std::abs(e_lo); ++it) {
        const double e_mid = 0.5 * (e_lo + e_hi);
        if (nodes_at(e_mid) > qn.n_r) {
            e_hi = e_mid;
        } else {
            e_lo = e_mid;
        }
    }

    // Log-derivative matching at the grid point nearest the orbit radius.
    const int i_match =
        std::max(2, std::min(static_cast<int>(std::lround((r0 - grid.r_min) / grid.step())),
                             grid.points - 3));
    auto mism = [&](double E) {
        return matched_shoot(mass, pot, amb, qn.l, E, grid, i_match, hbar).mismatch;
    };
    double d_lo = mism(e_lo);
    double d_hi = mism(e_hi);
    double energy;
    if (std::isfinite(d_lo) && std::isfinite(d_hi) && d_lo * d_hi < 0.0) {
        double a = e_lo, b = e_hi, da = d_lo;
        for (int it = 0; it < 120 && (b - a) > 1e-15 * std::abs(a); ++it) {
            const double mid = 0.5 * (a + b);
            const double dm = mism(mid);
            if (!std::isfinite(dm)) {
                break;
            }
            if (da * dm <= 0.0) {
                b = mid;
            } else {
                a = mid;
                da = dm;
            }
        }
        energy = 0.5 * (a + b);
    } else {
        // Mismatch did not bracket (pole in the window); fall back to
        // finishing the node-count bisection at full precision.
        for (int it = 0; it < 200 && (e_hi - e_lo) > 1e-15 * std::abs(e_lo); ++it) {
            const double e_mid = 0.5 * (e_lo + e_hi);
            if (nodes_at(e_mid) > qn.n_r) {
                e_hi = e_mid;
            } else {
                e_lo = e_mid;
            }
        }
        energy = 0.5 * (e_lo + e_hi);
    }

    ShootingResult res;
    res.energy = energy;
    res.grid = grid;
    res.nodes = matched_shoot(mass, pot, amb, qn.l, energy, grid, i_match, hbar).nodes;
    return res;
}

std::vector<double> riccati_series_solve(const ClassicalPoint& cp, const CentrifugalSplit& split,
                                         const TruncatedSeries& m_series,
                                         const TruncatedSeries& f_series,
                                         const QuantumNumbers& qn, int K) {
    const int imax = table_index_bound(K);
    if (m_series.order() < imax || f_series.order() < 2 * K) {
        throw std::invalid_argument("riccati_series_solve: insufficient series order");
    }
    const double r0 = cp.r0;
    const double m0 = m_series[0];

    // Rows of Laurent coefficients; row k has offset x^(1-2k).
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(K) + 1,
                                          std::vector<double>(static_cast<std::size_t>(imax) + 1, 0.0));
    for (int i = 0; i <= imax; ++i) {
        rows[0][static_cast<std::size_t>(i)] = cp.c0.at_or_zero(i);
    }
    std::vector<double> energies(static_cast<std::size_t>(K) + 1, 0.0);
    energies[0] = cp.E0;

    for (int k = 1; k <= K; ++k) {
        auto& row = rows[static_cast<std::size_t>(k)];
        const double gk = split.gamma(k, r0);
        const int pin = 2 * k - 2;
        row[static_cast<std::size_t>(pin)] = (k == 1) ? qn.n_r / r0 : 0.0;
        double e_k = 0.0;

        // Coefficient of x^(2-2k+p) for ascending relative index p.  The
        // order-k equation reads
        //   (1/r0) dC_{k-1}/dx + sum_{j=0}^{k} C_j C_{k-j}
        //     = -2 m E_k + gamma_k (1+x)^{-2} + F delta_{k,2}.
        for (int p = 0; p <= imax; ++p) {
            long double lhs = (p + 3.0L - 2.0L * k) / r0 *
                              rows[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(p)];
            double unknown_coeff = 0.0;
            for (int j = 0; j <= k; ++j) {
                const auto& rj = rows[static_cast<std::size_t>(j)];
                const auto& rk = rows[static_cast<std::size_t>(k - j)];
                for (int a = 0; a <= p; ++a) {
                    const int b = p - a;
                    const bool holds_unknown =
                        p != pin && ((j == k && a == p) || (j == 0 && b == p));
                    if (holds_unknown) {
                        unknown_coeff += rows[0][0];
                        continue;
                    }
                    lhs += static_cast<long double>(rj[static_cast<std::size_t>(a)]) *
                           rk[static_cast<std::size_t>(b)];
                }
            }
            const int q = p - pin;
            long double rhs = 0.0L;
            if (q >= 0) {
                const int sign = (q % 2 == 0) ? 1 : -1;
                rhs += gk * sign * (q + 1);
                if (k == 2) {
                    rhs += f_series[q];
                }
            }
            if (p == pin) {
                e_k = static_cast<double>((rhs - lhs) / (2.0L * m0));
            } else {
                if (q >= 0) {
                    rhs -= 2.0L * m_series[q] * e_k;
                }
                row[static_cast<std::size_t>(p)] = static_cast<double>((rhs - lhs) / unknown_coeff);
            }
        }
        energies[static_cast<std::size_t>(k)] = e_k;
    }
    return energies;
}

}  // namespace pdmspec
