// Command-line front end for the position-dependent-mass spectral library.
// Subcommands:
//   spectrum  - hbar-expansion energies for a list of states
//   table1    - golden reference table with self-check
//   order     - level-ordering and spacing-ratio scan over a parameter grid
//   oracle    - Numerov shooting eigenvalue only

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdmspec/coulomb_pdm.hpp"
#include "pdmspec/oracle.hpp"
#include "pdmspec/sweep.hpp"

using namespace pdmspec;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoOrbit = 2;
constexpr int kExitOracle = 3;
constexpr int kExitTableMismatch = 4;

struct CommonOptions {
    double q = 10.0;
    double m_c = 0.5;
    double a = 0.1;
    double lambda = 2.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double hbar = 1.0;
    int order = 5;
    bool oracle = false;
    int oracle_points = 48001;
    std::string format = "human";
    bool absolute = false;
    int jobs = 0;
    std::vector<std::string> states = {"0,2"};
};

std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_5dp(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.5f", v);
    return buf;
}

double presented(double v, bool absolute) { return absolute ? std::abs(v) : v; }

std::optional<std::pair<int, int>> parse_state(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        return std::nullopt;
    }
    try {
        const int n_r = std::stoi(text.substr(0, comma));
        const int l = std::stoi(text.substr(comma + 1));
        if (n_r < 0 || l < 0) {
            return std::nullopt;
        }
        return std::make_pair(n_r, l);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

/// Plain-text key=value config file; '#' starts a comment.  Returns the
/// pairs in file order so CLI11 can treat them as defaults.
std::vector<std::pair<std::string, std::string>> read_config_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CLI::ValidationError("--config", "cannot open " + path);
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) {
            pairs.emplace_back(key, value);
        }
    }
    return pairs;
}

void add_common_options(CLI::App* cmd, CommonOptions& opt, bool with_states) {
    cmd->add_option("--q", opt.q, "Coulomb coupling");
    cmd->add_option("--mc", opt.m_c, "constant-mass scale m_c");
    cmd->add_option("--a", opt.a, "mass inhomogeneity scale");
    cmd->add_option("--lambda", opt.lambda, "mass power-law exponent");
    cmd->add_option("--alpha", opt.alpha, "kinetic ordering parameter alpha");
    cmd->add_option("--gamma", opt.gamma, "kinetic ordering parameter gamma");
    cmd->add_option("--hbar", opt.hbar, "Planck constant");
    cmd->add_option("--format", opt.format, "output format: human, csv or json")
        ->check(CLI::IsMember({"human", "csv", "json"}));
    cmd->add_flag("--abs", opt.absolute, "print absolute energy values");
    cmd->add_option("--jobs", opt.jobs, "worker threads for grid scans (0 = auto)");
    if (with_states) {
        cmd->add_option("--state", opt.states, "state as n_r,l (repeatable)");
        cmd->add_option("--order", opt.order, "expansion order K")
            ->check(CLI::Range(0, kMaxExpansionOrder));
        cmd->add_flag("--oracle", opt.oracle, "attach the shooting eigenvalue");
        cmd->add_option("--points", opt.oracle_points, "shooting grid points")
            ->check(CLI::Range(2001, 2000001));
    }
}

json state_json(const SweepRecord& rec, const CommonOptions& opt) {
    const SpectrumResult& sr = *rec.spectrum;
    json obj;
    obj["nr"] = rec.job.qn.n_r;
    obj["l"] = rec.job.qn.l;
    obj["corrections"] = sr.corrections;
    obj["partials"] = sr.partials;
    obj["oracle"] = nullptr;
    if (sr.oracle_energy.has_value()) {
        obj["oracle"] = presented(*sr.oracle_energy, opt.absolute);
    }
    obj["r0"] = sr.r0;
    obj["omega"] = sr.omega;
    obj["converged"] = sr.converged;
    obj["meta"]["units"] = "hbar=" + format_sig(opt.hbar) + ", m_c=" + format_sig(opt.m_c);
    if (opt.absolute) {
        for (auto& v : obj["corrections"]) {
            v = std::abs(v.get<double>());
        }
        for (auto& v : obj["partials"]) {
            v = std::abs(v.get<double>());
        }
    }
    return obj;
}

int run_spectrum(const CommonOptions& opt) {
    std::vector<SweepJob> jobs;
    for (const std::string& text : opt.states) {
        const auto state = parse_state(text);
        if (!state.has_value()) {
            std::cerr << "invalid --state '" << text << "': expected n_r,l\n";
            return kExitUsage;
        }
        SweepJob job;
        job.params = PowerLawCoulomb{opt.m_c, opt.a, opt.lambda, opt.q};
        job.qn = QuantumNumbers{state->first, state->second, opt.hbar};
        job.order = opt.order;
        job.with_oracle = opt.oracle;
        job.oracle_points = opt.oracle_points;
        jobs.push_back(job);
    }
    set_sweep_threads(opt.jobs);
    const std::vector<SweepRecord> records =
        opt.jobs == 1 ? run_sweep_serial(jobs) : run_sweep_parallel(jobs);

    // Surface the first hard failure with the documented exit code.
    int exit_code = kExitOk;
    for (const SweepRecord& rec : records) {
        if (rec.ok()) {
            continue;
        }
        std::cerr << "state (" << rec.job.qn.n_r << "," << rec.job.qn.l << "): " << rec.error
                  << "\n";
        const bool orbit_failure = rec.error.find("orbit") != std::string::npos;
        exit_code = std::max(exit_code, orbit_failure ? kExitNoOrbit : kExitOracle);
    }

    if (opt.format == "csv") {
        std::cout << "lambda,a,q,nr,l,k,E_k,E_partial,E_num,converged\n";
        for (const SweepRecord& rec : records) {
            if (!rec.ok()) {
                continue;
            }
            const SpectrumResult& sr = *rec.spectrum;
            for (std::size_t k = 0; k < sr.corrections.size(); ++k) {
                std::cout << format_sig(opt.lambda) << ',' << format_sig(opt.a) << ','
                          << format_sig(opt.q) << ',' << rec.job.qn.n_r << ',' << rec.job.qn.l
                          << ',' << k << ','
                          << format_sig(presented(sr.corrections[k], opt.absolute)) << ','
                          << format_sig(presented(sr.partials[k], opt.absolute)) << ',';
                if (sr.oracle_energy.has_value()) {
                    std::cout << format_sig(presented(*sr.oracle_energy, opt.absolute));
                }
                std::cout << ',' << (sr.converged ? 1 : 0) << '\n';
            }
        }
    } else if (opt.format == "json") {
        json out = json::array();
        for (const SweepRecord& rec : records) {
            if (rec.ok()) {
                out.push_back(state_json(rec, opt));
            }
        }
        std::cout << out.dump(2) << '\n';
    } else {
        for (const SweepRecord& rec : records) {
            if (!rec.ok()) {
                continue;
            }
            const SpectrumResult& sr = *rec.spectrum;
            std::printf("state (n_r=%d, l=%d): r0=%s omega=%s%s\n", rec.job.qn.n_r, rec.job.qn.l,
                        format_5dp(sr.r0).c_str(), format_5dp(sr.omega).c_str(),
                        sr.converged ? "" : "  [not converged]");
            for (std::size_t k = 0; k < sr.partials.size(); ++k) {
                std::printf("  k=%zu  E_k=%s  E^(k)=%s\n", k,
                            format_5dp(presented(sr.corrections[k], opt.absolute)).c_str(),
                            format_5dp(presented(sr.partials[k], opt.absolute)).c_str());
            }
            if (sr.oracle_energy.has_value()) {
                std::printf("  E_num=%s\n",
                            format_5dp(presented(*sr.oracle_energy, opt.absolute)).c_str());
            }
        }
    }
    return exit_code;
}

struct GoldenColumn {
    double lambda;
    int n_r, l;
    double abs_partials[6];
    double abs_num;
};

const std::vector<GoldenColumn> kGolden = {
    {2.0, 0, 2, {1.77778, 1.94444, 1.83333, 1.83000, 1.83111, 1.83111}, 1.83111},
    {3.0, 0, 2, {1.18817, 1.45345, 1.25876, 1.24978, 1.25190, 1.25184}, 1.25183},
    {-2.0, 0, 2, {3.64395, 3.50153, 3.58047, 3.57934, 3.58015, 3.58014}, 3.58014},
    {-3.0, 0, 2, {4.04566, 3.83753, 3.94991, 3.94732, 3.94898, 3.94896}, 3.94897},
    {2.0, 1, 1, {1.77778, 2.27778, 2.07556, 2.05556, 2.06000, 2.06000}, 2.06000},
    {3.0, 1, 1, {1.18817, 1.98401, 1.66974, 1.61180, 1.62647, 1.62478}, 1.62510},
    {-2.0, 1, 1, {3.64395, 3.21669, 3.39891, 3.39064, 3.39352, 3.39330}, 3.39329},
    {-3.0, 1, 1, {4.04566, 3.42127, 3.69143, 3.67228, 3.67887, 3.67837}, 3.67834},
};

int run_table1(const std::string& format, int jobs, bool perturb) {
    std::vector<SweepJob> sweep;
    for (const GoldenColumn& col : kGolden) {
        SweepJob job;
        job.params = PowerLawCoulomb{0.5, 0.1, col.lambda, 10.0};
        job.qn = QuantumNumbers{col.n_r, col.l};
        job.order = 5;
        job.with_oracle = true;
        sweep.push_back(job);
    }
    set_sweep_threads(jobs);
    const std::vector<SweepRecord> records = run_sweep_parallel(sweep);

    std::vector<std::string> diffs;
    auto check_cell = [&](double value, double golden, const std::string& label) {
        const double shown = std::abs(value) + (perturb ? 1e-3 : 0.0);
        if (std::abs(shown - golden) >= 5.01e-6) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s: computed %.5f, reference %.5f", label.c_str(),
                          shown, golden);
            diffs.emplace_back(buf);
        }
        return shown;
    };

    std::vector<std::vector<double>> cells(records.size());
    std::vector<double> nums(records.size());
    for (std::size_t c = 0; c < records.size(); ++c) {
        const GoldenColumn& col = kGolden[c];
        if (!records[c].ok()) {
            std::cerr << "column lambda=" << col.lambda << " failed: " << records[c].error << "\n";
            return kExitOracle;
        }
        const SpectrumResult& sr = *records[c].spectrum;
        const std::string tag = "lambda=" + format_sig(col.lambda) + " (n_r=" +
                                std::to_string(col.n_r) + ",l=" + std::to_string(col.l) + ")";
        for (int k = 0; k <= 5; ++k) {
            cells[c].push_back(
                check_cell(sr.partials[static_cast<std::size_t>(k)], col.abs_partials[k],
                           tag + " k=" + std::to_string(k)));
        }
        nums[c] = check_cell(*sr.oracle_energy, col.abs_num, tag + " E_num");
    }

    if (format == "csv") {
        std::cout << "lambda,nr,l,k,E_partial,E_num\n";
        for (std::size_t c = 0; c < records.size(); ++c) {
            for (int k = 0; k <= 5; ++k) {
                std::cout << format_sig(kGolden[c].lambda) << ',' << kGolden[c].n_r << ','
                          << kGolden[c].l << ',' << k << ','
                          << format_sig(cells[c][static_cast<std::size_t>(k)]) << ','
                          << format_sig(nums[c]) << '\n';
            }
        }
    } else if (format == "json") {
        json out = json::array();
        for (std::size_t c = 0; c < records.size(); ++c) {
            json obj;
            obj["lambda"] = kGolden[c].lambda;
            obj["nr"] = kGolden[c].n_r;
            obj["l"] = kGolden[c].l;
            obj["partials"] = cells[c];
            obj["oracle"] = nums[c];
            out.push_back(obj);
        }
        std::cout << out.dump(2) << '\n';
    } else {
        std::printf("k     ");
        for (const GoldenColumn& col : kGolden) {
            std::printf(" (%d,%d) L=%-4s", col.n_r, col.l, format_sig(col.lambda).c_str());
        }
        std::printf("\n");
        for (int k = 0; k <= 5; ++k) {
            std::printf("%-6d", k);
            for (std::size_t c = 0; c < records.size(); ++c) {
                std::printf(" %-12s", format_5dp(cells[c][static_cast<std::size_t>(k)]).c_str());
            }
            std::printf("\n");
        }
        std::printf("E_num ");
        for (std::size_t c = 0; c < records.size(); ++c) {
            std::printf(" %-12s", format_5dp(nums[c]).c_str());
        }
        std::printf("\n");
    }

    if (!diffs.empty()) {
        std::cerr << "reference-table mismatches:\n";
        for (const std::string& d : diffs) {
            std::cerr << "  " << d << "\n";
        }
        return kExitTableMismatch;
    }
    return kExitOk;
}

int run_order(const CommonOptions& opt, const std::vector<double>& lambdas,
              const std::vector<double>& a_values, int n) {
    if (n < 3) {
        std::cerr << "--n must be at least 3\n";
        return kExitUsage;
    }
    struct Point {
        double lambda, a;
    };
    std::vector<Point> points;
    for (double lam : lambdas) {
        for (double a : a_values) {
            points.push_back({lam, a});
        }
    }

    std::vector<SweepJob> jobs;
    for (const Point& pt : points) {
        for (int n_r = 0; n_r < n; ++n_r) {
            SweepJob job;
            job.params = PowerLawCoulomb{opt.m_c, pt.a, pt.lambda, opt.q};
            job.qn = QuantumNumbers{n_r, n - 1 - n_r, opt.hbar};
            job.order = 4;
            job.with_oracle = true;
            job.oracle_points = opt.oracle_points;
            jobs.push_back(job);
        }
    }
    set_sweep_threads(opt.jobs);
    const std::vector<SweepRecord> records = run_sweep_parallel(jobs);

    const bool csv = opt.format == "csv";
    if (csv) {
        std::cout << "lambda,a,n,prediction,observed,R_min,eq200_ok,status\n";
    }
    int violations = 0, skipped = 0, checked = 0;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const Point& pt = points[p];
        const std::size_t base = p * static_cast<std::size_t>(n);
        std::vector<double> e(static_cast<std::size_t>(n));
        bool complete = true;
        for (int n_r = 0; n_r < n; ++n_r) {
            const SweepRecord& rec = records[base + static_cast<std::size_t>(n_r)];
            if (!rec.ok() || !rec.spectrum->oracle_energy.has_value()) {
                complete = false;
                break;
            }
            e[static_cast<std::size_t>(n_r)] = *rec.spectrum->oracle_energy;
        }
        std::string prediction = pt.lambda > 0.0  ? "normal"
                                 : pt.lambda < 0.0 ? "inverted"
                                                   : "degenerate";
        if (!complete) {
            ++skipped;
            if (csv) {
                std::cout << format_sig(pt.lambda) << ',' << format_sig(pt.a) << ',' << n << ','
                          << prediction << ",,,," << "no-orbit\n";
            } else {
                std::printf("lambda=%-6s a=%-5s  skipped (no stable orbit)\n",
                            format_sig(pt.lambda).c_str(), format_sig(pt.a).c_str());
            }
            continue;
        }
        ++checked;

        std::string observed = "degenerate";
        bool order_ok = true;
        if (pt.lambda != 0.0 && pt.a != 0.0) {
            bool all_down = true, all_up = true;
            for (int n_r = 1; n_r < n; ++n_r) {
                const double diff =
                    e[static_cast<std::size_t>(n_r)] - e[static_cast<std::size_t>(n_r) - 1];
                all_down = all_down && diff < 0.0;
                all_up = all_up && diff > 0.0;
            }
            observed = all_down ? "normal" : all_up ? "inverted" : "mixed";
            order_ok = observed == prediction;
        }

        double r_min = std::numeric_limits<double>::infinity();
        for (int n_r = 1; n_r + 1 < n; ++n_r) {
            const double ratio = (e[static_cast<std::size_t>(n_r) - 1] -
                                  e[static_cast<std::size_t>(n_r)]) /
                                 (e[static_cast<std::size_t>(n_r)] -
                                  e[static_cast<std::size_t>(n_r) + 1]);
            r_min = std::min(r_min, ratio);
        }
        const bool r_ok = pt.lambda == 0.0 || pt.a == 0.0 || !(r_min <= 1.0);

        bool eq200_ok = true;
        const double balmer = -opt.m_c * opt.q * opt.q / (2.0 * opt.hbar * opt.hbar * n * n);
        for (int n_r = 0; n_r < n; ++n_r) {
            const double energy = e[static_cast<std::size_t>(n_r)];
            if (pt.lambda > 0.0 && pt.a > 0.0 && energy < balmer - 1e-7) {
                eq200_ok = false;
            }
            if (pt.lambda < 0.0 && pt.a > 0.0 && energy > balmer + 1e-7) {
                eq200_ok = false;
            }
        }

        const bool ok = order_ok && r_ok && eq200_ok;
        if (!ok) {
            ++violations;
        }
        if (csv) {
            std::cout << format_sig(pt.lambda) << ',' << format_sig(pt.a) << ',' << n << ','
                      << prediction << ',' << observed << ','
                      << (std::isfinite(r_min) ? format_sig(r_min) : "") << ','
                      << (eq200_ok ? 1 : 0) << ',' << (ok ? "ok" : "violation") << '\n';
        } else {
            std::printf("lambda=%-6s a=%-5s  order %s/%s  R_min=%s  mass-bound %s  %s\n",
                        format_sig(pt.lambda).c_str(), format_sig(pt.a).c_str(),
                        prediction.c_str(), observed.c_str(),
                        std::isfinite(r_min) ? format_5dp(r_min).c_str() : "n/a",
                        eq200_ok ? "ok" : "violated", ok ? "" : "  <-- violation");
        }
    }
    if (!csv) {
        std::printf("checked %d grid points, skipped %d, violations %d\n", checked, skipped,
                    violations);
    }
    return violations == 0 ? kExitOk : kExitOracle;
}

int run_oracle(const CommonOptions& opt) {
    const auto state = parse_state(opt.states.empty() ? "0,2" : opt.states.front());
    if (!state.has_value()) {
        std::cerr << "invalid --state: expected n_r,l\n";
        return kExitUsage;
    }
    const PowerLawCoulomb params{opt.m_c, opt.a, opt.lambda, opt.q};
    const QuantumNumbers qn{state->first, state->second, opt.hbar};
    try {
        const SpectrumResult sr = hbar_expansion_spectrum(params.mass(), params.potential(),
                                                          AmbiguitySet{opt.alpha, opt.gamma}, qn,
                                                          std::min(opt.order, 4));
        const ShootingResult res =
            numerov_eigenvalue(params.mass(), params.potential(),
                               AmbiguitySet{opt.alpha, opt.gamma}, qn, sr.partials.back(), sr.r0,
                               opt.oracle_points);
        const double shown = presented(res.energy, opt.absolute);
        if (opt.format == "csv") {
            std::cout << "lambda,a,q,nr,l,E_num,nodes\n"
                      << format_sig(opt.lambda) << ',' << format_sig(opt.a) << ','
                      << format_sig(opt.q) << ',' << qn.n_r << ',' << qn.l << ','
                      << format_sig(shown) << ',' << res.nodes << '\n';
        } else if (opt.format == "json") {
            json obj;
            obj["E_num"] = shown;
            obj["nodes"] = res.nodes;
            obj["grid_points"] = res.grid.points;
            obj["meta"]["units"] = "hbar=" + format_sig(opt.hbar) + ", m_c=" + format_sig(opt.m_c);
            std::cout << obj.dump(2) << '\n';
        } else {
            std::printf("E_num=%s nodes=%d\n", format_5dp(shown).c_str(), res.nodes);
        }
    } catch (const NoStableOrbitError& err) {
        std::cerr << "no stable orbit: " << err.what() << "\n";
        return kExitNoOrbit;
    } catch (const std::exception& err) {
        std::cerr << "oracle failure: " << err.what() << "\n";
        return kExitOracle;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound-state spectra for the radial Schroedinger equation with a "
                 "position-dependent mass"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string config_path;

    CLI::App* spectrum = app.add_subcommand("spectrum", "hbar-expansion spectrum per state");
    add_common_options(spectrum, opt, true);

    CLI::App* table1 = app.add_subcommand("table1", "golden reference table with self-check");
    std::string table_format = "human";
    int table_jobs = 0;
    bool table_perturb = false;
    table1->add_option("--format", table_format, "human, csv or json")
        ->check(CLI::IsMember({"human", "csv", "json"}));
    table1->add_option("--jobs", table_jobs, "worker threads");
    table1->add_flag("--self-test-perturb", table_perturb,
                     "negative control: offset every cell before comparison");

    CLI::App* order = app.add_subcommand("order", "ordering-inequality scan over a grid");
    std::vector<double> lambdas = {-3.0, -2.0, -1.0, 1.0, 2.0, 3.0};
    std::vector<double> a_values = {0.05, 0.1};
    int order_n = 3;
    add_common_options(order, opt, false);
    order->add_option("--lambdas", lambdas, "grid of power-law exponents");
    order->add_option("--a-values", a_values, "grid of inhomogeneity scales");
    order->add_option("--n", order_n, "principal quantum number of the scanned shell");
    order->add_option("--points", opt.oracle_points, "shooting grid points");

    CLI::App* oracle = app.add_subcommand("oracle", "shooting eigenvalue only");
    add_common_options(oracle, opt, true);

    for (CLI::App* sub : {spectrum, table1, order, oracle}) {
        sub->add_option("--config", config_path, "key=value defaults file (flags override)");
    }

    try {
        // Apply config-file defaults before the real parse so that explicit
        // flags win.
        if (argc > 1) {
            std::vector<std::string> args(argv + 1, argv + argc);
            for (std::size_t i = 0; i + 1 < args.size(); ++i) {
                if (args[i] == "--config") {
                    for (const auto& [key, value] : read_config_pairs(args[i + 1])) {
                        for (CLI::App* sub : {spectrum, table1, order, oracle}) {
                            if (CLI::Option* o = sub->get_option_no_throw("--" + key)) {
                                o->default_val(value);
                            }
                        }
                    }
                }
            }
        }
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (spectrum->parsed()) {
            return run_spectrum(opt);
        }
        if (table1->parsed()) {
            return run_table1(table_format, table_jobs, table_perturb);
        }
        if (order->parsed()) {
            return run_order(opt, lambdas, a_values, order_n);
        }
        if (oracle->parsed()) {
            return run_oracle(opt);
        }
    } catch (const NoStableOrbitError& err) {
        std::cerr << "no stable orbit: " << err.what() << "\n";
        return kExitNoOrbit;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitOracle;
    }
    return kExitUsage;
}
