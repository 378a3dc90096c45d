#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dfpep/config.hpp"
#include "dfpep/io.hpp"
#include "dfpep/model.hpp"
#include "dfpep/numeric.hpp"
#include "dfpep/oracle.hpp"
#include "dfpep/spectrum.hpp"
#include "dfpep/table1.hpp"
#include "dfpep/thermo.hpp"
#include "dfpep/wavefunction.hpp"

namespace dfpep::cli {

struct GlobalFlags {
    EtaBranch eta_branch = EtaBranch::plus;
    Q1Mode q1_mode = Q1Mode::printed;
    thermo::Bounds bounds = thermo::Bounds::printed;
};

inline spectrum::SolveWindow make_window(const RunConfig& cfg) {
    spectrum::SolveWindow w = spectrum::default_window(cfg.constants.mu);
    if (cfg.solver.window_lo.has_value()) {
        w.e_lo = *cfg.solver.window_lo;
    }
    if (cfg.solver.window_hi.has_value()) {
        w.e_hi = *cfg.solver.window_hi;
    }
    w.grid = cfg.solver.grid;
    return w;
}

inline const char* branch_name(spectrum::Branch b) {
    switch (b) {
        case spectrum::Branch::negative:
            return "negative";
        case spectrum::Branch::positive:
            return "positive";
        default:
            return "extra";
    }
}

/// Timestamped sidecar; the primary outputs stay byte-identical across runs.
inline void write_run_meta(const std::filesystem::path& dir, const std::string& command) {
    json meta;
    meta["command"] = command;
    meta["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    io::write_file(dir / "run_meta.json", meta.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumRun {
    std::vector<StateLabel> states;
    std::vector<spectrum::SolveResult> results; // aligned with states
    std::vector<std::string> failures;          // human-readable, one per failed state
};

inline SpectrumRun run_spectrum(const RunConfig& cfg) {
    SpectrumRun run;
    run.states = cfg.states.states;
    std::sort(run.states.begin(), run.states.end(), [](const StateLabel& a, const StateLabel& b) {
        return std::tie(a.n, a.l, a.D) < std::tie(b.n, b.l, b.D);
    });
    const spectrum::SolveWindow window = make_window(cfg);
    run.results.resize(run.states.size());
    std::vector<std::string> errors(run.states.size());
    numeric::parallel_for(run.states.size(), [&](std::size_t i) {
        try {
            run.results[i] = spectrum::solve_relativistic(run.states[i], cfg.potential,
                                                          cfg.scheme, cfg.constants.mu, window);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < run.states.size(); ++i) {
        if (!errors[i].empty()) {
            const auto& st = run.states[i];
            run.failures.push_back("state (" + std::to_string(st.n) + "," +
                                   std::to_string(st.l) + "," + std::to_string(st.D) +
                                   "): " + errors[i]);
        }
    }
    return run;
}

inline int cmd_spectrum(const RunConfig& cfg, const std::filesystem::path& out_dir,
                        const GlobalFlags&) {
    const SpectrumRun run = run_spectrum(cfg);

    io::CsvWriter csv({"n", "l", "D", "branch", "E", "residual", "gamma1_ok", "radicand_ok"});
    json jstates = json::array();
    for (std::size_t i = 0; i < run.states.size(); ++i) {
        const auto& st = run.states[i];
        const auto& res = run.results[i];
        json jroots = json::array();
        for (const auto& r : res.roots) {
            csv.add_row({std::to_string(st.n), std::to_string(st.l), std::to_string(st.D),
                         branch_name(r.branch), io::format_double(r.E),
                         io::format_double(r.residual), r.gamma1_ok ? "1" : "0",
                         r.radicand_ok ? "1" : "0"});
            json jr;
            jr["E"] = r.E;
            jr["residual"] = r.residual;
            jr["branch"] = branch_name(r.branch);
            jr["gamma1_ok"] = r.gamma1_ok;
            jr["radicand_ok"] = r.radicand_ok;
            if (std::isfinite(r.nu_residual)) {
                jr["nu_residual"] = r.nu_residual;
            }
            jroots.push_back(jr);
        }
        json js;
        js["n"] = st.n;
        js["l"] = st.l;
        js["D"] = st.D;
        js["roots"] = jroots;
        json jex = json::array();
        for (const auto& ex : res.excluded) {
            jex.push_back({{"lo", ex.lo}, {"hi", ex.hi}});
        }
        js["excluded"] = jex;
        js["extra_roots"] = res.extra_roots;
        jstates.push_back(js);
    }
    json out;
    out["states"] = jstates;
    out["failures"] = run.failures;

    io::write_file(out_dir / "spectrum.csv", csv.str());
    io::write_file(out_dir / "spectrum.json", out.dump(2) + "\n");
    write_run_meta(out_dir, "spectrum");
    return run.failures.empty() ? 0 : 3;
}

// ---------------------------------------------------------------------------
// validate-table1
// ---------------------------------------------------------------------------

struct Table1EntryCheck {
    int n = 0, l = 0, D = 0;
    char branch = '+';
    double e_table = 0.0;
    std::optional<double> e_solver;          // nearest root
    std::optional<double> delta;             // |e_solver - e_table|
    std::optional<double> residual_at_table; // Eq-residual evaluated at the printed value
    bool table_point_excluded = false;       // printed E sits in the complex-radicand region
    std::optional<double> solver_residual;   // residual at the matched root
};

struct Table1Candidate {
    double q = 1.0;
    double c0 = 0.0;
    std::string c0_label;
    std::vector<Table1EntryCheck> entries;
    double max_abs_delta = 0.0;
    double mean_abs_delta = 0.0;
    int within_1e6 = 0;
    int missing = 0;
};

struct Table1Report {
    std::vector<Table1Candidate> candidates;
    int best_index = 0;
    bool reproduced_1e6 = false;
};

inline Table1Report run_validate_table1(int grid = 200001) {
    struct Candidate {
        double q;
        double c0;
        const char* label;
    };
    const Candidate cands[] = {{1.0, 0.0, "0"}, {1.0, 1.0 / 12.0, "1/12"}, {1.0, 2.0, "2"}};

    Table1Report report;
    for (const auto& cand : cands) {
        Table1Candidate out;
        out.q = cand.q;
        out.c0 = cand.c0;
        out.c0_label = cand.label;
        const PotentialParams pot = table1::caption_potential(cand.q);
        const ApproxScheme scheme = table1::caption_scheme(cand.c0);
        spectrum::SolveWindow window = spectrum::default_window(table1::caption_mu);
        window.grid = grid;

        // one solve per distinct (n, l, D)
        std::vector<spectrum::SolveResult> solved(table1::entries.size());
        numeric::parallel_for(table1::entries.size(), [&](std::size_t i) {
            const auto& e = table1::entries[i];
            solved[i] = spectrum::solve_relativistic(StateLabel{e.n, e.l, e.D}, pot, scheme,
                                                     table1::caption_mu, window);
        });

        double sum_delta = 0.0;
        int counted = 0;
        for (std::size_t i = 0; i < table1::entries.size(); ++i) {
            const auto& e = table1::entries[i];
            const StateLabel st{e.n, e.l, e.D};
            for (char side : {'+', '-'}) {
                Table1EntryCheck chk;
                chk.n = e.n;
                chk.l = e.l;
                chk.D = e.D;
                chk.branch = side;
                chk.e_table = side == '+' ? e.e_positive : e.e_negative;
                const auto res_at = spectrum::relativistic_residual(chk.e_table, st, pot, scheme,
                                                                    table1::caption_mu);
                if (res_at.has_value()) {
                    chk.residual_at_table = *res_at;
                } else {
                    chk.table_point_excluded = true;
                }
                double best = 1e300;
                for (const auto& r : solved[i].roots) {
                    const double d = std::abs(r.E - chk.e_table);
                    if (d < best) {
                        best = d;
                        chk.e_solver = r.E;
                        chk.delta = d;
                        chk.solver_residual = r.residual;
                    }
                }
                if (chk.delta.has_value()) {
                    out.max_abs_delta = std::max(out.max_abs_delta, *chk.delta);
                    sum_delta += *chk.delta;
                    ++counted;
                    if (*chk.delta <= 1e-6) {
                        ++out.within_1e6;
                    }
                } else {
                    ++out.missing;
                }
                out.entries.push_back(chk);
            }
        }
        out.mean_abs_delta = counted > 0 ? sum_delta / counted : 0.0;
        report.candidates.push_back(std::move(out));
    }

    for (std::size_t i = 1; i < report.candidates.size(); ++i) {
        if (report.candidates[i].max_abs_delta <
            report.candidates[report.best_index].max_abs_delta) {
            report.best_index = static_cast<int>(i);
        }
    }
    for (const auto& cand : report.candidates) {
        if (cand.missing == 0 && cand.max_abs_delta <= 1e-6) {
            report.reproduced_1e6 = true;
        }
    }
    return report;
}

inline json table1_report_to_json(const Table1Report& report) {
    json out;
    out["dataset_version"] = table1::dataset_version;
    out["caption"] = {{"mu", table1::caption_mu},     {"p1", table1::caption_p1},
                      {"p2", table1::caption_p2},     {"p3", table1::caption_p3},
                      {"lambda", table1::caption_lambda}, {"omega", table1::caption_omega},
                      {"alpha", table1::caption_alpha}};
    json jcands = json::array();
    for (const auto& cand : report.candidates) {
        json jc;
        jc["q"] = cand.q;
        jc["c0"] = cand.c0;
        jc["c0_label"] = cand.c0_label;
        json jentries = json::array();
        for (const auto& e : cand.entries) {
            json je;
            je["n"] = e.n;
            je["l"] = e.l;
            je["D"] = e.D;
            je["branch"] = std::string(1, e.branch);
            je["e_table"] = e.e_table;
            if (e.e_solver.has_value()) {
                je["e_solver"] = *e.e_solver;
                je["delta"] = *e.delta;
                je["solver_residual"] = *e.solver_residual;
            }
            if (e.residual_at_table.has_value()) {
                je["residual_at_table"] = *e.residual_at_table;
            }
            je["table_point_excluded"] = e.table_point_excluded;
            jentries.push_back(je);
        }
        jc["entries"] = jentries;
        jc["summary"] = {{"max_abs_delta", cand.max_abs_delta},
                         {"mean_abs_delta", cand.mean_abs_delta},
                         {"within_1e-6", cand.within_1e6},
                         {"missing", cand.missing}};
        jcands.push_back(jc);
    }
    out["candidates"] = jcands;
    out["best_candidate_index"] = report.best_index;
    out["reproduced_to_1e-6"] = report.reproduced_1e6;
    return out;
}

inline int cmd_validate_table1(const std::optional<RunConfig>& cfg,
                               const std::filesystem::path& out_dir, const GlobalFlags&) {
    const int grid = cfg.has_value() ? cfg->solver.grid : 200001;
    const Table1Report report = run_validate_table1(grid);

    io::write_file(out_dir / "table1_report.json", table1_report_to_json(report).dump(2) + "\n");

    io::CsvWriter csv({"q", "c0", "n", "l", "D", "branch", "e_table", "e_solver", "delta",
                       "residual_at_table", "table_point_excluded", "solver_residual"});
    for (const auto& cand : report.candidates) {
        for (const auto& e : cand.entries) {
            csv.add_row({io::format_double(cand.q), cand.c0_label, std::to_string(e.n),
                         std::to_string(e.l), std::to_string(e.D), std::string(1, e.branch),
                         io::format_double(e.e_table),
                         e.e_solver ? io::format_double(*e.e_solver) : "",
                         e.delta ? io::format_double(*e.delta) : "",
                         e.residual_at_table ? io::format_double(*e.residual_at_table) : "",
                         e.table_point_excluded ? "1" : "0",
                         e.solver_residual ? io::format_double(*e.solver_residual) : ""});
        }
    }
    io::write_file(out_dir / "table1_report.csv", csv.str());
    write_run_meta(out_dir, "validate-table1");
    return 0;
}

// ---------------------------------------------------------------------------
// wavefunction
// ---------------------------------------------------------------------------

inline int cmd_wavefunction(const RunConfig& cfg, const std::filesystem::path& out_dir,
                            const GlobalFlags&) {
    const auto& wcfg = cfg.wavefunction;
    double energy = 0.0;
    if (wcfg.energy.has_value()) {
        energy = *wcfg.energy;
    } else if (wcfg.relativistic) {
        const auto res = spectrum::solve_relativistic(wcfg.state, cfg.potential, cfg.scheme,
                                                      cfg.constants.mu, make_window(cfg));
        const spectrum::RootReport* pick = nullptr;
        for (const auto& r : res.roots) {
            const bool want_positive = wcfg.branch == "positive";
            if ((want_positive && r.branch == spectrum::Branch::positive) ||
                (!want_positive && r.branch == spectrum::Branch::negative)) {
                pick = &r;
            }
        }
        if (pick == nullptr) {
            throw InvalidDomainError("wavefunction: no " + wcfg.branch +
                                     "-branch root found in the window");
        }
        energy = pick->E;
    } else {
        energy = spectrum::nonrelativistic_energy(wcfg.state, cfg.potential, cfg.scheme,
                                                  cfg.constants.m, cfg.constants.hbar);
    }

    wavefun::RadialSolution sol =
        wcfg.relativistic
            ? wavefun::make_relativistic_solution(cfg.potential, cfg.scheme, wcfg.state, energy,
                                                  cfg.constants.mu)
            : wavefun::make_nonrelativistic_solution(cfg.potential, cfg.scheme, wcfg.state,
                                                     energy, cfg.constants.m, cfg.constants.hbar);
    if (!sol.valid()) {
        throw InvalidDomainError("wavefunction: solution invalid at E = " +
                                 io::format_double(energy) +
                                 " (gamma1 > 0 or complex radicand)");
    }
    sol = wavefun::normalize(sol, wcfg.r_max.value_or(0.0));

    // extend the emission window until the curve has decayed to 1e-8 of peak
    double r_max = wcfg.r_max.value_or(
        std::max(20.0, 30.0 / (2.0 * sol.alpha * std::max(sol.exponent_z, 0.25))));
    double peak = 0.0;
    for (int i = 1; i <= 512; ++i) {
        peak = std::max(peak, std::abs(wavefun::eval_F(sol, r_max * i / 512.0)));
    }
    for (int guard = 0; guard < 40 && std::abs(wavefun::eval_F(sol, r_max)) > 1e-8 * peak;
         ++guard) {
        r_max *= 1.5;
    }

    io::CsvWriter csv({"r", "F", "R"});
    const int samples = wcfg.samples;
    for (int i = 1; i <= samples; ++i) {
        const double r = r_max * static_cast<double>(i) / samples;
        const double f = wavefun::eval_F(sol, r);
        csv.add_row({io::format_double(r), io::format_double(f),
                     io::format_double(wavefun::eval_R(sol, r))});
    }
    io::write_file(out_dir / "wavefunction.csv", csv.str());

    const auto nodes = wavefun::count_nodes(sol, r_max, std::max(2000, samples));
    json meta;
    meta["E"] = energy;
    meta["context"] = wcfg.relativistic ? "relativistic" : "nonrelativistic";
    meta["state"] = {{"n", wcfg.state.n}, {"l", wcfg.state.l}, {"D", wcfg.state.D}};
    meta["exponent_z"] = sol.exponent_z;
    meta["exponent_w"] = sol.exponent_w;
    meta["norm"] = sol.norm;
    meta["nodes"] = nodes.nodes;
    meta["tail_decayed"] = nodes.tail_decayed;
    meta["r_max"] = r_max;
    io::write_file(out_dir / "wavefunction_meta.json", meta.dump(2) + "\n");
    write_run_meta(out_dir, "wavefunction");
    return 0;
}

// ---------------------------------------------------------------------------
// thermo
// ---------------------------------------------------------------------------

/// Re-derives the well-depth constant Q1 so the level cap lands exactly on
/// eta: with h = eta + sigma, sqrt(Q1) = (h^2 + Q2)/(2h). This is the only
/// reading under which a larger cap corresponds to a deeper well, which the
/// figure texts presuppose; plain truncation cannot reorder Z with eta.
inline std::optional<thermo::ThermoCoeffs> eta_tied_coeffs(const RecastCoeffs& base, double alpha,
                                                           double m, double hbar, double beta,
                                                           double eta_target, double kB = 1.0) {
    const double h = eta_target + base.sigma;
    const double sqrt_q1 = (h * h + base.Q2) / (2.0 * h);
    if (!(h > 0.0) || sqrt_q1 < 0.0) {
        return std::nullopt;
    }
    RecastCoeffs tied = base;
    tied.Q1 = sqrt_q1 * sqrt_q1;
    tied.eta = eta_target;
    return thermo::thermo_coeffs(tied, alpha, m, hbar, beta, kB);
}

inline std::vector<double> log_beta_grid(double beta_min, double beta_max, int per_decade) {
    std::vector<double> grid;
    const double decades = std::log10(beta_max / beta_min);
    const int count = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        grid.push_back(beta_min * std::pow(beta_max / beta_min, f));
    }
    return grid;
}

namespace detail_thermo {

inline int levels_for(const thermo::ThermoCoeffs& tc) {
    RecastCoeffs rc;
    rc.sigma = tc.sigma;
    rc.eta = tc.eta;
    return spectrum::bound_state_count(rc);
}

struct ZColumns {
    std::string z_sum, z_quad, z_quad_status, z_closed, z_closed_status;
};

inline ZColumns z_columns(const thermo::ThermoCoeffs& tc, thermo::Bounds bounds) {
    ZColumns out;
    try {
        out.z_sum = io::format_double(thermo::partition_sum(tc, levels_for(tc)));
    } catch (const std::exception&) {
        out.z_sum = ""; // blank cell marks an overflowed sum
    }
    try {
        out.z_quad = io::format_double(thermo::partition_integral(tc, bounds));
        out.z_quad_status = "ok";
    } catch (const DivergenceError&) {
        out.z_quad_status = "divergent";
    } catch (const std::exception& e) {
        out.z_quad_status = e.what();
    }
    try {
        const double value = thermo::partition_closed_form(tc).value;
        out.z_closed = io::format_double(value);
        // a partition function must be positive; the printed form can dip
        // below zero and that gets flagged, not hidden
        out.z_closed_status = value > 0.0 ? "ok" : "nonpositive-flagged";
    } catch (const InvalidDomainError&) {
        out.z_closed_status = "complex-argument";
    } catch (const std::exception& e) {
        out.z_closed_status = e.what();
    }
    return out;
}

} // namespace detail_thermo

inline int cmd_thermo(const RunConfig& cfg, const std::filesystem::path& out_dir,
                      const GlobalFlags& flags) {
    const auto& t = cfg.thermo;
    auto want = [&](const std::string& name) {
        return t.figures.empty() ||
               std::find(t.figures.begin(), t.figures.end(), name) != t.figures.end();
    };
    const double alpha = cfg.potential.alpha;
    const double m = cfg.constants.m;
    const double hbar = cfg.constants.hbar;
    const double kB = cfg.constants.kB;
    json meta;
    meta["beta_min"] = t.beta_min;
    meta["beta_max"] = t.beta_max;
    meta["points_per_decade"] = t.points_per_decade;
    meta["bounds"] = flags.bounds == thermo::Bounds::printed ? "printed" : "shifted";
    json issues = json::array();

    auto base_recast = [&](const PotentialParams& pot, const StateLabel& st) {
        return recast_coeffs(pot, cfg.scheme, st, cfg.constants, flags.q1_mode,
                             flags.eta_branch);
    };

    const StateLabel base_state{0, 0, 3};
    const std::vector<double> beta_grid =
        log_beta_grid(t.beta_min, t.beta_max, t.points_per_decade);

    // fig7: Z(beta) for the small eta set, well depth tied to eta
    if (want("fig7")) {
        io::CsvWriter csv({"beta", "eta", "z_sum", "z_quad", "z_quad_status", "z_closed",
                           "z_closed_status"});
        const RecastCoeffs base = base_recast(cfg.potential, base_state);
        for (double beta : beta_grid) {
            for (double eta : t.eta_small) {
                const auto tc = eta_tied_coeffs(base, alpha, m, hbar, beta, eta, kB);
                if (!tc.has_value()) {
                    issues.push_back("fig7: eta " + io::format_double(eta) +
                                     " unreachable from the preset Q2");
                    continue;
                }
                const auto cols = detail_thermo::z_columns(*tc, flags.bounds);
                csv.add_row({io::format_double(beta), io::format_double(eta), cols.z_sum,
                             cols.z_quad, cols.z_quad_status, cols.z_closed,
                             cols.z_closed_status});
            }
        }
        io::write_file(out_dir / "fig7_partition_vs_beta.csv", csv.str());
    }

    // fig8/fig9: Z(D) at fixed low/high beta; eta acts as a level cap
    for (const auto& [name, beta, file] :
         {std::tuple<const char*, double, const char*>{"fig8", t.beta_low,
                                                       "fig8_partition_vs_D_low_beta.csv"},
          std::tuple<const char*, double, const char*>{"fig9", t.beta_high,
                                                       "fig9_partition_vs_D_high_beta.csv"}}) {
        if (!want(name)) {
            continue;
        }
        io::CsvWriter csv({"D", "eta", "z_sum", "z_quad", "z_quad_status", "z_closed",
                           "z_closed_status"});
        for (int D = 1; D <= 6; ++D) {
            for (double eta : t.eta_small) {
                try {
                    RecastCoeffs rc = base_recast(cfg.potential, StateLabel{0, 0, D});
                    rc.eta = eta; // cap override, documented preset semantics
                    const auto tc = thermo::thermo_coeffs(rc, alpha, m, hbar, beta, kB);
                    const auto cols = detail_thermo::z_columns(tc, flags.bounds);
                    csv.add_row({std::to_string(D), io::format_double(eta), cols.z_sum,
                                 cols.z_quad, cols.z_quad_status, cols.z_closed,
                                 cols.z_closed_status});
                } catch (const std::exception& e) {
                    issues.push_back(std::string(name) + ": D=" + std::to_string(D) + ": " +
                                     e.what());
                }
            }
        }
        io::write_file(out_dir / file, csv.str());
    }

    // fig10/fig11: Z(p2) sweeps at fixed low/high beta
    for (const auto& [name, beta, file] :
         {std::tuple<const char*, double, const char*>{"fig10", t.beta_low,
                                                       "fig10_partition_vs_p2_low_beta.csv"},
          std::tuple<const char*, double, const char*>{"fig11", t.beta_high,
                                                       "fig11_partition_vs_p2_high_beta.csv"}}) {
        if (!want(name)) {
            continue;
        }
        io::CsvWriter csv({"p2", "eta", "z_sum", "z_quad", "z_quad_status", "z_closed",
                           "z_closed_status"});
        for (int i = 0; i < t.p2_points; ++i) {
            const double p2 =
                t.p2_min + (t.p2_max - t.p2_min) * i / std::max(1, t.p2_points - 1);
            for (double eta : t.eta_small) {
                try {
                    PotentialParams pot = cfg.potential;
                    pot.p2 = p2;
                    RecastCoeffs rc = base_recast(pot, base_state);
                    rc.eta = eta;
                    const auto tc = thermo::thermo_coeffs(rc, alpha, m, hbar, beta, kB);
                    const auto cols = detail_thermo::z_columns(tc, flags.bounds);
                    csv.add_row({io::format_double(p2), io::format_double(eta), cols.z_sum,
                                 cols.z_quad, cols.z_quad_status, cols.z_closed,
                                 cols.z_closed_status});
                } catch (const std::exception& e) {
                    issues.push_back(std::string(name) + ": p2=" + io::format_double(p2) + ": " +
                                     e.what());
                }
            }
        }
        io::write_file(out_dir / file, csv.str());
    }

    // fig12/13/14: U, F, C against beta for the large eta set (depth-tied)
    struct UfcSpec {
        const char* name;
        const char* file;
        char what;
    };
    for (const auto& fig : {UfcSpec{"fig12", "fig12_mean_energy_vs_beta.csv", 'U'},
                            UfcSpec{"fig13", "fig13_free_energy_vs_beta.csv", 'F'},
                            UfcSpec{"fig14", "fig14_specific_heat_vs_beta.csv", 'C'}}) {
        if (!want(fig.name)) {
            continue;
        }
        io::CsvWriter csv({"beta", "eta", "sum_value", "quad_value", "quad_status",
                           "printed_value", "printed_status"});
        const RecastCoeffs base = base_recast(cfg.potential, base_state);
        for (double beta : beta_grid) {
            for (double eta : t.eta_large) {
                const auto tc = eta_tied_coeffs(base, alpha, m, hbar, beta, eta, kB);
                if (!tc.has_value()) {
                    issues.push_back(std::string(fig.name) + ": eta " +
                                     io::format_double(eta) + " unreachable");
                    continue;
                }
                const int levels = detail_thermo::levels_for(*tc);
                std::string sum_v, quad_v, quad_s = "ok", printed_v, printed_s = "ok";
                try {
                    switch (fig.what) {
                        case 'U':
                            sum_v = io::format_double(thermo::mean_energy_sum(*tc, levels));
                            break;
                        case 'F':
                            sum_v = io::format_double(thermo::free_energy_sum(*tc, levels));
                            break;
                        default:
                            sum_v = io::format_double(thermo::specific_heat_sum(*tc, levels));
                    }
                } catch (const std::exception&) {
                    sum_v = ""; // blank cell marks an overflowed sum
                }
                try {
                    switch (fig.what) {
                        case 'U':
                            quad_v = io::format_double(thermo::mean_energy(*tc, flags.bounds));
                            break;
                        case 'F':
                            quad_v = io::format_double(thermo::free_energy(*tc, flags.bounds));
                            break;
                        default:
                            quad_v =
                                io::format_double(thermo::specific_heat(*tc, flags.bounds));
                    }
                } catch (const DivergenceError&) {
                    quad_s = "divergent";
                } catch (const std::exception& e) {
                    quad_s = e.what();
                }
                try {
                    if (fig.what == 'U') {
                        printed_v = io::format_double(thermo::mean_energy_printed(*tc));
                    } else if (fig.what == 'C') {
                        printed_v = io::format_double(thermo::specific_heat_printed(*tc));
                    } else {
                        printed_s = "n/a";
                    }
                } catch (const std::exception&) {
                    printed_s = "complex-argument";
                }
                csv.add_row({io::format_double(beta), io::format_double(eta), sum_v, quad_v,
                             quad_s, printed_v, printed_s});
            }
        }
        io::write_file(out_dir / fig.file, csv.str());
    }

    meta["issues"] = issues;
    io::write_file(out_dir / "thermo_meta.json", meta.dump(2) + "\n");
    write_run_meta(out_dir, "thermo");
    return 0;
}

// ---------------------------------------------------------------------------
// oracle-compare
// ---------------------------------------------------------------------------

inline int cmd_oracle_compare(const RunConfig& cfg, const std::filesystem::path& out_dir,
                              const GlobalFlags&) {
    io::CsvWriter csv({"alpha", "n", "l", "D", "E_analytic", "E_pekeris_fd", "E_exact_fd",
                       "gap_pekeris_vs_analytic", "gap_exact_vs_pekeris"});
    std::vector<double> alphas = cfg.oracle.alpha_scan;
    if (alphas.empty()) {
        alphas.push_back(cfg.potential.alpha);
    }

    std::vector<std::string> failures;
    json jrows = json::array();
    for (double alpha : alphas) {
        PotentialParams pot = cfg.potential;
        pot.alpha = alpha;
        const ApproxScheme scheme =
            cfg.scheme_greene_aldrich ? ApproxScheme::greene_aldrich(alpha) : cfg.scheme;

        // group requested states by (l, D); one eigensolve covers all n
        std::map<std::pair<int, int>, int> groups;
        for (const auto& st : cfg.states.states) {
            auto& k = groups[{st.l, st.D}];
            k = std::max(k, st.n + 1);
        }
        for (const auto& [ld, k] : groups) {
            const StateLabel base{0, ld.first, ld.second};
            try {
                oracle::GridSpec grid;
                if (cfg.oracle.r_max > 0.0) {
                    grid.r_max = cfg.oracle.r_max;
                    grid.n_points = cfg.oracle.n_points;
                } else {
                    grid = oracle::auto_grid(pot, scheme, base, cfg.constants.m,
                                             cfg.constants.hbar, k, cfg.oracle.n_points);
                }
                const auto rep = oracle::approximation_error_report(
                    pot, scheme, base, cfg.constants.m, cfg.constants.hbar, grid, k);
                for (const auto& st : cfg.states.states) {
                    if (st.l != ld.first || st.D != ld.second) {
                        continue;
                    }
                    csv.add_row({io::format_double(alpha), std::to_string(st.n),
                                 std::to_string(st.l), std::to_string(st.D),
                                 io::format_double(rep.analytic[st.n]),
                                 io::format_double(rep.pekeris_fd[st.n]),
                                 io::format_double(rep.exact_fd[st.n]),
                                 io::format_double(rep.gap_pekeris_vs_analytic[st.n]),
                                 io::format_double(rep.gap_exact_vs_pekeris[st.n])});
                    json jr;
                    jr["alpha"] = alpha;
                    jr["n"] = st.n;
                    jr["l"] = st.l;
                    jr["D"] = st.D;
                    jr["E_analytic"] = rep.analytic[st.n];
                    jr["E_pekeris_fd"] = rep.pekeris_fd[st.n];
                    jr["E_exact_fd"] = rep.exact_fd[st.n];
                    jrows.push_back(jr);
                }
            } catch (const std::exception& e) {
                failures.push_back("alpha=" + io::format_double(alpha) + " (l=" +
                                   std::to_string(ld.first) + ",D=" + std::to_string(ld.second) +
                                   "): " + e.what());
            }
        }
    }
    io::write_file(out_dir / "oracle_compare.csv", csv.str());
    json out;
    out["rows"] = jrows;
    out["failures"] = failures;
    io::write_file(out_dir / "oracle_compare.json", out.dump(2) + "\n");
    write_run_meta(out_dir, "oracle-compare");
    return failures.empty() ? 0 : 3;
}

} // namespace dfpep::cli
