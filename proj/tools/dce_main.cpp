// Command-line driver: one subcommand per table, CSV on stdout or --out.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure.

#include "dce/config.hpp"
#include "dce/csv.hpp"
#include "dce/errors.hpp"
#include "dce/sweep.hpp"
#include "dce/units.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

using namespace dce;

namespace {

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out = "-";
    int jobs = 1;
    bool field_free_only = false;
};

RunConfig resolve(const CommonOptions& o) {
    RunConfig cfg = o.config_path.empty() ? parse_config("") : load_config(o.config_path);
    return apply_overrides(cfg, o.overrides);
}

CsvTable dump_profile(const RunConfig& cfg) {
    const PulseProfile profile = cfg.profile();
    const double u = cfg.time_unit_ps();
    const long samples = static_cast<long>(cfg.spectrum_samples) * profile.n_pulses();
    const double dt = profile.period() / cfg.spectrum_samples;
    CsvTable t{{"t_ps", "V_times_Lz"}, {}};
    for (long i = 0; i <= samples; ++i) {
        const double time = profile.t_start() + i * dt;
        t.rows.push_back({time * u, profile.value(time)});
    }
    return t;
}

CsvTable spectrum_table(const RunConfig& cfg) {
    const CavityConfig cavity = cfg.cavity();
    const PulseProfile profile = cfg.profile();
    const SpectrumTrajectory traj = trajectory(profile, cavity, profile.period() / cfg.spectrum_samples);
    const double u = cfg.time_unit_ps();
    CsvTable t{{"t_ps", "p", "k_times_Lz", "omega_GHz"}, {}};
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
        for (std::size_t i = 0; i < traj.branches.size(); ++i) {
            t.rows.push_back({traj.times[j] * u, static_cast<long>(traj.branches[i]), traj.k[i][j],
                              units::angular_to_ghz(traj.omega[i][j], cfg.length_mm)});
        }
    }
    return t;
}

CsvTable coupling_table(const RunConfig& cfg) {
    const CavityConfig cavity = cfg.cavity();
    const PulseProfile profile = cfg.profile();
    const double u = cfg.time_unit_ps();
    const long samples = static_cast<long>(cfg.coupling_samples) * profile.n_pulses();
    const double dt = profile.period() / cfg.coupling_samples;
    CsvTable t{{"t_ps", "m", "n", "M_value_per_ps"}, {}};
    InstantSpectrum warm;
    for (long j = 0; j <= samples; ++j) {
        const double time = profile.t_start() + j * dt;
        const InstantSpectrum s =
            solve_spectrum(time, profile.value(time), profile.derivative(time), cavity, j ? &warm : nullptr);
        const CouplingMatrix M = coupling_matrix(s, cavity);
        for (int a = 0; a < cavity.mode_count(); ++a)
            for (int b = 0; b < cavity.mode_count(); ++b)
                t.rows.push_back({time * u, static_cast<long>(cavity.branch_of(a)),
                                  static_cast<long>(cavity.branch_of(b)), M.m(a, b) / u});
        warm = s;
    }
    return t;
}

CsvTable evolve_table(const RunConfig& cfg) {
    const RunResult r = run(cfg.cavity(), cfg.profile(), cfg.run_options());
    const double u = cfg.time_unit_ps();
    CsvTable t{{"t_ps", "mode_p", "N", "defect"}, {}};
    for (const auto& s : r.samples)
        for (std::size_t i = 0; i < r.branches.size(); ++i)
            t.rows.push_back({s.t * u, static_cast<long>(r.branches[i]), s.N[i], s.defect[i]});
    if (cfg.train_interval_ms) {
        const Eigen::VectorXd rate = creation_rate(r.final.N, *cfg.train_interval_ms * 1e-3);
        std::cerr << "rate: " << format_double(rate.sum()) << " photons/s in total, "
                  << format_double(rate[1 - cfg.cavity().first_branch()]) << " in p = 1\n";
    }
    return t;
}

CsvTable sweep_table(const SweepTable& sweep, bool with_eta) {
    CsvTable t;
    if (with_eta)
        t.header.push_back("eta");
    t.header.push_back("T_ps");
    for (int p : sweep.branches)
        t.header.push_back("N_p" + std::to_string(p));
    t.header.push_back("defect");
    t.header.push_back("status");
    for (const auto& row : sweep.rows) {
        std::vector<CsvCell> cells;
        if (with_eta)
            cells.push_back(row.eta);
        cells.push_back(row.period_ps);
        for (Eigen::Index i = 0; i < row.N_final.size(); ++i)
            cells.push_back(row.N_final[i]);
        cells.push_back(row.max_defect);
        cells.push_back(row.ok ? std::string("ok") : "error: " + row.error);
        t.rows.push_back(std::move(cells));
        if (!row.ok)
            std::cerr << "warning: sweep point failed: " << row.error << '\n';
    }
    return t;
}

CsvTable losses_table(const RunConfig& cfg) {
    double omega0 = 0.0;
    if (cfg.omega0_grad_s) {
        omega0 = *cfg.omega0_grad_s * 1e9;
    } else {
        const CavityConfig cavity = cfg.cavity();
        const int index = 1 - cavity.first_branch(); // branch p = 1
        omega0 = units::angular_to_rad_per_s(static_spectrum(cavity).omega[index], cfg.length_mm);
    }
    const double m_eff = cfg.m_eff * si::electron_mass;
    const double n_s = cfg.n_s ? *cfg.n_s
                               : areal_density_for_natural(std::max(cfg.v_max_lz, 1e-300), cfg.length_mm, m_eff);
    CsvTable t{{"omega0_GHz", "tau_ps", "delta_d_um", "re_P", "im_P", "ratio"}, {}};
    for (double tau : cfg.tau_ps) {
        for (double delta : cfg.delta_d_um) {
            DrudeParams params;
            params.n_s = n_s;
            params.delta_d = delta * 1e-6;
            params.tau = tau * 1e-12;
            params.m_eff = m_eff;
            const LossReport r = loss_report(params, omega0, cfg.polarization);
            t.rows.push_back({omega0 * 1e-9, tau, delta, r.P.real(), r.P.imag(), r.ratio});
        }
    }
    if (cfg.polarization == Polarization::TE)
        std::cerr << "note: TE modes have no polarization-loss channel; P is reported as 0\n";
    else
        for (double tau : cfg.tau_ps)
            if (omega0 * tau * 1e-12 < kLowLossThreshold)
                std::cerr << "note: tau = " << tau << " ps is in the low-loss regime (omega0 tau < "
                          << kLowLossThreshold << ")\n";
    return t;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon creation in a cavity with a time-dependent plasma sheet"};
    app.require_subcommand(1);
    CommonOptions opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", opts.config_path, "Config file (section.key = value lines)");
        sub->add_option("-s,--set", opts.overrides, "Override a config entry, e.g. pulse.period_ps=103");
        sub->add_option("-o,--out", opts.out, "Output CSV path, '-' for stdout");
    };

    auto* profile_cmd = app.add_subcommand("dump-profile", "Sheet strength V(t) * L_z over the pulse train");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Instantaneous wavenumbers and frequencies");
    auto* coupling_cmd = app.add_subcommand("coupling", "Coupling matrix M(t)");
    auto* evolve_cmd = app.add_subcommand("evolve", "Photon numbers and unitarity defect over a run");
    auto* tuning_cmd = app.add_subcommand("sweep-tuning", "Final photon numbers versus driving period");
    auto* position_cmd = app.add_subcommand("sweep-position", "Final photon numbers versus sheet position");
    auto* losses_cmd = app.add_subcommand("losses", "Drude polarization-loss estimate");
    for (auto* sub : {profile_cmd, spectrum_cmd, coupling_cmd, evolve_cmd, tuning_cmd, position_cmd, losses_cmd})
        add_common(sub);
    evolve_cmd->add_flag("--field-free-only", opts.field_free_only, "Only sample where V = 0 between pulses");
    for (auto* sub : {tuning_cmd, position_cmd})
        sub->add_option("-j,--jobs", opts.jobs, "Concurrent runs")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg = resolve(opts);
        if (opts.field_free_only)
            cfg.field_free_only = true;
        CsvTable table;
        if (*profile_cmd) {
            table = dump_profile(cfg);
        } else if (*spectrum_cmd) {
            table = spectrum_table(cfg);
        } else if (*coupling_cmd) {
            table = coupling_table(cfg);
        } else if (*evolve_cmd) {
            table = evolve_table(cfg);
        } else if (*tuning_cmd) {
            if (cfg.sweep_periods_ps.empty())
                throw ConfigError("sweep-tuning needs sweep.periods_ps");
            table = sweep_table(sweep_tuning(cfg, cfg.sweep_periods_ps, opts.jobs), false);
        } else if (*position_cmd) {
            if (cfg.sweep_etas.empty())
                throw ConfigError("sweep-position needs sweep.etas");
            table = sweep_table(sweep_position(cfg, cfg.sweep_etas, opts.jobs), true);
        } else if (*losses_cmd) {
            table = losses_table(cfg);
        }
        write_csv(table, opts.out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
