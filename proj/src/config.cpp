#include "dce/config.hpp"

#include "dce/errors.hpp"
#include "dce/units.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace dce {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text, int line) {
    const std::string v = trim(text);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError(key + ": expected a number, got '" + v + "'", line);
    return out;
}

int to_int(const std::string& key, const std::string& text, int line) {
    const std::string v = trim(text);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(key + ": expected an integer, got '" + v + "'", line);
    return out;
}

bool to_bool(const std::string& key, const std::string& text, int line) {
    const std::string v = trim(text);
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'", line);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        items.push_back(trim(item));
    return items;
}

std::vector<double> to_list(const std::string& key, const std::string& text, int line) {
    std::vector<double> out;
    if (trim(text).empty())
        return out;
    for (const auto& item : split_list(text))
        out.push_back(to_double(key, item, line));
    return out;
}

PulseWidths& widths_of(RunConfig& cfg) {
    if (!cfg.widths)
        cfg.widths = PulseWidths{-1.0, -1.0, -1.0};
    return *cfg.widths;
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value, int line) {
    if (key == "geometry.length_mm") cfg.length_mm = to_double(key, value, line);
    else if (key == "geometry.radius_mm") cfg.radius_mm = to_double(key, value, line);
    else if (key == "geometry.eta") cfg.eta = to_double(key, value, line);
    else if (key == "mode.polarization") {
        std::string v = trim(value);
        std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::toupper(c); });
        if (v == "TE") cfg.polarization = Polarization::TE;
        else if (v == "TM") cfg.polarization = Polarization::TM;
        else throw ConfigError(key + ": expected TE or TM, got '" + trim(value) + "'", line);
    }
    else if (key == "mode.n") cfg.n = to_int(key, value, line);
    else if (key == "mode.m") cfg.m = to_int(key, value, line);
    else if (key == "mode.ell_max") cfg.ell_max = to_int(key, value, line);
    else if (key == "pulse.period_ps") cfg.period_ps = to_double(key, value, line);
    else if (key == "pulse.v_max_lz") cfg.v_max_lz = to_double(key, value, line);
    else if (key == "pulse.n_pulses") cfg.n_pulses = to_int(key, value, line);
    else if (key == "pulse.t_start_ps") cfg.t_start_ps = to_double(key, value, line);
    else if (key == "pulse.sigma_e_ps") widths_of(cfg).sigma_e_ps = to_double(key, value, line);
    else if (key == "pulse.plateau_ps") widths_of(cfg).plateau_ps = to_double(key, value, line);
    else if (key == "pulse.sigma_tau_ps") widths_of(cfg).sigma_tau_ps = to_double(key, value, line);
    else if (key == "integrator.step_divisor") cfg.step_divisor = to_int(key, value, line);
    else if (key == "integrator.max_step_ps") cfg.max_step_ps = to_double(key, value, line);
    else if (key == "integrator.duration_ps") cfg.duration_ps = to_double(key, value, line);
    else if (key == "output.sample_every") cfg.sample_every = to_int(key, value, line);
    else if (key == "output.field_free_only") cfg.field_free_only = to_bool(key, value, line);
    else if (key == "output.spectrum_samples") cfg.spectrum_samples = to_int(key, value, line);
    else if (key == "output.coupling_samples") cfg.coupling_samples = to_int(key, value, line);
    else if (key == "output.train_interval_ms") cfg.train_interval_ms = to_double(key, value, line);
    else if (key == "sweep.periods_ps") cfg.sweep_periods_ps = to_list(key, value, line);
    else if (key == "sweep.etas") cfg.sweep_etas = to_list(key, value, line);
    else if (key == "sweep.eta_periods_ps") {
        cfg.eta_periods_ps.clear();
        if (!trim(value).empty()) {
            for (const auto& item : split_list(value)) {
                const auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw ConfigError(key + ": expected eta:period pairs, got '" + item + "'", line);
                cfg.eta_periods_ps.emplace_back(to_double(key, item.substr(0, colon), line),
                                                to_double(key, item.substr(colon + 1), line));
            }
        }
    }
    else if (key == "losses.tau_ps") cfg.tau_ps = to_list(key, value, line);
    else if (key == "losses.delta_d_um") cfg.delta_d_um = to_list(key, value, line);
    else if (key == "losses.m_eff") cfg.m_eff = to_double(key, value, line);
    else if (key == "losses.omega0") cfg.omega0_grad_s = to_double(key, value, line);
    else if (key == "losses.n_s") cfg.n_s = to_double(key, value, line);
    else throw ConfigError("unknown key '" + key + "'", line);
}

void require(bool ok, const std::string& message) {
    if (!ok)
        throw ConfigError(message);
}

void split_assignment(const std::string& raw, int line, std::string& key, std::string& value) {
    const auto eq = raw.find('=');
    if (eq == std::string::npos)
        throw ConfigError("expected 'section.key = value', got '" + trim(raw) + "'", line);
    key = trim(raw.substr(0, eq));
    value = trim(raw.substr(eq + 1));
    const auto dot = key.find('.');
    if (key.empty() || dot == std::string::npos || dot == 0 || dot + 1 == key.size())
        throw ConfigError("key '" + key + "' is not of the form section.key", line);
}

} // namespace

double RunConfig::time_unit_ps() const { return units::time_unit_ps(length_mm); }

CavityConfig RunConfig::cavity() const {
    return make_cavity(polarization, n, m, radius_mm / length_mm, eta, ell_max);
}

PulseProfile RunConfig::profile() const {
    const double u = time_unit_ps();
    if (widths) {
        return build_profile(widths->sigma_e_ps / u, widths->plateau_ps / u, widths->sigma_tau_ps / u,
                             period_ps / u, v_max_lz, n_pulses, t_start_ps / u);
    }
    return default_profile(period_ps / u, v_max_lz, n_pulses, t_start_ps / u);
}

double RunConfig::max_step() const {
    const double u = time_unit_ps();
    return max_step_ps ? *max_step_ps / u : period_ps / u / step_divisor;
}

RunOptions RunConfig::run_options() const {
    RunOptions o;
    o.step_divisor = step_divisor;
    o.sample_every = sample_every;
    o.field_free_only = field_free_only;
    if (duration_ps)
        o.duration = *duration_ps / time_unit_ps();
    return o;
}

void validate(const RunConfig& c) {
    require(c.length_mm > 0.0, "geometry.length_mm must be positive");
    require(c.radius_mm > 0.0, "geometry.radius_mm must be positive");
    require(c.eta > 0.0 && c.eta < 1.0, "geometry.eta must lie strictly between 0 and 1");
    require(c.n >= 0, "mode.n must be >= 0");
    require(c.m >= 1, "mode.m must be >= 1");
    require(c.ell_max >= 1, "mode.ell_max must be >= 1");
    require(c.period_ps > 0.0, "pulse.period_ps must be positive");
    require(c.v_max_lz >= 0.0, "pulse.v_max_lz must be >= 0");
    require(c.n_pulses >= 1, "pulse.n_pulses must be >= 1");
    if (c.widths) {
        require(c.widths->sigma_e_ps >= 0.0 && c.widths->plateau_ps >= 0.0 && c.widths->sigma_tau_ps > 0.0,
                "pulse.sigma_e_ps, pulse.plateau_ps and pulse.sigma_tau_ps must all be given, "
                "with sigma_tau_ps > 0");
    }
    require(c.step_divisor >= 1, "integrator.step_divisor must be >= 1");
    if (c.max_step_ps)
        require(*c.max_step_ps >= c.period_ps / c.step_divisor * (1.0 - 1e-12),
                "integrator.max_step_ps must not be smaller than period_ps / step_divisor");
    if (c.duration_ps)
        require(*c.duration_ps > 0.0, "integrator.duration_ps must be positive");
    require(c.sample_every >= 1, "output.sample_every must be >= 1");
    require(c.spectrum_samples >= 1, "output.spectrum_samples must be >= 1");
    require(c.coupling_samples >= 1, "output.coupling_samples must be >= 1");
    if (c.train_interval_ms)
        require(*c.train_interval_ms > 0.0, "output.train_interval_ms must be positive");
    for (double T : c.sweep_periods_ps)
        require(T > 0.0, "sweep.periods_ps entries must be positive");
    for (double e : c.sweep_etas)
        require(e > 0.0 && e < 1.0, "sweep.etas entries must lie strictly between 0 and 1");
    for (const auto& [e, T] : c.eta_periods_ps)
        require(e > 0.0 && e < 1.0 && T > 0.0, "sweep.eta_periods_ps needs 0 < eta < 1 and period > 0");
    require(!c.tau_ps.empty(), "losses.tau_ps must not be empty");
    require(!c.delta_d_um.empty(), "losses.delta_d_um must not be empty");
    for (double t : c.tau_ps)
        require(t > 0.0, "losses.tau_ps entries must be positive");
    for (double d : c.delta_d_um)
        require(d > 0.0, "losses.delta_d_um entries must be positive");
    require(c.m_eff > 0.0, "losses.m_eff must be positive");
    if (c.omega0_grad_s)
        require(*c.omega0_grad_s > 0.0, "losses.omega0 must be positive");
    if (c.n_s)
        require(*c.n_s > 0.0, "losses.n_s must be positive");

    try {
        (void)c.cavity();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("mode/geometry: ") + e.what());
    }
    try {
        (void)c.profile();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("pulse: ") + e.what());
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        if (trim(raw).empty())
            continue;
        std::string key, value;
        split_assignment(raw, line, key, value);
        set_key(cfg, key, value, line);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

RunConfig apply_overrides(const RunConfig& base, const std::vector<std::string>& assignments) {
    RunConfig cfg = base;
    for (const auto& a : assignments) {
        std::string key, value;
        split_assignment(a, 0, key, value);
        set_key(cfg, key, value, 0);
    }
    validate(cfg);
    return cfg;
}

} // namespace dce
