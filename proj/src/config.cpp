#include "specrelax/config.hpp"
#include "specrelax/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace specrelax {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v)
{
    const double d = to_double(key, v);
    if (d != static_cast<int>(d))
        throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v)
{
    std::string s = v;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
    if (s == "false" || s == "no" || s == "0" || s == "off") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& v)
{
    std::vector<double> out;
    for (const auto& s : split_list(v)) out.push_back(to_double(key, s));
    return out;
}

} // namespace

const std::vector<std::pair<std::string, std::string>>& config_schema()
{
    static const std::vector<std::pair<std::string, std::string>> keys = {
        {"task", "run (default) or kernel-dump"},
        {"name", "free-form label copied to the manifest"},
        {"problem", "burgers-ic0 | burgers-ic1 | sw-hump | sw-dambreak | euler-sod | euler-lax | "
                    "euler-shuosher | euler-blast | hl-default"},
        {"Nx", "grid points (Fourier: odd, 2N+1; Chebyshev: N), list allowed"},
        {"scheme", "pps | sr | sp | svv"},
        {"kernel", "feko | jackson | jdlvp | dlvp | tt05 | mmo78 | rsk | identity"},
        {"alpha", "relaxation exponent, tau = N^-alpha, list allowed"},
        {"gamma", "bandwidth exponent, m = N^gamma, list allowed"},
        {"r", "DLVP plateau fraction / RSK order"},
        {"mmo_beta", "MMO78 xi = 10^-mmo_beta"},
        {"mmo_p", "MMO78 exponent p"},
        {"dealias", "2/3 truncation of nonlinear products (true/false)"},
        {"svv_eps", "SVV viscosity amplitude"},
        {"svv_M", "SVV activation wavenumber"},
        {"dt", "fixed time step (overrides cfl)"},
        {"cfl", "Courant number for dt = cfl * dx_min / max speed"},
        {"adaptive_dt", "recompute the CFL step every step"},
        {"dt_max", "upper bound on the step (needed when the IC is at rest)"},
        {"blowup_threshold", "max |value| before a run is declared blown up"},
        {"T_end", "final time"},
        {"output_times", "times for snapshots, spectra and errors"},
        {"observers", "any of snapshots, spectra, energy, errors, delta"},
        {"reference", "exact | fv | none"},
        {"reference_cells", "cells for the finite-volume reference"},
        {"error_quadrature", "nodal | oversampled"},
        {"oversample", "refinement factor for oversampled errors"},
        {"spectrum_times", "extra times at which spectra are recorded for delta fits"},
        {"delta_algebraic", "add a ln k regressor to the delta fit"},
        {"t_star_window", "t0, t1 window of the t* extrapolation"},
        {"t_star_nu", "fit delta^(1/nu) linearly in t (1 = plain linear)"},
        {"kosloff_beta", "Chebyshev grid map parameter in (0,1)"},
        {"gravity", "shallow-water g"},
        {"hump_beta", "shallow-water hump decay"},
        {"h_left", "dam-break upstream depth"},
        {"h_right", "dam-break downstream depth"},
        {"kernel_families", "families for kernel-dump"},
        {"kernel_N", "bandwidth N for kernel-dump"},
    };
    return keys;
}

std::string ExperimentConfig::sweep_axis() const
{
    if (alpha.size() > 1 && gamma.size() > 1)
        throw ConfigError("only one of alpha, gamma may be a list");
    if (alpha.size() > 1) return "alpha";
    if (gamma.size() > 1) return "gamma";
    if (Nx.size() > 1) return "Nx";
    return "";
}

std::size_t ExperimentConfig::sweep_size() const
{
    return Nx.size() * alpha.size() * gamma.size();
}

// Members enumerate the parameter value slowest and Nx fastest.
ExperimentConfig ExperimentConfig::member(std::size_t i) const
{
    ExperimentConfig c = *this;
    const std::size_t nx = Nx.size();
    c.Nx = {Nx.at(i % nx)};
    const std::size_t j = i / nx;
    if (alpha.size() > 1) c.alpha = {alpha.at(j)};
    if (gamma.size() > 1) c.gamma = {gamma.at(j)};
    c.params.Nx = c.Nx[0];
    c.scheme.kernel.alpha = c.alpha[0];
    c.scheme.kernel.gamma = c.gamma[0];
    return c;
}

bool ExperimentConfig::wants(const std::string& o) const
{
    return std::find(observers.begin(), observers.end(), o) != observers.end();
}

ExperimentConfig parse_config(const std::string& text)
{
    ExperimentConfig c;
    bool dealias_set = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    const auto& schema = config_schema();
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string v = trim(line.substr(eq + 1));
        if (std::none_of(schema.begin(), schema.end(), [&](const auto& p) { return p.first == key; }))
            throw ConfigError("unknown config key '" + key + "'");
        c.echo.emplace_back(key, v);

        if (key == "task") {
            if (v != "run" && v != "kernel-dump") throw ConfigError("config key 'task': unknown task '" + v + "'");
            c.task = v;
        } else if (key == "name") c.name = v;
        else if (key == "problem") {
            const auto ids = problem_ids();
            if (std::find(ids.begin(), ids.end(), v) == ids.end())
                throw ConfigError("config key 'problem': unknown problem '" + v + "'");
            c.problem = v;
        } else if (key == "Nx") {
            c.Nx.clear();
            for (const auto& s : split_list(v)) c.Nx.push_back(to_int(key, s));
            if (c.Nx.empty()) throw ConfigError("config key 'Nx': empty list");
        } else if (key == "alpha") {
            c.alpha = to_doubles(key, v);
            if (c.alpha.empty()) throw ConfigError("config key 'alpha': empty list");
        } else if (key == "gamma") {
            c.gamma = to_doubles(key, v);
            if (c.gamma.empty()) throw ConfigError("config key 'gamma': empty list");
        } else if (key == "scheme") {
            try { c.scheme.kind = parse_scheme(v); }
            catch (const std::exception&) { throw ConfigError("config key 'scheme': unknown scheme '" + v + "'"); }
        } else if (key == "kernel") {
            try { c.scheme.kernel.family = parse_kernel_family(v); }
            catch (const std::exception&) { throw ConfigError("config key 'kernel': unknown kernel '" + v + "'"); }
        } else if (key == "r") c.scheme.kernel.r = to_double(key, v);
        else if (key == "mmo_beta") c.scheme.kernel.mmo_beta = to_double(key, v);
        else if (key == "mmo_p") c.scheme.kernel.mmo_p = to_double(key, v);
        else if (key == "dealias") {
            c.scheme.dealias = to_bool(key, v);
            dealias_set = true;
        } else if (key == "svv_eps") c.scheme.svv_eps = to_double(key, v);
        else if (key == "svv_M") c.scheme.svv_M = to_double(key, v);
        else if (key == "dt") c.scheme.dt = to_double(key, v);
        else if (key == "cfl") c.scheme.cfl = to_double(key, v);
        else if (key == "adaptive_dt") c.scheme.adaptive_dt = to_bool(key, v);
        else if (key == "dt_max") c.scheme.dt_max = to_double(key, v);
        else if (key == "blowup_threshold") c.scheme.blowup_threshold = to_double(key, v);
        else if (key == "T_end") c.T_end = to_double(key, v);
        else if (key == "output_times") c.output_times = to_doubles(key, v);
        else if (key == "observers") {
            c.observers = split_list(v);
            for (const auto& o : c.observers)
                if (o != "snapshots" && o != "spectra" && o != "energy" && o != "errors" && o != "delta")
                    throw ConfigError("config key 'observers': unknown observer '" + o + "'");
        } else if (key == "reference") {
            if (v != "exact" && v != "fv" && v != "none")
                throw ConfigError("config key 'reference': expected exact, fv or none");
            c.reference = v;
        } else if (key == "reference_cells") c.reference_cells = to_int(key, v);
        else if (key == "error_quadrature") {
            if (v != "nodal" && v != "oversampled")
                throw ConfigError("config key 'error_quadrature': expected nodal or oversampled");
            c.error_quadrature = v;
        } else if (key == "oversample") c.oversample = to_int(key, v);
        else if (key == "spectrum_times") c.spectrum_times = to_doubles(key, v);
        else if (key == "delta_algebraic") c.delta_algebraic = to_bool(key, v);
        else if (key == "t_star_window") {
            c.t_star_window = to_doubles(key, v);
            if (c.t_star_window.size() != 2) throw ConfigError("config key 't_star_window': expected t0, t1");
        } else if (key == "t_star_nu") c.t_star_nu = to_double(key, v);
        else if (key == "kosloff_beta") c.params.kosloff_beta = to_double(key, v);
        else if (key == "gravity") c.params.gravity = to_double(key, v);
        else if (key == "hump_beta") c.params.hump_beta = to_double(key, v);
        else if (key == "h_left") c.params.h_left = to_double(key, v);
        else if (key == "h_right") c.params.h_right = to_double(key, v);
        else if (key == "kernel_families") c.kernel_families = split_list(v);
        else if (key == "kernel_N") c.kernel_N = to_int(key, v);
    }
    // PPS is dealiased unless told otherwise; the stabilized schemes are not.
    if (!dealias_set) c.scheme.dealias = c.scheme.kind == SchemeKind::PPS;
    if (!(c.T_end > 0.0) && c.task == "run") throw ConfigError("config key 'T_end': must be positive");
    for (double t : c.output_times)
        if (t < 0.0) throw ConfigError("config key 'output_times': negative time");
    (void)c.sweep_axis();
    c.params.Nx = c.Nx[0];
    c.scheme.kernel.alpha = c.alpha[0];
    c.scheme.kernel.gamma = c.gamma[0];
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace specrelax
