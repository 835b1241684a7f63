#include "specrelax/experiment.hpp"
#include "specrelax/errors.hpp"
#include "specrelax/kernels.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#ifndef SPECRELAX_GIT_DESCRIBE
#define SPECRELAX_GIT_DESCRIBE "unknown"
#endif

namespace specrelax {

using json = nlohmann::ordered_json;

namespace {

std::string short_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string indexed(const std::string& stem, std::size_t i)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.csv", stem.c_str(), i);
    return buf;
}

// Opens out/name for writing and records it for the manifest.
std::ofstream open_output(const fs::path& out, const std::string& name, std::vector<std::string>& files)
{
    std::ofstream f(out / name);
    if (!f) throw UsageError("cannot write " + (out / name).string());
    files.push_back(name);
    return f;
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

// Points, weights and approximate values on which errors are measured.
struct ErrorSupport {
    ArrayXd x;
    ArrayXd w;
    FieldSet u;
};

ErrorSupport error_support(const Problem& pr, const FieldSet& q, bool oversampled, int factor)
{
    const Grid& g = *pr.grid;
    ErrorSupport all;
    if (oversampled && g.periodic()) {
        for (const auto& c : q) {
            Refined r = refine(g, c, factor);
            all.x = r.x;
            all.w = ArrayXd::Constant(r.x.size(), r.dx);
            all.u.push_back(std::move(r.u));
        }
    } else {
        all.x = g.x();
        all.w = g.weights();
        all.u = q;
    }
    const double tol = 1e-12 * (pr.phys_end - pr.phys_start);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < all.x.size(); ++j)
        if (all.x[j] >= pr.phys_start - tol && all.x[j] <= pr.phys_end + tol) keep.push_back(j);
    if (keep.size() == static_cast<std::size_t>(all.x.size())) return all;
    ErrorSupport s;
    const auto n = static_cast<Eigen::Index>(keep.size());
    s.x.resize(n);
    s.w.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        s.x[i] = all.x[keep[i]];
        s.w[i] = all.w[keep[i]];
    }
    for (const auto& c : all.u) {
        ArrayXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = c[keep[i]];
        s.u.push_back(std::move(v));
    }
    return s;
}

FieldSet reference_values(const Problem& pr, const ExperimentConfig& cfg, const ArrayXd& x, double t)
{
    if (cfg.reference == "exact") {
        if (!pr.exact) throw OracleError("problem '" + pr.id + "' has no exact solution; use reference = fv");
        return pr.exact(x, t);
    }
    if (!pr.fv_reference) throw OracleError("problem '" + pr.id + "' has no finite-volume reference");
    return pr.fv_reference(x, t, cfg.reference_cells);
}

std::vector<double> window(const FieldSet& q, const std::vector<int>& idx, int c)
{
    std::vector<double> v;
    for (int j : idx) v.push_back(q[c][j]);
    return v;
}

json config_echo(const ExperimentConfig& cfg)
{
    json e = json::object();
    for (const auto& [k, v] : cfg.echo) e[k] = v;
    return e;
}

std::string hex64(std::uint64_t h)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json file_list(const fs::path& out, const std::vector<std::string>& files)
{
    json arr = json::array();
    for (const auto& f : files)
        arr.push_back({{"path", f}, {"fnv1a64", hex64(fnv1a(out / f))}});
    return arr;
}

void write_json(const fs::path& p, const json& j)
{
    std::ofstream f(p);
    if (!f) throw UsageError("cannot write " + p.string());
    f << j.dump(2) << '\n';
}

std::string member_dir(const ExperimentConfig& parent, const ExperimentConfig& m)
{
    const std::string axis = parent.sweep_axis();
    std::string d;
    if (axis == "alpha") d = "alpha" + short_double(m.alpha[0]) + "_";
    if (axis == "gamma") d = "gamma" + short_double(m.gamma[0]) + "_";
    return d + "Nx" + std::to_string(m.Nx[0]);
}

} // namespace

std::uint64_t fnv1a(const fs::path& file)
{
    std::ifstream f(file, std::ios::binary);
    if (!f) throw UsageError("cannot read " + file.string());
    std::uint64_t h = 14695981039346656037ull;
    char buf[65536];
    while (f.read(buf, sizeof buf) || f.gcount() > 0) {
        for (std::streamsize i = 0; i < f.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

std::string git_describe() { return SPECRELAX_GIT_DESCRIBE; }

RunOutcome run_experiment(const ExperimentConfig& cfg_in, const fs::path& out)
{
    if (cfg_in.sweep_size() != 1) throw ConfigError("run_experiment needs a single-valued config; use sweep");
    ExperimentConfig cfg = cfg_in;
    fs::create_directories(out);
    const auto t0 = std::chrono::steady_clock::now();

    RunOutcome res;
    const Problem pr = make_problem(cfg.problem, cfg.params);
    const Grid& g = *pr.grid;
    const auto names = pr.model->names();
    const auto idx = restrict_indices(g, pr.phys_start, pr.phys_end);
    const bool with_errors = cfg.reference != "none" && cfg.wants("errors");
    const bool oversampled = cfg.error_quadrature == "oversampled";

    std::vector<double> out_times = cfg.output_times;
    std::sort(out_times.begin(), out_times.end());
    const bool final_only = out_times.empty();
    if (final_only) out_times = {cfg.T_end};

    std::vector<Observer> observers;
    std::vector<std::pair<double, double>> snapshot_times; // requested, actual
    std::vector<std::pair<double, double>> spectrum_times;

    if (cfg.wants("snapshots")) {
        observers.push_back({out_times, [&, i = std::size_t{0}](double t, long, const FieldSet& q) mutable {
            const std::string name = indexed("snapshot", i);
            auto f = open_output(out, name, res.files);
            std::vector<std::string> header{"x"};
            std::vector<ArrayXd> cols;
            ArrayXd xs(idx.size());
            for (std::size_t j = 0; j < idx.size(); ++j) xs[j] = g.x()[idx[j]];
            cols.push_back(xs);
            for (int c = 0; c < pr.model->components(); ++c) {
                header.push_back(names[c]);
                const auto v = window(q, idx, c);
                cols.push_back(Eigen::Map<const ArrayXd>(v.data(), v.size()));
            }
            if (pr.exact && cfg.reference == "exact") {
                const FieldSet ex = pr.exact(xs, t);
                for (int c = 0; c < pr.model->components(); ++c) {
                    header.push_back("exact_" + names[c]);
                    cols.push_back(ex[c]);
                }
            }
            write_columns(f, header, cols);
            snapshot_times.emplace_back(out_times[i], t);
            ++i;
        }});
    }

    if (with_errors) {
        observers.push_back({out_times, [&, i = std::size_t{0}](double t, long, const FieldSet& q) mutable {
            const ErrorSupport s = error_support(pr, q, oversampled, cfg.oversample);
            const FieldSet ref = reference_values(pr, cfg, s.x, t);
            for (int c = 0; c < pr.model->components(); ++c)
                res.errors.push_back({out_times[i], t, names[c], error_norms(s.u[c] - ref[c], s.w)});
            ++i;
        }});
    }

    const bool want_delta = cfg.wants("delta");
    const std::vector<double> spec_times =
        cfg.wants("spectra") || want_delta ? merged(cfg.output_times, cfg.spectrum_times) : std::vector<double>{};
    // A kernel without a plateau leaves no safe window: spectra are still
    // written but no width is fitted.
    std::optional<FitWindow> fw;
    if (want_delta) {
        try {
            fw = select_fit_window(cfg.scheme, g.N());
        } catch (const FitError&) {
        }
    }
    if (!spec_times.empty()) {
        observers.push_back({spec_times, [&, i = std::size_t{0}](double t, long, const FieldSet& q) mutable {
            std::vector<ArrayXd> specs;
            for (const auto& c : q) specs.push_back(power_spectrum(g, c));
            if (cfg.wants("spectra")) {
                const std::string name = indexed("spectrum", i);
                auto f = open_output(out, name, res.files);
                std::vector<std::string> header{"k"};
                std::vector<ArrayXd> cols{ArrayXd::LinSpaced(g.N() + 1, 0.0, g.N())};
                for (int c = 0; c < pr.model->components(); ++c) {
                    header.push_back(names[c]);
                    cols.push_back(specs[c]);
                }
                write_columns(f, header, cols);
                spectrum_times.emplace_back(spec_times[i], t);
            }
            if (fw) {
                // Noise floor scales with the spectral peak so large-amplitude
                // fields do not fit rounding noise.
                const double floor = 1e-28 * std::max(1.0, specs[0].maxCoeff());
                try {
                    const DeltaFit d = fit_delta(specs[0], fw->k_min, fw->k_max, cfg.delta_algebraic, floor);
                    res.delta.push_back({t, d.delta, fw->k_min, fw->k_max, d.residual, d.quality_ok});
                } catch (const FitError&) {
                    // Too few modes above the floor: the spectrum is resolved to rounding.
                }
            }
            ++i;
        }});
    }

    std::vector<double> energy_times;
    if (cfg.wants("energy")) {
        const int n = 200;
        for (int i = 0; i <= n; ++i) energy_times.push_back(cfg.T_end * i / n);
        energy_times = merged(energy_times, cfg.output_times);
    }
    std::vector<std::vector<double>> energy_rows;
    if (!energy_times.empty()) {
        observers.push_back({energy_times, [&](double t, long step, const FieldSet& q) {
            std::vector<double> row{t, static_cast<double>(step)};
            for (const auto& c : q) row.push_back(energy(g, c));
            energy_rows.push_back(std::move(row));
        }});
    }

    std::vector<std::vector<double>> purge_rows;
    auto on_purge = [&](int n, double t, const FieldSet&) { purge_rows.push_back({double(n), t}); };

    try {
        RunResult r = run(*pr.model, pr.q0, cfg.scheme, cfg.T_end, observers, on_purge);
        res.steps = r.steps;
        res.t_final = r.t;
        res.dt = r.dt;
        res.purges = r.purges;
    } catch (const BlowupError& e) {
        res.status = "blowup";
        res.message = e.what();
        res.t_final = e.t;
        res.steps = e.step;
    } catch (const PositivityError& e) {
        res.status = "positivity";
        res.message = e.what();
        res.t_final = e.t;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        res.status = "error";
        res.message = e.what();
    }

    if (!res.errors.empty()) {
        auto f = open_output(out, "errors.csv", res.files);
        f << "t_requested,t,component,L1,L2,Linf\n";
        for (const auto& e : res.errors)
            f << format_double(e.t_requested) << ',' << format_double(e.t) << ',' << e.component << ','
              << format_double(e.norms.L1) << ',' << format_double(e.norms.L2) << ','
              << format_double(e.norms.Linf) << '\n';
    }
    if (!energy_rows.empty()) {
        std::vector<std::string> header{"t", "step"};
        for (const auto& n : names) header.push_back("energy_" + n);
        auto f = open_output(out, "energy.csv", res.files);
        write_csv(f, header, energy_rows);
    }
    if (!purge_rows.empty()) {
        auto f = open_output(out, "purges.csv", res.files);
        write_csv(f, {"purge", "t"}, purge_rows);
    }
    if (want_delta && !res.delta.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& d : res.delta)
            rows.push_back({d.t, d.delta, double(d.k_min), double(d.k_max), d.residual, d.quality_ok ? 1.0 : 0.0});
        auto f = open_output(out, "delta.csv", res.files);
        write_csv(f, {"t", "delta", "k_min", "k_max", "residual", "quality_ok"}, rows);
        if (cfg.t_star_window.size() == 2) {
            try {
                res.t_star = extrapolate_t_star(res.delta, cfg.t_star_window[0], cfg.t_star_window[1],
                                                cfg.t_star_nu);
            } catch (const FitError& e) {
                if (res.message.empty()) res.message = std::string("t* fit: ") + e.what();
            }
        }
    }

    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json m;
    m["name"] = cfg.name;
    m["problem"] = cfg.problem;
    m["status"] = res.status;
    if (!res.message.empty()) m["diagnostic"] = res.message;
    m["config"] = config_echo(cfg);
    m["resolved"] = {{"Nx", cfg.Nx[0]},
                     {"N", g.N()},
                     {"scheme", to_string(cfg.scheme.kind)},
                     {"kernel", to_string(cfg.scheme.kernel.family)},
                     {"alpha", cfg.scheme.kernel.alpha},
                     {"gamma", cfg.scheme.kernel.gamma},
                     {"dealias", cfg.scheme.dealias}};
    if (fw) m["resolved"]["fit_window"] = {fw->k_min, fw->k_max};
    m["steps"] = res.steps;
    m["t_final"] = res.t_final;
    m["dt"] = res.dt;
    if (cfg.scheme.kind == SchemeKind::SP) m["purges"] = res.purges;
    json obs = json::array();
    for (std::size_t i = 0; i < snapshot_times.size(); ++i)
        obs.push_back({{"file", indexed("snapshot", i)}, {"t_requested", snapshot_times[i].first},
                       {"t", snapshot_times[i].second}});
    for (std::size_t i = 0; i < spectrum_times.size(); ++i)
        obs.push_back({{"file", indexed("spectrum", i)}, {"t_requested", spectrum_times[i].first},
                       {"t", spectrum_times[i].second}});
    m["observations"] = obs;
    if (res.t_star)
        m["t_star"] = {{"t_star", res.t_star->t_star}, {"slope", res.t_star->slope},
                       {"intercept", res.t_star->intercept}, {"points", res.t_star->points}};
    m["wall_seconds"] = res.wall_seconds;
    m["git_describe"] = git_describe();
    m["files"] = file_list(out, res.files);
    write_json(out / "manifest.json", m);
    return res;
}

bool SweepOutcome::all_ok() const
{
    return std::all_of(members.begin(), members.end(), [](const RunOutcome& r) { return r.ok(); });
}

SweepOutcome sweep(const ExperimentConfig& cfg, const fs::path& out, int jobs)
{
    fs::create_directories(out);
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = cfg.sweep_size();
    SweepOutcome so;
    for (std::size_t i = 0; i < n; ++i) so.configs.push_back(cfg.member(i));
    so.members.resize(n);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                so.members[i] = run_experiment(so.configs[i], out / member_dir(cfg, so.configs[i]));
            } catch (const std::exception& e) {
                so.members[i].status = "error";
                so.members[i].message = e.what();
            }
        }
    };
    const int w = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int k = 1; k < w; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // Joined table. Orders compare consecutive resolutions sharing the
    // swept parameter value, time and component.
    std::string axis = cfg.sweep_axis();
    if (axis.empty()) axis = "Nx";
    std::ostringstream tab;
    tab << axis << (axis == "Nx" ? "" : ",Nx") << ",status,t_requested,t,component,L1,L2,Linf,order_L1,order_L2,order_Linf\n";
    auto value = [&](const ExperimentConfig& c) {
        if (axis == "alpha") return format_double(c.alpha[0]);
        if (axis == "gamma") return format_double(c.gamma[0]);
        return std::to_string(c.Nx[0]);
    };
    std::map<std::pair<std::string, std::string>, std::pair<int, ErrorNorms>> last; // (value, t|comp)
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = so.configs[i];
        const auto& r = so.members[i];
        const std::string lead = value(c) + (axis == "Nx" ? "" : "," + std::to_string(c.Nx[0]));
        const int N = make_problem(c.problem, c.params).grid->N();
        if (!r.ok() || r.errors.empty()) {
            tab << lead << ',' << (r.ok() ? "ok" : "failed:" + r.status) << ",,,,,,,,,\n";
            continue;
        }
        for (const auto& e : r.errors) {
            tab << lead << ",ok," << format_double(e.t_requested) << ',' << format_double(e.t) << ','
                << e.component << ',' << format_double(e.norms.L1) << ',' << format_double(e.norms.L2)
                << ',' << format_double(e.norms.Linf);
            const auto key = std::make_pair(value(c), format_double(e.t_requested) + "|" + e.component);
            const auto it = last.find(key);
            if (it != last.end() && it->second.first != N) {
                const double lr = std::log(double(N) / it->second.first);
                const auto& p = it->second.second;
                tab << ',' << format_double(std::log(p.L1 / e.norms.L1) / lr) << ','
                    << format_double(std::log(p.L2 / e.norms.L2) / lr) << ','
                    << format_double(std::log(p.Linf / e.norms.Linf) / lr) << '\n';
            } else {
                tab << ",,,\n";
            }
            last[key] = {N, e.norms};
        }
    }
    std::vector<std::string> files;
    {
        auto f = open_output(out, "sweep.csv", files);
        f << tab.str();
    }

    json m;
    m["name"] = cfg.name;
    m["problem"] = cfg.problem;
    m["sweep_axis"] = axis;
    m["status"] = so.all_ok() ? "ok" : "failed";
    m["config"] = config_echo(cfg);
    json mem = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const std::string dir = member_dir(cfg, so.configs[i]);
        json e = {{"dir", dir}, {"status", so.members[i].status}};
        if (!so.members[i].message.empty()) e["diagnostic"] = so.members[i].message;
        mem.push_back(e);
        if (fs::exists(out / dir / "manifest.json")) files.push_back(dir + "/manifest.json");
    }
    m["members"] = mem;
    m["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m["git_describe"] = git_describe();
    m["files"] = file_list(out, files);
    write_json(out / "manifest.json", m);
    return so;
}

void kernel_dump(const ExperimentConfig& cfg, const fs::path& out)
{
    fs::create_directories(out);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> fams = cfg.kernel_families;
    if (fams.empty()) fams = {"feko", "jackson", "jdlvp", "dlvp", "tt05", "mmo78", "rsk"};
    const int N = cfg.kernel_N;
    const int n = 4096;
    std::vector<std::string> files;
    std::vector<std::string> header{"k", "k_over_N"};
    std::vector<ArrayXd> mult_cols{ArrayXd::LinSpaced(N + 1, 0.0, N), ArrayXd::LinSpaced(N + 1, 0.0, 1.0)};
    std::vector<std::string> pheader{"x"};
    std::vector<ArrayXd> prof_cols;
    ArrayXd x(n);
    for (int j = 0; j < n; ++j) x[j] = 2.0 * std::numbers::pi * j / n - std::numbers::pi;
    prof_cols.push_back(x);
    for (const auto& name : fams) {
        KernelSpec ks = cfg.scheme.kernel;
        ks.family = parse_kernel_family(name);
        const ArrayXd m = kernel_coeffs(ks, N);
        header.push_back(to_string(ks.family));
        mult_cols.push_back(m);
        const ArrayXd p = synthesize_kernel(m, n);
        ArrayXd centred(n);
        for (int j = 0; j < n; ++j) centred[j] = p[(j + n / 2) % n];
        pheader.push_back(to_string(ks.family));
        prof_cols.push_back(centred);
    }
    {
        auto f = open_output(out, "kernel_multipliers.csv", files);
        write_columns(f, header, mult_cols);
    }
    {
        auto f = open_output(out, "kernel_profiles.csv", files);
        write_columns(f, pheader, prof_cols);
    }
    json m;
    m["name"] = cfg.name;
    m["task"] = "kernel-dump";
    m["status"] = "ok";
    m["config"] = config_echo(cfg);
    m["N"] = N;
    m["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m["git_describe"] = git_describe();
    m["files"] = file_list(out, files);
    write_json(out / "manifest.json", m);
}

void oracle_dump(const ExperimentConfig& cfg, const fs::path& out)
{
    fs::create_directories(out);
    const auto t0 = std::chrono::steady_clock::now();
    const Problem pr = make_problem(cfg.problem, cfg.params);
    const auto names = pr.model->names();
    std::vector<double> times = cfg.output_times.empty() ? std::vector<double>{cfg.T_end} : cfg.output_times;
    const int n = 2001;
    const ArrayXd x = ArrayXd::LinSpaced(n, pr.phys_start, pr.phys_end);
    std::vector<std::string> files;
    json obs = json::array();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const FieldSet q = reference_values(pr, cfg, x, times[i]);
        std::vector<std::string> header{"x"};
        std::vector<ArrayXd> cols{x};
        for (std::size_t c = 0; c < q.size(); ++c) {
            header.push_back(names[c]);
            cols.push_back(q[c]);
        }
        const std::string name = indexed("oracle", i);
        auto f = open_output(out, name, files);
        write_columns(f, header, cols);
        obs.push_back({{"file", name}, {"t", times[i]}});
    }
    json m;
    m["name"] = cfg.name;
    m["task"] = "oracle";
    m["problem"] = cfg.problem;
    m["reference"] = cfg.reference;
    m["status"] = "ok";
    m["config"] = config_echo(cfg);
    m["observations"] = obs;
    m["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m["git_describe"] = git_describe();
    m["files"] = file_list(out, files);
    write_json(out / "manifest.json", m);
}

} // namespace specrelax
