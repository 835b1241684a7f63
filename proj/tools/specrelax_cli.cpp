#include "specrelax/errors.hpp"
#include "specrelax/experiment.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <thread>

using namespace specrelax;

namespace {

struct Source {
    std::string config;
    std::string recipe;
    std::string out;
};

ExperimentConfig load(const Source& s)
{
    if (s.config.empty() == s.recipe.empty())
        throw UsageError("give exactly one of --config or --recipe");
    if (!s.config.empty()) return load_config(s.config);
    return parse_config(find_recipe(s.recipe).config);
}

fs::path out_dir(const Source& s, const ExperimentConfig& c)
{
    if (!s.out.empty()) return s.out;
    const std::string stem = !c.name.empty() ? c.name : (!s.recipe.empty() ? s.recipe : "run");
    return fs::path("out") / stem;
}

void add_source(CLI::App* sub, Source& s)
{
    sub->add_option("--config", s.config, "experiment config file (key = value)");
    sub->add_option("--recipe", s.recipe, "named recipe (see list-recipes)");
    sub->add_option("--out", s.out, "output directory (default out/<name>)");
}

int report(const RunOutcome& r, const fs::path& out)
{
    std::cout << "status " << r.status << "  t " << r.t_final << "  steps " << r.steps << "  wall "
              << r.wall_seconds << " s\n";
    if (!r.message.empty()) std::cout << r.message << '\n';
    if (r.t_star) std::cout << "t* " << format_double(r.t_star->t_star) << '\n';
    std::cout << "manifest " << (out / "manifest.json").string() << '\n';
    return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral relaxation solvers for 1D conservation laws"};
    app.require_subcommand(1);

    Source run_src, sweep_src, oracle_src, kd_src;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bool show = false;
    std::string show_name;

    auto* run_cmd = app.add_subcommand("run", "run one experiment");
    add_source(run_cmd, run_src);
    auto* sweep_cmd = app.add_subcommand("sweep", "run every member of a parameter sweep");
    add_source(sweep_cmd, sweep_src);
    sweep_cmd->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
    auto* oracle_cmd = app.add_subcommand("oracle", "write the reference solution of a problem");
    add_source(oracle_cmd, oracle_src);
    auto* kd_cmd = app.add_subcommand("kernel-dump", "write kernel multipliers and profiles");
    add_source(kd_cmd, kd_src);
    auto* list_cmd = app.add_subcommand("list-recipes", "list the shipped recipes");
    list_cmd->add_option("--recipe", show_name, "print the config text of one recipe");
    list_cmd->add_flag("--show", show, "print every recipe's config text");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const ExperimentConfig c = load(run_src);
            if (c.task == "kernel-dump") {
                kernel_dump(c, out_dir(run_src, c));
                return 0;
            }
            if (c.sweep_size() != 1) throw UsageError("config holds a sweep; use the sweep subcommand");
            const fs::path out = out_dir(run_src, c);
            return report(run_experiment(c, out), out);
        }
        if (*sweep_cmd) {
            const ExperimentConfig c = load(sweep_src);
            const fs::path out = out_dir(sweep_src, c);
            const SweepOutcome so = sweep(c, out, jobs);
            for (std::size_t i = 0; i < so.members.size(); ++i) {
                const auto& m = so.configs[i];
                std::cout << "Nx " << m.Nx[0] << "  alpha " << m.alpha[0] << "  gamma " << m.gamma[0]
                          << "  " << so.members[i].status;
                if (!so.members[i].message.empty()) std::cout << "  (" << so.members[i].message << ")";
                std::cout << '\n';
            }
            std::cout << "table " << (out / "sweep.csv").string() << '\n';
            return so.all_ok() ? 0 : 1;
        }
        if (*oracle_cmd) {
            const ExperimentConfig c = load(oracle_src);
            const fs::path out = out_dir(oracle_src, c);
            oracle_dump(c, out);
            std::cout << "manifest " << (out / "manifest.json").string() << '\n';
            return 0;
        }
        if (*kd_cmd) {
            const ExperimentConfig c = load(kd_src);
            const fs::path out = out_dir(kd_src, c);
            kernel_dump(c, out);
            std::cout << "manifest " << (out / "manifest.json").string() << '\n';
            return 0;
        }
        if (*list_cmd) {
            if (!show_name.empty()) {
                std::cout << find_recipe(show_name).config;
                return 0;
            }
            for (const auto& r : recipes()) {
                std::cout << r.name << "  [" << r.command << "]  " << r.description << '\n';
                if (show) std::cout << r.config << '\n';
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
