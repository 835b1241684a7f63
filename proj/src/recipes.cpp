#include "specrelax/errors.hpp"
#include "specrelax/experiment.hpp"

#include <cstdio>

namespace specrelax {

namespace {

std::string g(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const char* const burgers_times = "output_times = 0.07, 0.2, 2.0\n";
const char* const ladder = "Nx = 39, 65, 123, 205, 615, 1599, 2665, 7995\n";

std::string table(const std::string& name, const std::string& problem, const std::string& kernel,
                  double alpha, double gamma, bool dealias)
{
    return "name = " + name + "\nproblem = " + problem + "\nscheme = sr\nkernel = " + kernel +
           "\nalpha = " + g(alpha) + "\ngamma = " + g(gamma) +
           "\ndealias = " + (dealias ? "true" : "false") + "\n" + ladder + "T_end = 2.0\n" +
           burgers_times +
           "observers = errors\nreference = exact\nerror_quadrature = oversampled\n";
}

std::string burgers_run(const std::string& name, const std::string& body, const std::string& ic = "burgers-ic0")
{
    return "name = " + name + "\nproblem = " + ic + "\nNx = 615\nT_end = 2.0\n" + burgers_times +
           "observers = snapshots, errors\nreference = exact\n" + body;
}

std::string euler(const std::string& name, const std::string& problem, const std::string& kernel,
                  double alpha, double gamma, const std::string& times, double T,
                  const std::string& extra, int Nx = 615)
{
    return "name = " + name + "\nproblem = " + problem + "\nscheme = sr\nkernel = " + kernel +
           "\nalpha = " + g(alpha) + "\ngamma = " + g(gamma) +
           "\ndealias = false\nNx = " + std::to_string(Nx) + "\nkosloff_beta = 0.999\nT_end = " + g(T) +
           "\noutput_times = " + times + "\nobservers = snapshots, errors\n" + extra;
}

std::string shallow(const std::string& name, const std::string& problem, const std::string& kernel,
                    double alpha, double gamma)
{
    return "name = " + name + "\nproblem = " + problem + "\nscheme = sr\nkernel = " + kernel +
           "\nalpha = " + g(alpha) + "\ngamma = " + g(gamma) +
           "\ndealias = false\nNx = 2665\nT_end = 2.0\noutput_times = 0.5, 1.0, 2.0\n"
           "observers = snapshots, errors\n" +
           (problem == "sw-dambreak" ? "reference = exact\n" : "reference = fv\nreference_cells = 8000\n");
}

std::string hl(int Nx)
{
    return "name = hl-sr-dlvp-" + std::to_string(Nx) +
           "\nproblem = hl-default\nscheme = sr\nkernel = dlvp\nalpha = 1.6\ngamma = 0.99\nr = 0.92\n"
           "dealias = false\nNx = " + std::to_string(Nx) +
           "\nT_end = 0.004\ndt = 1e-7\noutput_times = 0.003, 0.0035, 0.0036, 0.004\n"
           "spectrum_times = 0.0005, 0.001, 0.0015, 0.002, 0.0025, 0.0028, 0.003, 0.0031, 0.0032, "
           "0.0033, 0.0034\n"
           "observers = snapshots, spectra, delta\nreference = none\n"
           "t_star_window = 0.0025, 0.0034\n";
}

std::vector<Recipe> build()
{
    std::vector<Recipe> r;
    // Convergence tables.
    r.push_back({"table1", "sweep", "Burgers IC0, SR-FeKo (0.7, 0.99), errors at t = 0.07, 0.2, 2",
                 table("table1", "burgers-ic0", "feko", 0.7, 0.99, false)});
    r.push_back({"table2", "sweep", "Burgers IC0, SR-DLVP (0.89, 0.9)",
                 table("table2", "burgers-ic0", "dlvp", 0.89, 0.9, false)});
    r.push_back({"table3", "sweep", "Burgers IC1, dealiased SR-FeKo (0.97, 0.98)",
                 table("table3", "burgers-ic1", "feko", 0.97, 0.98, true)});
    r.push_back({"table4", "sweep", "Burgers IC1, plain SR-FeKo (1.18, 0.99)",
                 table("table4", "burgers-ic1", "feko", 1.18, 0.99, false)});

    // Burgers figures.
    r.push_back({"burgers-pps", "run", "dealiased PPS on IC0 showing Gibbs oscillations and tygers",
                 "name = burgers-pps\nproblem = burgers-ic0\nscheme = pps\ndealias = true\nNx = 615\n"
                 "T_end = 0.3\noutput_times = 0.14, 0.17, 0.2, 0.3\n"
                 "observers = snapshots, spectra, energy\nreference = exact\n"});
    r.push_back({"burgers-pps-delta", "run", "analyticity strip of dealiased PPS before the shock",
                 "name = burgers-pps-delta\nproblem = burgers-ic0\nscheme = pps\ndealias = true\n"
                 "Nx = 615\nT_end = 0.14\n"
                 "spectrum_times = 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1, 0.11, 0.12\n"
                 "output_times = 0.14\nobservers = spectra, energy, delta\nreference = none\n"
                 "t_star_window = 0.03, 0.12\n"});
    for (double a : {0.6, 0.7, 0.8})
        r.push_back({"burgers-sr-feko-a" + g(a), "run", "SR-FeKo on IC0, gamma 0.99",
                     burgers_run("burgers-sr-feko-a" + g(a), "scheme = sr\nkernel = feko\ndealias = false\nalpha = " +
                                                        g(a) + "\ngamma = 0.99\n")});
    for (double a : {0.55, 0.65, 0.75})
        r.push_back({"burgers-sp-feko-a" + g(a), "run", "SP-FeKo on IC0, gamma 0.99",
                     burgers_run("burgers-sp-feko-a" + g(a), "scheme = sp\nkernel = feko\ndealias = false\nalpha = " +
                                                        g(a) + "\ngamma = 0.99\n")});
    r.push_back({"burgers-sr-dlvp", "run", "SR-DLVP (0.89, 0.9) on IC0",
                 burgers_run("burgers-sr-dlvp", "scheme = sr\nkernel = dlvp\ndealias = false\nalpha = 0.89\ngamma = 0.9\n")});
    r.push_back({"burgers-svv", "run", "SVV with eps = 1/N, M = 2 sqrt(N), N = 307",
                 burgers_run("burgers-svv", "scheme = svv\ndealias = false\nsvv_eps = 0.003257328990228013\n"
                                            "svv_M = 35.04283093587046\n")});
    for (const char* k : {"jackson", "jdlvp", "tt05", "mmo78", "rsk"})
        r.push_back({std::string("burgers-sr-") + k, "run", std::string("SR on IC0 with the ") + k + " kernel",
                     burgers_run(std::string("burgers-sr-") + k,
                                 std::string("scheme = sr\ndealias = false\nalpha = 0.7\ngamma = 0.99\nkernel = ") + k + "\n")});
    r.push_back({"burgers-alpha-sweep", "sweep", "order of convergence against alpha at t = 0.07",
                 "name = burgers-alpha-sweep\nproblem = burgers-ic0\nscheme = sr\nkernel = feko\n"
                 "dealias = false\ngamma = 0.99\nalpha = 0.5, 0.6, 0.7, 0.8, 0.9, 1.0\nNx = 615, 1599\n"
                 "T_end = 0.07\noutput_times = 0.07\nobservers = errors\nreference = exact\n"
                 "error_quadrature = oversampled\n"});
    r.push_back({"burgers-ic1-plain", "run", "IC1, plain SR-FeKo (0.97, 0.98): aliasing blowup",
                 burgers_run("burgers-ic1-plain", "scheme = sr\nkernel = feko\ndealias = false\nalpha = 0.97\ngamma = 0.98\n",
                             "burgers-ic1")});
    r.push_back({"burgers-ic1-dealiased", "run", "IC1, dealiased SR-FeKo (0.97, 0.98)",
                 burgers_run("burgers-ic1-dealiased", "scheme = sr\nkernel = feko\ndealias = true\nalpha = 0.97\ngamma = 0.98\n",
                             "burgers-ic1")});
    r.push_back({"burgers-ic1-strong", "run", "IC1, plain SR-FeKo (1.18, 0.99)",
                 burgers_run("burgers-ic1-strong", "scheme = sr\nkernel = feko\ndealias = false\nalpha = 1.18\ngamma = 0.99\n",
                             "burgers-ic1")});
    for (const char* ic : {"burgers-ic0", "burgers-ic1"})
        for (bool d : {false, true}) {
            const std::string n = std::string("burgers-pps-") + (ic[10] == '0' ? "ic0" : "ic1") +
                                  (d ? "-dealiased" : "-plain");
            r.push_back({n, "run", "PPS just after the shock",
                         "name = " + n + "\nproblem = " + ic + "\nscheme = pps\ndealias = " +
                             (d ? "true" : "false") +
                             "\nNx = 615\nT_end = 0.17\nobservers = snapshots\nreference = exact\n"});
        }

    // Shallow water.
    r.push_back({"sw-hump-sr-feko", "run", "hump of water, SR-FeKo (0.5, 0.99)",
                 shallow("sw-hump-sr-feko", "sw-hump", "feko", 0.5, 0.99)});
    r.push_back({"sw-hump-sr-dlvp", "run", "hump of water, SR-DLVP (0.8225, 0.98)",
                 shallow("sw-hump-sr-dlvp", "sw-hump", "dlvp", 0.8225, 0.98)});
    r.push_back({"sw-dambreak-sr-feko", "run", "dam break, SR-FeKo (0.55, 0.99)",
                 shallow("sw-dambreak-sr-feko", "sw-dambreak", "feko", 0.55, 0.99)});
    r.push_back({"sw-dambreak-sr-dlvp", "run", "dam break, SR-DLVP (0.7, 0.98)",
                 shallow("sw-dambreak-sr-dlvp", "sw-dambreak", "dlvp", 0.7, 0.98)});

    // Euler.
    const std::string sod_t = "0.1, 0.2, 0.4";
    r.push_back({"euler-sod-sr-feko", "run", "Sod tube, SR-FeKo (0.785, 0.99)",
                 euler("euler-sod-sr-feko", "euler-sod", "feko", 0.785, 0.99, sod_t, 0.4, "reference = exact\n")});
    r.push_back({"euler-sod-sr-dlvp", "run", "Sod tube, SR-DLVP (0.94, 0.95)",
                 euler("euler-sod-sr-dlvp", "euler-sod", "dlvp", 0.94, 0.95, sod_t, 0.4, "reference = exact\n")});
    r.push_back({"euler-lax-sr-feko", "run", "Lax tube, SR-FeKo (0.91, 0.99)",
                 euler("euler-lax-sr-feko", "euler-lax", "feko", 0.91, 0.99, "0.05, 0.1, 0.26", 0.26,
                       "reference = exact\n")});
    r.push_back({"euler-lax-sr-dlvp", "run", "Lax tube, SR-DLVP (1.10, 0.98)",
                 euler("euler-lax-sr-dlvp", "euler-lax", "dlvp", 1.10, 0.98, "0.05, 0.1, 0.26", 0.26,
                       "reference = exact\n")});
    r.push_back({"euler-shuosher-sr-feko", "run", "Shu-Osher, SR-FeKo (0.95, 0.97)",
                 euler("euler-shuosher-sr-feko", "euler-shuosher", "feko", 0.95, 0.97, "0.1, 0.2, 0.36", 0.36,
                       "reference = fv\nreference_cells = 8000\n")});
    r.push_back({"euler-shuosher-sr-dlvp", "run", "Shu-Osher, SR-DLVP (1.14, 0.95)",
                 euler("euler-shuosher-sr-dlvp", "euler-shuosher", "dlvp", 1.14, 0.95, "0.1, 0.2, 0.36", 0.36,
                       "reference = fv\nreference_cells = 8000\n")});
    r.push_back({"euler-blast-sr-feko", "run", "blast waves, SR-FeKo (1.355, 0.999) at Nx = 1599",
                 euler("euler-blast-sr-feko", "euler-blast", "feko", 1.355, 0.999, "0.01, 0.028, 0.032", 0.032,
                       "reference = fv\nreference_cells = 8000\n", 1599)});
    r.push_back({"euler-blast-sr-dlvp", "run", "blast waves, SR-DLVP (0.94, 0.95): positivity loss",
                 euler("euler-blast-sr-dlvp", "euler-blast", "dlvp", 0.94, 0.95, "0.01", 0.01,
                       "reference = none\n", 1599)});

    // HL model.
    r.push_back({"hl-sr-dlvp-2665", "run", "HL model, SR-DLVP (1.6, 0.99, r = 0.92), Nx = 2665", hl(2665)});
    r.push_back({"hl-sr-dlvp-7995", "run", "HL model, SR-DLVP (1.6, 0.99, r = 0.92), Nx = 7995", hl(7995)});
    r.push_back({"hl-pps-2665", "run", "HL model, dealiased PPS, Nx = 2665",
                 "name = hl-pps-2665\nproblem = hl-default\nscheme = pps\ndealias = true\nNx = 2665\n"
                 "T_end = 0.0034\ndt = 1e-7\n"
                 "spectrum_times = 0.0005, 0.001, 0.0015, 0.002, 0.0025, 0.0028, 0.003, 0.0031, 0.0032, "
                 "0.0033, 0.0034\nobservers = spectra, delta\nreference = none\n"
                 "t_star_window = 0.0025, 0.0034\n"});

    // Kernel profiles.
    r.push_back({"kernels-positive", "kernel-dump", "FeKo, Jackson, JDLVP and DLVP multipliers and profiles",
                 "name = kernels-positive\ntask = kernel-dump\nkernel_families = feko, jackson, jdlvp, dlvp\n"
                 "kernel_N = 307\ngamma = 0.99\nr = 0.5\n"});
    r.push_back({"kernels-other", "kernel-dump", "TT05, MMO78 and RSK multipliers and profiles",
                 "name = kernels-other\ntask = kernel-dump\nkernel_families = tt05, mmo78, rsk\n"
                 "kernel_N = 307\ngamma = 0.99\n"});
    r.push_back({"kernels-dlvp-hl", "kernel-dump", "DLVP with r = 0.92 as used for the HL model",
                 "name = kernels-dlvp-hl\ntask = kernel-dump\nkernel_families = dlvp\nkernel_N = 3997\n"
                 "gamma = 0.99\nr = 0.92\n"});
    return r;
}

} // namespace

const std::vector<Recipe>& recipes()
{
    static const std::vector<Recipe> all = build();
    return all;
}

const Recipe& find_recipe(const std::string& name)
{
    for (const auto& r : recipes())
        if (r.name == name) return r;
    throw UsageError("unknown recipe '" + name + "' (see list-recipes)");
}

} // namespace specrelax
