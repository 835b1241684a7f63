#pragma once

#include "specrelax/problems.hpp"
#include "specrelax/schemes.hpp"

#include <map>
#include <string>
#include <vector>

namespace specrelax {

// One experiment, read from a plain-text `key = value` file. Lists are
// comma separated. A list in Nx, alpha or gamma turns the file into a sweep;
// alpha and gamma cannot both be lists, and an Nx list combined with an
// alpha (or gamma) list gives one resolution ladder per parameter value.
struct ExperimentConfig {
    std::string task = "run"; // run | kernel-dump
    std::string name;
    std::string problem = "burgers-ic0";
    std::vector<int> Nx{615};
    std::vector<double> alpha{0.7};
    std::vector<double> gamma{0.99};

    SchemeConfig scheme;
    ProblemParams params;
    double T_end = 1.0;
    std::vector<double> output_times;
    std::vector<std::string> observers{"snapshots"};

    std::string reference = "exact"; // exact | fv | none
    int reference_cells = 8000;
    std::string error_quadrature = "nodal";
    int oversample = 10;

    std::vector<double> spectrum_times;
    bool delta_algebraic = false;
    std::vector<double> t_star_window;
    double t_star_nu = 1.0;

    // kernel-dump
    std::vector<std::string> kernel_families;
    int kernel_N = 307;

    // Key/value pairs exactly as read, for the manifest.
    std::vector<std::pair<std::string, std::string>> echo;

    std::string sweep_axis() const; // "alpha", "gamma", "Nx" or ""
    std::size_t sweep_size() const;
    ExperimentConfig member(std::size_t i) const;
    bool wants(const std::string& observer) const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical key list with a one-line description each.
const std::vector<std::pair<std::string, std::string>>& config_schema();

} // namespace specrelax
