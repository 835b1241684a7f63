#pragma once

#include "specrelax/analysis.hpp"
#include "specrelax/config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace specrelax {

namespace fs = std::filesystem;

struct ErrorRecord {
    double t_requested;
    double t;
    std::string component;
    ErrorNorms norms;
};

struct RunOutcome {
    std::string status = "ok"; // ok | blowup | positivity | error
    std::string message;
    double wall_seconds = 0.0;
    long steps = 0;
    double t_final = 0.0;
    double dt = 0.0;
    int purges = 0;
    std::vector<ErrorRecord> errors;
    std::vector<DeltaSample> delta;
    std::optional<TStarFit> t_star;
    std::vector<std::string> files; // relative to the output directory

    bool ok() const { return status == "ok"; }
};

// Runs one experiment and writes its CSVs plus manifest.json into `out`.
// Failures of the run itself are reported in the outcome and the manifest,
// not thrown; configuration problems still throw.
RunOutcome run_experiment(const ExperimentConfig& cfg, const fs::path& out);

struct SweepOutcome {
    std::vector<RunOutcome> members;
    std::vector<ExperimentConfig> configs;
    bool all_ok() const;
};

// Every member runs in its own subdirectory; `jobs` workers share the queue.
// The joined table goes to sweep.csv with the swept value first.
SweepOutcome sweep(const ExperimentConfig& cfg, const fs::path& out, int jobs);

// Kernel multipliers and real-space profiles for the listed families.
void kernel_dump(const ExperimentConfig& cfg, const fs::path& out);

// Exact solution of the configured problem at each output time.
void oracle_dump(const ExperimentConfig& cfg, const fs::path& out);

struct Recipe {
    std::string name;
    std::string command; // run | sweep | kernel-dump
    std::string description;
    std::string config;
};

const std::vector<Recipe>& recipes();
const Recipe& find_recipe(const std::string& name);

std::uint64_t fnv1a(const fs::path& file);
std::string git_describe();

} // namespace specrelax
