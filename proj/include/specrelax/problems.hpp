#pragma once

#include "specrelax/models.hpp"
#include "specrelax/oracles.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace specrelax {

struct ProblemParams {
    int Nx = 615;
    double kosloff_beta = 0.999;
    double gravity = 1.0;
    double hump_beta = 5.0;
    double h_left = 3.0;
    double h_right = 1.0;
};

// A named initial-boundary value problem ready to integrate.
struct Problem {
    std::string id;
    std::shared_ptr<const Grid> grid;
    std::shared_ptr<const Model> model;
    FieldSet q0;
    // Exact solution in conserved components, when one exists.
    std::function<FieldSet(const ArrayXd& x, double t)> exact;
    // First-order finite-volume reference on `cells` cells, sampled at x.
    std::function<FieldSet(const ArrayXd& x, double t, int cells)> fv_reference;
    // Physical window (differs from the grid for mirrored problems).
    double phys_start = 0.0;
    double phys_end = 1.0;
};

Problem make_problem(const std::string& id, const ProblemParams& p);
std::vector<std::string> problem_ids();

// Discontinuous data sampled at nodes; a node sitting exactly on a jump
// gets the mean of the two states.
double piecewise(double x, double x0, double left, double right);

} // namespace specrelax
