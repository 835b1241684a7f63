#pragma once

#include "specrelax/schemes.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace specrelax {

struct ErrorNorms {
    double L1 = 0.0;
    double L2 = 0.0;
    double Linf = 0.0;
};

// Nodal: quadrature on the collocation nodes (dx on uniform grids,
// trapezoid on mapped grids). Oversampled: the trigonometric interpolant of
// the approximation is evaluated on a grid `factor` times finer and compared
// there, which measures the continuous norm of the error (Fourier only).
enum class Quadrature { Nodal, Oversampled };

using Sampler = std::function<ArrayXd(const ArrayXd& x)>;

ErrorNorms error_norms(const ArrayXd& err, const ArrayXd& weights);
ErrorNorms error_norms(const Grid& g, const ArrayXd& approx, const Sampler& reference,
                       Quadrature quad = Quadrature::Nodal, int factor = 10);

// Trigonometric interpolant of nodal data on the grid refined by `factor`.
struct Refined {
    ArrayXd x;
    ArrayXd u;
    double dx;
};
Refined refine(const Grid& g, const ArrayXd& u, int factor);

struct ConvergenceRow {
    int Nx;
    double error;
    std::optional<double> order; // against the previous row
};

std::vector<ConvergenceRow> convergence_table(const std::vector<int>& Nx,
                                              const std::vector<double>& errors);

double energy(const Grid& g, const ArrayXd& u);

// |u_hat(k)|^2 for k = 0..N.
ArrayXd power_spectrum(const Grid& g, const ArrayXd& u);

struct DeltaFit {
    double delta = 0.0;
    double residual = 0.0;
    int modes = 0;
    bool quality_ok = false;
};

// Least squares of ln|u_k|^2 against {1, k} (optionally with ln k) over
// k_min..k_max; delta = -slope/2. Modes at or below `floor` are left out.
DeltaFit fit_delta(const ArrayXd& spectrum, int k_min, int k_max, bool algebraic_term = false,
                   double floor = 1e-28);

struct FitWindow {
    int k_min;
    int k_max;
};

FitWindow select_fit_window(const SchemeConfig& cfg, int N);

struct DeltaSample {
    double t;
    double delta;
    int k_min;
    int k_max;
    double residual;
    bool quality_ok;
};

struct DeltaSeries {
    std::vector<DeltaSample> samples;
    std::optional<double> t_star;
};

struct TStarFit {
    double t_star;
    double slope;
    double intercept;
    double residual;
    int points;
};

// Fits delta^(1/nu) = a + b t over samples with t in [t0, t1] and returns
// the crossing of the t axis. nu = 1 is the plain linear intercept.
TStarFit extrapolate_t_star(const std::vector<DeltaSample>& s, double t0, double t1,
                            double nu = 1.0);

// CSV output, 17 significant digits.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_columns(std::ostream& os, const std::vector<std::string>& header,
                   const std::vector<ArrayXd>& columns);
std::string format_double(double v);

} // namespace specrelax
