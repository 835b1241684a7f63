#pragma once

#include "specrelax/models.hpp"

#include <array>
#include <functional>

namespace specrelax {

enum class BurgersIC { IC0, IC1 };

// IC0: u0 = sin(2 pi x); IC1: u0 = sin(2 pi x - pi/2). Periodic on [0,1].
double burgers_initial(double x, BurgersIC ic);

// Entropic solution. Before t* = 1/(2 pi) it is the classical solution;
// afterwards IC0 carries a stationary shock at x = 0.5 (IC1 at x = 0.75),
// where the average of the two one-sided limits is returned.
double exact_burgers(double x, double t, BurgersIC ic);
ArrayXd exact_burgers(const ArrayXd& x, double t, BurgersIC ic);

struct GasState {
    double rho, u, p;
};

class EulerRiemann {
public:
    EulerRiemann(GasState left, GasState right, double gamma = 1.4);

    double p_star() const { return p_star_; }
    double u_star() const { return u_star_; }
    double rho_star_left() const;
    double rho_star_right() const;
    // State on the ray x/t = s.
    GasState sample(double s) const;
    // Value of the pressure function at p (zero at p*).
    double pressure_function(double p) const;

private:
    double fk(double p, const GasState& w, double c, double& dfk) const;
    GasState left_, right_;
    double g_, cl_, cr_;
    double p_star_ = 0.0, u_star_ = 0.0;
};

struct WaterState {
    double h, u;
};

class ShallowWaterRiemann {
public:
    ShallowWaterRiemann(WaterState left, WaterState right, double g = 1.0);

    double h_star() const { return h_star_; }
    double u_star() const { return u_star_; }
    bool dry_bed() const { return dry_; }
    // Speeds of the left rarefaction head/tail and of the right shock (dam break).
    double left_head_speed() const;
    double left_tail_speed() const;
    double right_shock_speed() const;
    WaterState sample(double s) const;
    double depth_function(double h) const;

private:
    WaterState l_, r_;
    double g_;
    double h_star_ = 0.0, u_star_ = 0.0;
    bool dry_ = false;
};

// First-order Rusanov finite volume, CFL 0.45, forward Euler in time.
struct FVSolution {
    ArrayXd x; // cell centres
    FieldSet q;
};

FVSolution fv_burgers(const std::function<double(double)>& u0, double a, double b, int cells,
                      double T);
FVSolution fv_euler(const std::function<GasState(double)>& ic, double a, double b, int cells,
                    double T, BoundaryDescriptor bc, double gamma = 1.4);
FVSolution fv_shallow_water(const std::function<WaterState(double)>& ic, double a, double b,
                            int cells, double T, bool periodic, double g = 1.0);

// Piecewise-linear interpolation of cell-centre data at x (clamped at the ends).
ArrayXd interpolate_cells(const ArrayXd& xc, const ArrayXd& v, const ArrayXd& x);

} // namespace specrelax
