#pragma once

#include "specrelax/kernels.hpp"
#include "specrelax/models.hpp"

#include <functional>
#include <string>
#include <vector>

namespace specrelax {

enum class SchemeKind { PPS, SR, SP, SVV };

SchemeKind parse_scheme(const std::string& s);
std::string to_string(SchemeKind k);

struct SchemeConfig {
    SchemeKind kind = SchemeKind::PPS;
    KernelSpec kernel;        // SR and SP; alpha and gamma live here
    bool dealias = true;
    double dt = 0.0;          // > 0 fixes the step; otherwise CFL
    double cfl = 0.4;
    bool adaptive_dt = false; // recompute the CFL step every step
    double dt_max = 0.0;      // cap for adaptive steps (needed when the IC is at rest)
    double svv_eps = 0.0;
    double svv_M = 0.0;
    double blowup_threshold = 1e8;
    long max_steps = 50'000'000;
};

// Semi-discrete right-hand side and the RK4 update for one scheme.
class Integrator {
public:
    Integrator(const Model& model, const SchemeConfig& cfg);

    const Model& model() const { return model_; }
    const SchemeConfig& config() const { return cfg_; }

    // Full tendency: PPS plus relaxation (SR) or spectral viscosity (SVV).
    void tendency(const FieldSet& q, FieldSet& dq, double t) const;
    void rk4_step(FieldSet& q, double t, double dt) const;

    // Mollify every component with the kernel (the SP purge).
    void purge(FieldSet& q) const;

    // Per-mode linear damping rate added to the PPS tendency (zero for PPS/SP).
    const ArrayXd& linear_rate() const { return rate_; }
    const ArrayXd& kernel() const { return kernel_; }
    double tau() const { return tau_; }
    double initial_dt(const FieldSet& q0) const;
    double next_dt(const FieldSet& q, double dt0) const;

private:
    const Model& model_;
    SchemeConfig cfg_;
    ArrayXd kernel_;
    ArrayXd rate_;
    bool has_linear_ = false;
    double tau_ = 0.0;
    mutable FieldSet k1_, k2_, k3_, k4_, tmp_;
};

// Generic classical RK4 for a vector ODE, used in tests.
ArrayXd rk4(const std::function<ArrayXd(double, const ArrayXd&)>& f, const ArrayXd& y, double t,
            double dt);

struct Observer {
    std::vector<double> times;
    std::function<void(double t, long step, const FieldSet& q)> fire;
};

struct RunResult {
    FieldSet q;
    double t = 0.0;
    long steps = 0;
    int purges = 0;
    double dt = 0.0;
};

// Steps from t = 0 to T_end. Observers fire at the completed step nearest
// to each requested time, reporting the actual time; no interpolation.
// Throws BlowupError or PositivityError on failure.
RunResult run(const Model& model, FieldSet q0, const SchemeConfig& cfg, double T_end,
              std::vector<Observer>& observers,
              const std::function<void(int, double, const FieldSet&)>& on_purge = {});

} // namespace specrelax
