#include "specrelax/schemes.hpp"
#include "specrelax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specrelax {

SchemeKind parse_scheme(const std::string& s)
{
    if (s == "pps" || s == "PPS") return SchemeKind::PPS;
    if (s == "sr" || s == "SR") return SchemeKind::SR;
    if (s == "sp" || s == "SP") return SchemeKind::SP;
    if (s == "svv" || s == "SVV") return SchemeKind::SVV;
    throw UsageError("unknown scheme '" + s + "'");
}

std::string to_string(SchemeKind k)
{
    switch (k) {
    case SchemeKind::PPS: return "pps";
    case SchemeKind::SR: return "sr";
    case SchemeKind::SP: return "sp";
    case SchemeKind::SVV: return "svv";
    }
    return "?";
}

Integrator::Integrator(const Model& model, const SchemeConfig& cfg) : model_(model), cfg_(cfg)
{
    const Grid& g = model.grid();
    const int N = g.N();
    if (cfg.dt < 0.0) throw ParameterError("dt must be positive");
    if (cfg.dt == 0.0 && !(cfg.cfl > 0.0)) throw ParameterError("cfl must be positive");

    switch (cfg.kind) {
    case SchemeKind::PPS:
        break;
    case SchemeKind::SR:
    case SchemeKind::SP: {
        kernel_ = kernel_coeffs(cfg.kernel, N);
        tau_ = std::pow(static_cast<double>(N), -cfg.kernel.alpha);
        if (cfg.kind == SchemeKind::SR) {
            rate_ = (kernel_ - 1.0) / tau_;
            has_linear_ = true;
        }
        break;
    }
    case SchemeKind::SVV: {
        if (!g.periodic()) throw UsageError("SVV is implemented for Fourier grids only");
        if (!(cfg.svv_M > 0.0 && cfg.svv_M < N))
            throw ParameterError("SVV requires 0 < M < N");
        const ArrayXd Q = svv_Q_coeffs(N, cfg.svv_M);
        const ArrayXd k = ArrayXd::LinSpaced(N + 1, 0, N) * g.kappa();
        rate_ = -cfg.svv_eps * k.square() * Q;
        has_linear_ = true;
        break;
    }
    }
}

void Integrator::tendency(const FieldSet& q, FieldSet& dq, double t) const
{
    model_.tendency(q, dq, t, cfg_.dealias);
    if (has_linear_) {
        const Grid& g = model_.grid();
        const Eigen::ArrayXcd r = rate_.cast<cplx>();
        for (std::size_t i = 0; i < q.size(); ++i) dq[i] += g.backward(g.forward(q[i]) * r);
    }
    model_.constrain_tendency(q, dq);
}

void Integrator::rk4_step(FieldSet& q, double t, double dt) const
{
    const std::size_t n = q.size();
    tendency(q, k1_, t);
    tmp_.resize(n);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = q[i] + 0.5 * dt * k1_[i];
    tendency(tmp_, k2_, t + 0.5 * dt);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = q[i] + 0.5 * dt * k2_[i];
    tendency(tmp_, k3_, t + 0.5 * dt);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = q[i] + dt * k3_[i];
    tendency(tmp_, k4_, t + dt);
    for (std::size_t i = 0; i < n; ++i)
        q[i] += (dt / 6.0) * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
}

void Integrator::purge(FieldSet& q) const
{
    const Grid& g = model_.grid();
    for (auto& f : q) f = apply_kernel(g, f, kernel_);
}

double Integrator::initial_dt(const FieldSet& q0) const
{
    if (cfg_.dt > 0.0) return cfg_.dt;
    const double s = model_.max_speed(q0);
    if (s > 0.0) {
        double dt = cfg_.cfl * model_.grid().min_spacing() / s;
        if (cfg_.dt_max > 0.0) dt = std::min(dt, cfg_.dt_max);
        return dt;
    }
    if (cfg_.dt_max > 0.0) return cfg_.dt_max;
    throw ParameterError("initial state is at rest; set dt or dt_max");
}

double Integrator::next_dt(const FieldSet& q, double dt0) const
{
    if (!cfg_.adaptive_dt || cfg_.dt > 0.0) return dt0;
    return initial_dt(q);
}

ArrayXd rk4(const std::function<ArrayXd(double, const ArrayXd&)>& f, const ArrayXd& y, double t,
            double dt)
{
    const ArrayXd k1 = f(t, y);
    const ArrayXd k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1);
    const ArrayXd k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2);
    const ArrayXd k4 = f(t + dt, y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

void check_finite(const Model& m, const FieldSet& q, double t, long step, double threshold)
{
    const auto names = m.names();
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double mx = q[i].abs().maxCoeff();
        if (!std::isfinite(mx) || !q[i].allFinite() || mx > threshold)
            throw BlowupError(t, step, names[i],
                              std::isfinite(mx) ? mx : std::numeric_limits<double>::infinity());
    }
}

struct Pending {
    Observer* obs;
    std::size_t next = 0;
};

} // namespace

RunResult run(const Model& model, FieldSet q0, const SchemeConfig& cfg, double T_end,
              std::vector<Observer>& observers,
              const std::function<void(int, double, const FieldSet&)>& on_purge)
{
    if (!(T_end > 0.0)) throw UsageError("T_end must be positive");
    if (static_cast<int>(q0.size()) != model.components())
        throw UsageError("initial state has the wrong number of components");
    for (const auto& f : q0)
        if (f.size() != model.grid().size()) throw UsageError("initial field has the wrong length");

    Integrator integ(model, cfg);
    RunResult res;
    res.q = std::move(q0);
    model.check_state(res.q, 0.0);
    double dt = integ.initial_dt(res.q);
    res.dt = dt;

    const bool sp = cfg.kind == SchemeKind::SP;
    if (sp && dt > integ.tau())
        throw ParameterError("SP needs dt <= tau (dt=" + std::to_string(dt) +
                             ", tau=" + std::to_string(integ.tau()) + ")");
    long next_purge = 1;

    std::vector<Pending> pend;
    for (auto& o : observers) {
        std::sort(o.times.begin(), o.times.end());
        pend.push_back({&o, 0});
    }
    auto fire_due = [&](double t_prev, const FieldSet& q_prev, long s_prev, double t_new,
                        const FieldSet& q_new, long s_new, bool final) {
        for (auto& p : pend) {
            auto& ts = p.obs->times;
            while (p.next < ts.size() && (ts[p.next] <= t_new || final)) {
                const double tr = ts[p.next];
                if (std::abs(tr - t_prev) < std::abs(tr - t_new) && tr <= t_new)
                    p.obs->fire(t_prev, s_prev, q_prev);
                else
                    p.obs->fire(t_new, s_new, q_new);
                ++p.next;
            }
        }
    };
    // Requests at or before t = 0.
    for (auto& p : pend) {
        auto& ts = p.obs->times;
        while (p.next < ts.size() && ts[p.next] <= 0.0) {
            p.obs->fire(0.0, 0, res.q);
            ++p.next;
        }
    }

    FieldSet prev;
    double t = 0.0;
    long step = 0;
    // Time is rebuilt from the step count while dt is unchanged, so fixed-step runs do not drift.
    double t_base = 0.0;
    long step_base = 0;
    while (t < T_end) {
        if (step >= cfg.max_steps) throw NumericalError("step limit reached before T_end");
        double h = dt;
        bool last = false;
        if (t + h >= T_end * (1.0 - 1e-14)) {
            h = T_end - t;
            last = true;
        }
        prev = res.q;
        const double t_prev = t;
        integ.rk4_step(res.q, t, h);
        ++step;
        t = last ? T_end : t_base + static_cast<double>(step - step_base) * dt;
        check_finite(model, res.q, t, step, cfg.blowup_threshold);
        model.check_state(res.q, t);

        if (sp) {
            const double tau = integ.tau();
            if (t >= next_purge * tau - 1e-9 * dt) {
                integ.purge(res.q);
                ++res.purges;
                if (on_purge) on_purge(res.purges, t, res.q);
                while (next_purge * tau - 1e-9 * dt <= t) ++next_purge;
            }
        }
        fire_due(t_prev, prev, step - 1, t, res.q, step, last);
        if (!last) {
            const double dt_new = integ.next_dt(res.q, dt);
            if (dt_new != dt) {
                t_base = t;
                step_base = step;
                dt = dt_new;
            }
        }
    }
    res.t = t;
    res.steps = step;
    return res;
}

} // namespace specrelax
