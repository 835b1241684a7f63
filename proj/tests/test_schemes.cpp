#include "doctest.h"

#include "specrelax/analysis.hpp"
#include "specrelax/errors.hpp"
#include "specrelax/problems.hpp"
#include "specrelax/schemes.hpp"

#include <cmath>
#include <numbers>

using namespace specrelax;

namespace {

constexpr double pi = std::numbers::pi;

// du/dt = 0, so only the stabilization term acts.
class Frozen : public Model {
public:
    using Model::Model;
    int components() const override { return 1; }
    std::vector<std::string> names() const override { return {"u"}; }
    void tendency(const FieldSet& q, FieldSet& dq, double, bool) const override
    {
        dq.assign(1, ArrayXd::Zero(q[0].size()));
    }
    double max_speed(const FieldSet&) const override { return 1.0; }
};

// du/dt + c du/dx = 0.
class Advection : public Model {
public:
    Advection(std::shared_ptr<const Grid> g, double c) : Model(std::move(g)), c_(c) {}
    int components() const override { return 1; }
    std::vector<std::string> names() const override { return {"u"}; }
    void tendency(const FieldSet& q, FieldSet& dq, double, bool) const override
    {
        dq.assign(1, -c_ * grid_->derivative(q[0]));
    }
    double max_speed(const FieldSet&) const override { return std::abs(c_); }

private:
    double c_;
};

FieldSet trajectory_end(const Problem& pr, const SchemeConfig& cfg, int steps)
{
    std::vector<Observer> obs;
    return run(*pr.model, pr.q0, cfg, steps * cfg.dt, obs).q;
}

} // namespace

TEST_CASE("classical RK4 on du/dt = -u")
{
    const ArrayXd y = rk4([](double, const ArrayXd& v) { return ArrayXd(-v); }, ArrayXd::Ones(1), 0.0, 0.1);
    const double h = 0.1;
    CHECK(y[0] == doctest::Approx(1 - h + h * h / 2 - h * h * h / 6 + h * h * h * h / 24).epsilon(1e-15));
    CHECK(y[0] == doctest::Approx(0.9048375).epsilon(1e-14));
    const ArrayXd z = rk4([](double, const ArrayXd& v) { return ArrayXd(0.0 * v); }, ArrayXd::Constant(3, 2.0), 0.0, 0.5);
    CHECK((z - 2.0).abs().maxCoeff() == 0.0);
}

TEST_CASE("advected Fourier mode keeps its amplitude")
{
    auto g = std::make_shared<Grid>(GridSpec::fourier(33, 0.0, 1.0));
    Advection m(g, 1.0);
    SchemeConfig cfg;
    cfg.kind = SchemeKind::PPS;
    cfg.dealias = false;
    cfg.dt = 0.1 * g->min_spacing();
    const ArrayXd x = g->x();
    std::vector<Observer> obs;
    const RunResult r = run(m, {(2 * pi * x).sin()}, cfg, 10 * cfg.dt, obs);
    const ArrayXd exact = (2 * pi * (x - r.t)).sin();
    CHECK((r.q[0] - exact).abs().maxCoeff() < 1e-8);
    CHECK(std::abs(g->forward(r.q[0]).abs()[1] - 0.5) < 1e-8);
}

TEST_CASE("SR damps a filtered mode like the RK4 stability polynomial")
{
    auto g = std::make_shared<Grid>(GridSpec::fourier(65, 0.0, 1.0));
    Frozen m(g);
    SchemeConfig cfg;
    cfg.kind = SchemeKind::SR;
    cfg.kernel.family = KernelFamily::FejerKorovkin;
    cfg.kernel.alpha = 0.5;
    cfg.kernel.gamma = 0.5; // m = 32^0.5, so mode 20 is cut entirely
    cfg.dealias = false;
    Integrator integ(m, cfg);
    REQUIRE(integ.kernel()[20] == 0.0);
    const double tau = integ.tau();
    const double dt = 0.3 * tau;
    FieldSet q{(2 * pi * 20 * g->x()).cos() + 1.5};
    integ.rk4_step(q, 0.0, dt);
    const Spectrum c = g->forward(q[0]);
    const double z = -dt / tau;
    const double amp = 1 + z + z * z / 2 + z * z * z / 6 + z * z * z * z / 24;
    CHECK(std::abs(c[20].real() - 0.5 * amp) < 1e-15);
    CHECK(std::abs(c[0].real() - 1.5) < 1e-15); // mean untouched
}

TEST_CASE("SVV damps only above M")
{
    auto g = std::make_shared<Grid>(GridSpec::fourier(65, 0.0, 1.0));
    Frozen m(g);
    SchemeConfig cfg;
    cfg.kind = SchemeKind::SVV;
    cfg.svv_eps = 1e-3;
    cfg.svv_M = 8;
    cfg.dealias = false;
    Integrator integ(m, cfg);
    const double kap = g->kappa();
    const double q20 = svv_Q_coeffs(32, 8)[20];
    CHECK(integ.linear_rate()[20] == doctest::Approx(-1e-3 * (kap * 20) * (kap * 20) * q20));
    for (int k = 0; k <= 8; ++k) CHECK(integ.linear_rate()[k] == 0.0);

    FieldSet q{(2 * pi * 5 * g->x()).sin()};
    const ArrayXd before = q[0];
    integ.rk4_step(q, 0.0, 1e-3);
    CHECK((q[0] - before).abs().maxCoeff() < 1e-14);
}

TEST_CASE("stabilized schemes reduce to PPS")
{
    Problem pr = make_problem("burgers-ic0", {.Nx = 255});
    SchemeConfig pps;
    pps.kind = SchemeKind::PPS;
    pps.dealias = false;
    pps.dt = 5e-4;
    const FieldSet ref = trajectory_end(pr, pps, 100);

    SchemeConfig sr = pps;
    sr.kind = SchemeKind::SR;
    sr.kernel.family = KernelFamily::Identity;
    CHECK((trajectory_end(pr, sr, 100)[0] - ref[0]).abs().maxCoeff() <= 1e-14);

    SchemeConfig svv = pps;
    svv.kind = SchemeKind::SVV;
    svv.svv_eps = 0.0;
    svv.svv_M = 10;
    CHECK((trajectory_end(pr, svv, 100)[0] - ref[0]).abs().maxCoeff() <= 1e-14);

    SchemeConfig sp = pps;
    sp.kind = SchemeKind::SP;
    sp.kernel.family = KernelFamily::Identity;
    sp.kernel.alpha = 2.0; // tau = N^-2, about one purge every six steps
    sp.dt = 1e-5;
    SchemeConfig pps_small = pps;
    pps_small.dt = 1e-5;
    CHECK((trajectory_end(pr, sp, 100)[0] - trajectory_end(pr, pps_small, 100)[0]).abs().maxCoeff() <= 1e-14);
}

TEST_CASE("SP purge schedule")
{
    Problem pr = make_problem("burgers-ic0", {.Nx = 65});
    SchemeConfig cfg;
    cfg.kind = SchemeKind::SP;
    cfg.kernel.family = KernelFamily::FejerKorovkin;
    cfg.kernel.alpha = 0.5;
    Integrator integ(*pr.model, cfg);
    const double tau = integ.tau();
    cfg.dt = tau / 100;
    std::vector<Observer> obs;
    std::vector<double> times;
    const RunResult r = run(*pr.model, pr.q0, cfg, 2 * tau, obs,
                            [&](int, double t, const FieldSet&) { times.push_back(t); });
    CHECK(r.purges == 2);
    REQUIRE(times.size() == 2);
    CHECK(times[0] == doctest::Approx(tau));
    CHECK(times[1] == doctest::Approx(2 * tau));

    cfg.dt = 2 * tau;
    CHECK_THROWS_AS(run(*pr.model, pr.q0, cfg, 4 * tau, obs), ParameterError);
}

TEST_CASE("a purge with a positive kernel never adds energy")
{
    Problem pr = make_problem("burgers-ic0", {.Nx = 255});
    SchemeConfig cfg;
    cfg.kind = SchemeKind::PPS;
    cfg.dealias = false;
    cfg.dt = 5e-4;
    std::vector<Observer> obs;
    const FieldSet q = run(*pr.model, pr.q0, cfg, 0.2, obs).q; // past the shock, rough
    for (auto f : {KernelFamily::FejerKorovkin, KernelFamily::Jackson, KernelFamily::JacksonDLVP}) {
        KernelSpec ks;
        ks.family = f;
        const ArrayXd K = kernel_coeffs(ks, pr.grid->N());
        CHECK(K.abs().maxCoeff() <= 1.0 + 1e-15);
        const ArrayXd p = apply_kernel(*pr.grid, q[0], K);
        CHECK(energy(*pr.grid, p) <= energy(*pr.grid, q[0]));
    }
}

TEST_CASE("SR keeps the Burgers mean")
{
    Problem pr = make_problem("burgers-ic1", {.Nx = 129});
    SchemeConfig cfg;
    cfg.kind = SchemeKind::SR;
    cfg.kernel.alpha = 1.18;
    cfg.dealias = false;
    std::vector<Observer> obs;
    const RunResult r = run(*pr.model, pr.q0, cfg, 1.0, obs);
    CHECK(std::abs(r.q[0].mean() - pr.q0[0].mean()) < 1e-12);
}

TEST_CASE("halving dt leaves the pre-shock solution unchanged")
{
    Problem pr = make_problem("burgers-ic0", {.Nx = 615});
    SchemeConfig cfg;
    cfg.kind = SchemeKind::SR;
    cfg.kernel.alpha = 0.7;
    cfg.kernel.gamma = 0.99;
    cfg.dealias = false;
    cfg.dt = 0.07 / 120;
    const FieldSet a = trajectory_end(pr, cfg, 120);
    cfg.dt = 0.07 / 240;
    const FieldSet b = trajectory_end(pr, cfg, 240);
    CHECK((a[0] - b[0]).abs().maxCoeff() < 1e-9);
}

TEST_CASE("observers fire at the nearest completed step")
{
    Problem pr = make_problem("burgers-ic0", {.Nx = 65});
    SchemeConfig cfg;
    cfg.kind = SchemeKind::PPS;
    cfg.dt = 0.01;
    std::vector<double> got;
    std::vector<Observer> obs{{{0.0, 0.034, 0.036, 1.0}, [&](double t, long, const FieldSet&) { got.push_back(t); }}};
    run(*pr.model, pr.q0, cfg, 0.1, obs);
    REQUIRE(got.size() == 4);
    CHECK(got[0] == 0.0);
    CHECK(got[1] == doctest::Approx(0.03));
    CHECK(got[2] == doctest::Approx(0.04));
    CHECK(got[3] == doctest::Approx(0.1)); // past T_end: the final state
}

TEST_CASE("blowup is reported with its time and field")
{
    Problem pr = make_problem("burgers-ic0", {.Nx = 65});
    SchemeConfig cfg;
    cfg.kind = SchemeKind::PPS;
    cfg.dealias = false;
    cfg.dt = 0.05; // far beyond the stability limit
    std::vector<Observer> obs;
    try {
        run(*pr.model, pr.q0, cfg, 50.0, obs);
        FAIL("expected a blowup");
    } catch (const BlowupError& e) {
        CHECK(e.field == "u");
        CHECK(e.t > 0.0);
        CHECK(e.step > 0);
        CHECK(e.max_abs > cfg.blowup_threshold);
    }
}

TEST_CASE("a state at rest needs an explicit step")
{
    Problem pr = make_problem("hl-default", {.Nx = 65});
    SchemeConfig cfg;
    cfg.kind = SchemeKind::PPS;
    std::vector<Observer> obs;
    pr.q0[0].setZero();
    CHECK_THROWS_AS(run(*pr.model, pr.q0, cfg, 1e-3, obs), ParameterError);
}
