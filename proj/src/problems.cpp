#include "specrelax/problems.hpp"
#include "specrelax/errors.hpp"

#include <cmath>
#include <numbers>

namespace specrelax {

namespace {

constexpr double pi = std::numbers::pi;

FieldSet sample_cells(const FVSolution& fv, const ArrayXd& x)
{
    FieldSet out;
    for (const auto& c : fv.q) out.push_back(interpolate_cells(fv.x, c, x));
    return out;
}

void attach_euler_reference(Problem& pr, std::function<GasState(double)> ic, BoundaryDescriptor bc,
                            double gam)
{
    const double a = pr.phys_start, b = pr.phys_end;
    pr.fv_reference = [ic, bc, gam, a, b](const ArrayXd& x, double t, int cells) {
        return sample_cells(fv_euler(ic, a, b, cells, t, bc, gam), x);
    };
}

Problem burgers(const std::string& id, const ProblemParams& p, BurgersIC ic)
{
    Problem pr;
    pr.id = id;
    pr.grid = std::make_shared<Grid>(GridSpec::fourier(p.Nx, 0.0, 1.0));
    pr.model = std::make_shared<Burgers>(pr.grid);
    pr.q0 = {pr.grid->x().unaryExpr([ic](double x) { return burgers_initial(x, ic); })};
    pr.exact = [ic](const ArrayXd& x, double t) { return FieldSet{exact_burgers(x, t, ic)}; };
    pr.fv_reference = [ic](const ArrayXd& x, double t, int cells) {
        const auto fv = fv_burgers([ic](double s) { return burgers_initial(s, ic); }, 0.0, 1.0,
                                   cells, t);
        return sample_cells(fv, x);
    };
    pr.phys_start = 0.0;
    pr.phys_end = 1.0;
    return pr;
}

Problem euler_riemann_problem(const std::string& id, const ProblemParams& p, GasState l,
                              GasState r)
{
    Problem pr;
    pr.id = id;
    pr.grid = std::make_shared<Grid>(GridSpec::chebyshev(p.Nx, -1.0, 1.0, p.kosloff_beta));
    auto model = std::make_shared<Euler>(
        pr.grid, BoundaryDescriptor{BoundaryKind::ReflectingWall, BoundaryKind::ReflectingWall});
    const ArrayXd& x = pr.grid->x();
    ArrayXd rho(x.size()), u(x.size()), pp(x.size());
    for (int j = 0; j < x.size(); ++j) {
        rho[j] = piecewise(x[j], 0.0, l.rho, r.rho);
        u[j] = piecewise(x[j], 0.0, l.u, r.u);
        pp[j] = piecewise(x[j], 0.0, l.p, r.p);
    }
    pr.q0 = model->conserved(rho, u, pp);
    const double gam = model->gamma_gas();
    pr.exact = [l, r, gam](const ArrayXd& xs, double t) {
        EulerRiemann rs(l, r, gam);
        FieldSet q(3, ArrayXd(xs.size()));
        for (int j = 0; j < xs.size(); ++j) {
            const GasState w = t > 0.0 ? rs.sample(xs[j] / t)
                                       : (xs[j] < 0.0 ? l : r);
            q[0][j] = w.rho;
            q[1][j] = w.p / (gam - 1.0) + 0.5 * w.rho * w.u * w.u;
            q[2][j] = w.rho * w.u;
        }
        return q;
    };
    pr.model = model;
    pr.phys_start = -1.0;
    pr.phys_end = 1.0;
    attach_euler_reference(
        pr, [l, r](double s) { return s < 0.0 ? l : r; },
        {BoundaryKind::ReflectingWall, BoundaryKind::ReflectingWall}, gam);
    return pr;
}

} // namespace

double piecewise(double x, double x0, double left, double right)
{
    if (x < x0) return left;
    if (x > x0) return right;
    return 0.5 * (left + right);
}

std::vector<std::string> problem_ids()
{
    return {"burgers-ic0", "burgers-ic1", "sw-hump", "sw-dambreak", "euler-sod",
            "euler-lax", "euler-shuosher", "euler-blast", "hl-default"};
}

Problem make_problem(const std::string& id, const ProblemParams& p)
{
    if (id == "burgers-ic0") return burgers(id, p, BurgersIC::IC0);
    if (id == "burgers-ic1") return burgers(id, p, BurgersIC::IC1);

    if (id == "sw-hump") {
        Problem pr;
        pr.id = id;
        pr.grid = std::make_shared<Grid>(GridSpec::fourier(p.Nx, -5.0, 5.0));
        pr.model = std::make_shared<ShallowWater>(pr.grid, p.gravity);
        const double b = p.hump_beta;
        pr.q0 = {pr.grid->x().unaryExpr([b](double x) { return 1.0 + 0.4 * std::exp(-b * x * x); }),
                 ArrayXd::Zero(pr.grid->size())};
        pr.phys_start = -5.0;
        pr.phys_end = 5.0;
        const double g = p.gravity;
        pr.fv_reference = [b, g](const ArrayXd& x, double t, int cells) {
            const auto ic = [b](double s) { return WaterState{1.0 + 0.4 * std::exp(-b * s * s), 0.0}; };
            return sample_cells(fv_shallow_water(ic, -5.0, 5.0, cells, t, true, g), x);
        };
        return pr;
    }

    if (id == "sw-dambreak") {
        // [-5,5] mirrored about x = -5 onto the periodic domain [-15,5].
        Problem pr;
        pr.id = id;
        const double a = -5.0, b = 5.0;
        pr.grid = std::make_shared<Grid>(GridSpec::fourier(p.Nx, 2 * a - b, b));
        pr.model = std::make_shared<ShallowWater>(pr.grid, p.gravity);
        const double hl = p.h_left, hr = p.h_right, g = p.gravity;
        if (!(hl > hr && hr > 0.0)) throw UsageError("dam break needs h_left > h_right > 0");
        pr.q0 = mirror_symmetrize(
            *pr.grid, [hl, hr](double x) { return piecewise(x, 0.0, hl, hr); },
            [](double) { return 0.0; }, a);
        pr.exact = [hl, hr, g, a](const ArrayXd& xs, double t) {
            ShallowWaterRiemann rs({hl, 0.0}, {hr, 0.0}, g);
            FieldSet q(2, ArrayXd(xs.size()));
            for (int j = 0; j < xs.size(); ++j) {
                const bool mirrored = xs[j] < a;
                const double x = mirrored ? 2 * a - xs[j] : xs[j];
                const WaterState w = t > 0.0 ? rs.sample(x / t)
                                             : WaterState{piecewise(x, 0.0, hl, hr), 0.0};
                q[0][j] = w.h;
                q[1][j] = (mirrored ? -1.0 : 1.0) * w.h * w.u;
            }
            return q;
        };
        pr.fv_reference = [hl, hr, g, a, b](const ArrayXd& x, double t, int cells) {
            const auto ic = [hl, hr, a](double s) {
                const double r = s < a ? 2 * a - s : s;
                return WaterState{piecewise(r, 0.0, hl, hr), 0.0};
            };
            return sample_cells(fv_shallow_water(ic, 2 * a - b, b, cells, t, true, g), x);
        };
        pr.phys_start = a;
        pr.phys_end = b;
        return pr;
    }

    if (id == "euler-sod") return euler_riemann_problem(id, p, {1.0, 0.0, 1.0}, {0.125, 0.0, 0.1});
    if (id == "euler-lax")
        return euler_riemann_problem(id, p, {0.445, 0.311, 8.928}, {0.5, 0.0, 1.4275});

    if (id == "euler-shuosher") {
        Problem pr;
        pr.id = id;
        pr.grid = std::make_shared<Grid>(GridSpec::chebyshev(p.Nx, -1.0, 1.0, p.kosloff_beta));
        auto model = std::make_shared<Euler>(
            pr.grid,
            BoundaryDescriptor{BoundaryKind::SupersonicInflow, BoundaryKind::NonReflectingOutflow});
        const ArrayXd& x = pr.grid->x();
        ArrayXd rho(x.size()), u(x.size()), pp(x.size());
        for (int j = 0; j < x.size(); ++j) {
            const bool left = x[j] <= -0.8;
            rho[j] = left ? 3.85714 : 1.0 + 0.2 * std::sin(5.0 * pi * x[j]);
            u[j] = left ? 2.629369 : 0.0;
            pp[j] = left ? 10.33333 : 1.0;
        }
        pr.q0 = model->conserved(rho, u, pp);
        pr.model = model;
        pr.phys_start = -1.0;
        pr.phys_end = 1.0;
        attach_euler_reference(
            pr,
            [](double s) {
                return s <= -0.8 ? GasState{3.85714, 2.629369, 10.33333}
                                 : GasState{1.0 + 0.2 * std::sin(5.0 * pi * s), 0.0, 1.0};
            },
            model->boundary(), model->gamma_gas());
        return pr;
    }

    if (id == "euler-blast") {
        Problem pr;
        pr.id = id;
        pr.grid = std::make_shared<Grid>(GridSpec::chebyshev(p.Nx, 0.0, 1.0, p.kosloff_beta));
        auto model = std::make_shared<Euler>(
            pr.grid, BoundaryDescriptor{BoundaryKind::ReflectingWall, BoundaryKind::ReflectingWall});
        const ArrayXd& x = pr.grid->x();
        ArrayXd rho = ArrayXd::Ones(x.size()), u = ArrayXd::Zero(x.size()), pp(x.size());
        for (int j = 0; j < x.size(); ++j)
            pp[j] = x[j] < 0.5 ? piecewise(x[j], 0.1, 1e3, 1e-2) : piecewise(x[j], 0.9, 1e-2, 1e2);
        pr.q0 = model->conserved(rho, u, pp);
        pr.model = model;
        pr.phys_start = 0.0;
        pr.phys_end = 1.0;
        attach_euler_reference(
            pr,
            [](double s) {
                return GasState{1.0, 0.0, s < 0.1 ? 1e3 : (s < 0.9 ? 1e-2 : 1e2)};
            },
            model->boundary(), model->gamma_gas());
        return pr;
    }

    if (id == "hl-default") {
        Problem pr;
        pr.id = id;
        const double L = 1.0 / 6.0;
        pr.grid = std::make_shared<Grid>(GridSpec::fourier(p.Nx, 0.0, L));
        pr.model = std::make_shared<HLModel>(pr.grid);
        pr.q0 = {pr.grid->x().unaryExpr([L](double x) {
                     const double s = std::sin(2 * pi * x / L);
                     return 1e4 * s * s;
                 }),
                 ArrayXd::Zero(pr.grid->size())};
        pr.phys_start = 0.0;
        pr.phys_end = L;
        return pr;
    }

    throw UsageError("unknown problem id '" + id + "'");
}

} // namespace specrelax
