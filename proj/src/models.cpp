#include "specrelax/models.hpp"
#include "specrelax/errors.hpp"

#include <cmath>

namespace specrelax {

BoundaryKind parse_boundary(const std::string& s)
{
    if (s == "periodic") return BoundaryKind::Periodic;
    if (s == "wall" || s == "reflecting") return BoundaryKind::ReflectingWall;
    if (s == "inflow" || s == "supersonic-inflow") return BoundaryKind::SupersonicInflow;
    if (s == "outflow" || s == "nonreflecting-outflow") return BoundaryKind::NonReflectingOutflow;
    throw UsageError("unknown boundary kind '" + s + "'");
}

Model::Model(std::shared_ptr<const Grid> grid) : grid_(std::move(grid))
{
    if (!grid_) throw UsageError("model needs a grid");
}

ArrayXd Model::resolved(const ArrayXd& u, bool dealias) const
{
    if (!dealias) return u;
    return grid_->backward(grid_->dealiased(grid_->forward(u)));
}

ArrayXd Model::project(const ArrayXd& f, bool dealias) const { return resolved(f, dealias); }

ArrayXd Model::ddx(const ArrayXd& f, bool dealias) const
{
    if (!dealias) return grid_->derivative(f);
    return grid_->derivative(resolved(f, true));
}

// Burgers

ArrayXd burgers_flux(const ArrayXd& u) { return 0.5 * u.square(); }

void Burgers::tendency(const FieldSet& q, FieldSet& dq, double, bool dealias) const
{
    const ArrayXd u = resolved(q[0], dealias);
    dq.resize(1);
    dq[0] = -ddx(burgers_flux(u), dealias);
}

double Burgers::max_speed(const FieldSet& q) const { return q[0].abs().maxCoeff(); }

// Shallow water

ShallowWater::ShallowWater(std::shared_ptr<const Grid> grid, double g)
    : Model(std::move(grid)), g_(g)
{
    if (!(g > 0.0)) throw ParameterError("gravity must be positive");
}

void ShallowWater::check_state(const FieldSet& q, double t) const
{
    Eigen::Index j;
    double hmin = q[0].minCoeff(&j);
    if (!(hmin > 0.0)) throw PositivityError("h", static_cast<int>(j), grid_->x()[j], hmin, t);
}

void ShallowWater::tendency(const FieldSet& q, FieldSet& dq, double t, bool dealias) const
{
    check_state(q, t);
    const ArrayXd h = resolved(q[0], dealias);
    const ArrayXd m = resolved(q[1], dealias);
    dq.resize(2);
    dq[0] = -ddx(m, dealias);
    dq[1] = -ddx(m.square() / h + 0.5 * g_ * h.square(), dealias);
}

double ShallowWater::max_speed(const FieldSet& q) const
{
    return ((q[1] / q[0]).abs() + (g_ * q[0]).sqrt()).maxCoeff();
}

// Euler

Euler::Euler(std::shared_ptr<const Grid> grid, BoundaryDescriptor bc, double gamma_gas)
    : Model(std::move(grid)), bc_(bc), gas_(gamma_gas)
{
    if (grid_->periodic()) throw UsageError("the characteristic Euler model needs a Chebyshev grid");
    if (bc.left == BoundaryKind::Periodic || bc.right == BoundaryKind::Periodic)
        throw UsageError("periodic boundaries are not available on Chebyshev grids");
}

Primitive Euler::primitives(const FieldSet& q, double t) const
{
    Primitive w;
    w.rho = q[0];
    w.u = q[2] / q[0];
    w.p = (gas_ - 1.0) * (q[1] - 0.5 * q[2] * w.u);
    Eigen::Index j;
    double v = w.rho.minCoeff(&j);
    if (!(v > 0.0)) throw PositivityError("rho", static_cast<int>(j), grid_->x()[j], v, t);
    v = w.p.minCoeff(&j);
    if (!(v > 0.0)) throw PositivityError("p", static_cast<int>(j), grid_->x()[j], v, t);
    w.c = (gas_ * w.p / w.rho).sqrt();
    return w;
}

FieldSet Euler::conserved(const ArrayXd& rho, const ArrayXd& u, const ArrayXd& p) const
{
    return {rho, p / (gas_ - 1.0) + 0.5 * rho * u.square(), rho * u};
}

void Euler::check_state(const FieldSet& q, double t) const { (void)primitives(q, t); }

CharacteristicWorkspace Euler::characteristics(const FieldSet& q, double t, bool dealias) const
{
    const Primitive w = primitives(q, t);
    const ArrayXd rx = ddx(w.rho, dealias);
    const ArrayXd ux = ddx(w.u, dealias);
    const ArrayXd px = ddx(w.p, dealias);

    CharacteristicWorkspace cw;
    cw.c = w.c;
    cw.lambda[0] = w.u - w.c;
    cw.lambda[1] = w.u;
    cw.lambda[2] = w.u + w.c;
    const ArrayXd rc = w.rho * w.c;
    cw.L[0] = cw.lambda[0] * (px - rc * ux);
    cw.L[1] = cw.lambda[1] * (w.c.square() * rx - px);
    cw.L[2] = cw.lambda[2] * (px + rc * ux);

    const int last = grid_->size() - 1;
    auto& L = cw.L;
    auto& lam = cw.lambda;

    // Left boundary: incoming waves have lambda > 0.
    switch (bc_.left) {
    case BoundaryKind::ReflectingWall:
        L[1][0] = 0.0;
        L[2][0] = L[0][0];
        break;
    case BoundaryKind::SupersonicInflow:
        for (int i = 0; i < 3; ++i)
            if (lam[i][0] > 0.0) L[i][0] = 0.0;
        break;
    case BoundaryKind::NonReflectingOutflow:
        if (lam[2][0] > 0.0) L[2][0] = 0.0;
        break;
    case BoundaryKind::Periodic:
        break;
    }
    // Right boundary: incoming waves have lambda < 0.
    switch (bc_.right) {
    case BoundaryKind::ReflectingWall:
        L[1][last] = 0.0;
        L[0][last] = L[2][last];
        break;
    case BoundaryKind::SupersonicInflow:
        for (int i = 0; i < 3; ++i)
            if (lam[i][last] < 0.0) L[i][last] = 0.0;
        break;
    case BoundaryKind::NonReflectingOutflow:
        if (lam[0][last] < 0.0) L[0][last] = 0.0;
        break;
    case BoundaryKind::Periodic:
        break;
    }

    const ArrayXd c2 = w.c.square();
    cw.d[0] = (L[1] + 0.5 * (L[0] + L[2])) / c2;
    cw.d[1] = 0.5 * (L[0] + L[2]);
    cw.d[2] = (L[2] - L[0]) / (2.0 * rc);
    return cw;
}

void Euler::tendency(const FieldSet& q, FieldSet& dq, double t, bool dealias) const
{
    const CharacteristicWorkspace cw = characteristics(q, t, dealias);
    const ArrayXd u = q[2] / q[0];
    dq.resize(3);
    dq[0] = -cw.d[0];
    dq[1] = -(0.5 * u.square() * cw.d[0] + cw.d[1] / (gas_ - 1.0) + q[2] * cw.d[2]);
    dq[2] = -(u * cw.d[0] + q[0] * cw.d[2]);
}

void Euler::constrain_tendency(const FieldSet&, FieldSet& dq) const
{
    // No-penetration: wall momentum stays zero whatever the stabilization adds.
    if (bc_.left == BoundaryKind::ReflectingWall) dq[2][0] = 0.0;
    if (bc_.right == BoundaryKind::ReflectingWall) dq[2][dq[2].size() - 1] = 0.0;
}

void Euler::flux_tendency(const FieldSet& q, FieldSet& dq) const
{
    const Primitive w = primitives(q, 0.0);
    dq.resize(3);
    dq[0] = -grid_->derivative(q[2]);
    dq[1] = -grid_->derivative(w.u * (q[1] + w.p));
    dq[2] = -grid_->derivative(q[2] * w.u + w.p);
}

double Euler::max_speed(const FieldSet& q) const
{
    const Primitive w = primitives(q, 0.0);
    return (w.u.abs() + w.c).maxCoeff();
}

// HL model

ArrayXd HLModel::velocity(const ArrayXd& omega) const
{
    if (!grid_->periodic()) throw UsageError("the HL model needs a periodic Fourier grid");
    const Spectrum w = grid_->forward(omega);
    const Spectrum hw = hilbert(*grid_, w);
    Spectrum v(w.size());
    v[0] = 0.0;
    const double kap = grid_->kappa();
    for (int k = 1; k < w.size(); ++k) v[k] = hw[k] / cplx(0.0, kap * k);
    return grid_->backward(v);
}

void HLModel::tendency(const FieldSet& q, FieldSet& dq, double, bool dealias) const
{
    const ArrayXd u = resolved(q[0], dealias);
    const ArrayXd w = resolved(q[1], dealias);
    const ArrayXd v = velocity(w);
    const ArrayXd ux = grid_->derivative(u);
    const ArrayXd wx = grid_->derivative(w);
    dq.resize(2);
    dq[0] = -project(v * ux, dealias);
    dq[1] = -project(v * wx, dealias) + ux;
}

double HLModel::max_speed(const FieldSet& q) const { return velocity(q[1]).abs().maxCoeff(); }

// Mirror symmetrization

double mirror_extend(const std::function<double(double)>& f, double a, double x, int parity)
{
    if (x >= a) return f(x);
    return parity * f(2.0 * a - x);
}

FieldSet mirror_symmetrize(const Grid& doubled, const std::function<double(double)>& h,
                           const std::function<double(double)>& hu, double a)
{
    const ArrayXd& x = doubled.x();
    FieldSet q(2, ArrayXd(x.size()));
    for (int j = 0; j < x.size(); ++j) {
        q[0][j] = mirror_extend(h, a, x[j], +1);
        q[1][j] = mirror_extend(hu, a, x[j], -1);
    }
    return q;
}

std::vector<int> restrict_indices(const Grid& g, double a, double b)
{
    std::vector<int> idx;
    for (int j = 0; j < g.size(); ++j)
        if (g.x()[j] >= a && g.x()[j] <= b) idx.push_back(j);
    return idx;
}

} // namespace specrelax
