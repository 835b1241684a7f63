#include "specrelax/oracles.hpp"
#include "specrelax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace specrelax {

namespace {

constexpr double pi = std::numbers::pi;

double wrap01(double x) { return x - std::floor(x); }

// Root of xi + t sin(2 pi xi) = x on [0, xi_hi], where the map is monotone.
double characteristic_foot(double x, double t, double xi_hi)
{
    double lo = 0.0, hi = xi_hi;
    double xi = std::clamp(x, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double g = xi + t * std::sin(2 * pi * xi) - x;
        if (std::abs(g) <= 1e-15) return xi;
        if (g > 0) hi = xi; else lo = xi;
        const double dg = 1.0 + 2 * pi * t * std::cos(2 * pi * xi);
        double next = (dg > 0.0) ? xi - g / dg : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - xi) <= 1e-16 * std::max(1.0, std::abs(xi))) return next;
        xi = next;
    }
    throw OracleError("exact_burgers: characteristic root did not converge");
}

double burgers_ic0(double x, double t)
{
    x = wrap01(x);
    if (t == 0.0) return std::sin(2 * pi * x);
    if (x == 0.0 || x == 0.5) return 0.0;
    const bool upper = x > 0.5;
    const double xs = upper ? 1.0 - x : x; // odd symmetry about x = 0.5
    const double s = 2 * pi * t;
    const double xi_hi = (s > 1.0) ? std::acos(-1.0 / s) / (2 * pi) : 0.5;
    const double xi = characteristic_foot(xs, t, xi_hi);
    const double u = std::sin(2 * pi * xi);
    return upper ? -u : u;
}

} // namespace

double burgers_initial(double x, BurgersIC ic)
{
    return ic == BurgersIC::IC0 ? std::sin(2 * pi * x) : std::sin(2 * pi * x - pi / 2);
}

double exact_burgers(double x, double t, BurgersIC ic)
{
    if (t < 0.0) throw OracleError("exact_burgers: negative time");
    if (ic == BurgersIC::IC1) return burgers_ic0(x - 0.25, t);
    return burgers_ic0(x, t);
}

ArrayXd exact_burgers(const ArrayXd& x, double t, BurgersIC ic)
{
    ArrayXd u(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) u[j] = exact_burgers(x[j], t, ic);
    return u;
}

// Euler Riemann problem

EulerRiemann::EulerRiemann(GasState left, GasState right, double gamma)
    : left_(left), right_(right), g_(gamma)
{
    if (!(left.rho > 0 && right.rho > 0 && left.p > 0 && right.p > 0))
        throw OracleError("euler_riemann: densities and pressures must be positive");
    cl_ = std::sqrt(g_ * left.p / left.rho);
    cr_ = std::sqrt(g_ * right.p / right.rho);
    const double du = right.u - left.u;
    if (2.0 / (g_ - 1.0) * (cl_ + cr_) <= du)
        throw OracleError("euler_riemann: data generate vacuum");

    // Two-rarefaction guess, then Newton on the pressure function.
    const double z = (g_ - 1.0) / (2.0 * g_);
    double p = std::pow((cl_ + cr_ - 0.5 * (g_ - 1.0) * du) /
                            (cl_ / std::pow(left.p, z) + cr_ / std::pow(right.p, z)),
                        1.0 / z);
    p = std::max(p, 1e-14);
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
        double dl, dr;
        const double f = fk(p, left_, cl_, dl) + fk(p, right_, cr_, dr) + du;
        double next = p - f / (dl + dr);
        if (next <= 0.0) next = 0.5 * p;
        const double change = 2.0 * std::abs(next - p) / (next + p);
        p = next;
        if (change < 1e-15) {
            ok = true;
            break;
        }
    }
    if (!ok) throw OracleError("euler_riemann: Newton iteration did not converge");
    p_star_ = p;
    double dl, dr;
    u_star_ = 0.5 * (left.u + right.u) + 0.5 * (fk(p, right_, cr_, dr) - fk(p, left_, cl_, dl));
}

double EulerRiemann::fk(double p, const GasState& w, double c, double& dfk) const
{
    if (p > w.p) {
        const double A = 2.0 / ((g_ + 1.0) * w.rho);
        const double B = (g_ - 1.0) / (g_ + 1.0) * w.p;
        const double q = std::sqrt(A / (p + B));
        dfk = q * (1.0 - 0.5 * (p - w.p) / (B + p));
        return (p - w.p) * q;
    }
    const double r = p / w.p;
    dfk = std::pow(r, -(g_ + 1.0) / (2.0 * g_)) / (w.rho * c);
    return 2.0 * c / (g_ - 1.0) * (std::pow(r, (g_ - 1.0) / (2.0 * g_)) - 1.0);
}

double EulerRiemann::pressure_function(double p) const
{
    double dl, dr;
    return fk(p, left_, cl_, dl) + fk(p, right_, cr_, dr) + (right_.u - left_.u);
}

double EulerRiemann::rho_star_left() const
{
    const double r = p_star_ / left_.p, gm = (g_ - 1.0) / (g_ + 1.0);
    if (p_star_ > left_.p) return left_.rho * (r + gm) / (gm * r + 1.0);
    return left_.rho * std::pow(r, 1.0 / g_);
}

double EulerRiemann::rho_star_right() const
{
    const double r = p_star_ / right_.p, gm = (g_ - 1.0) / (g_ + 1.0);
    if (p_star_ > right_.p) return right_.rho * (r + gm) / (gm * r + 1.0);
    return right_.rho * std::pow(r, 1.0 / g_);
}

GasState EulerRiemann::sample(double s) const
{
    const double g = g_;
    const double g1 = (g - 1.0) / (2.0 * g), g2 = (g + 1.0) / (2.0 * g);
    if (s <= u_star_) {
        const GasState& w = left_;
        const double c = cl_;
        if (p_star_ > w.p) {
            const double S = w.u - c * std::sqrt(g2 * p_star_ / w.p + g1);
            if (s <= S) return w;
            return {rho_star_left(), u_star_, p_star_};
        }
        const double head = w.u - c;
        const double cs = c * std::pow(p_star_ / w.p, g1);
        const double tail = u_star_ - cs;
        if (s <= head) return w;
        if (s >= tail) return {rho_star_left(), u_star_, p_star_};
        const double k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.u - s);
        return {w.rho * std::pow(k, 2.0 / (g - 1.0)),
                2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + s),
                w.p * std::pow(k, 2.0 * g / (g - 1.0))};
    }
    const GasState& w = right_;
    const double c = cr_;
    if (p_star_ > w.p) {
        const double S = w.u + c * std::sqrt(g2 * p_star_ / w.p + g1);
        if (s >= S) return w;
        return {rho_star_right(), u_star_, p_star_};
    }
    const double head = w.u + c;
    const double cs = c * std::pow(p_star_ / w.p, g1);
    const double tail = u_star_ + cs;
    if (s >= head) return w;
    if (s <= tail) return {rho_star_right(), u_star_, p_star_};
    const double k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.u - s);
    return {w.rho * std::pow(k, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + s),
            w.p * std::pow(k, 2.0 * g / (g - 1.0))};
}

// Shallow-water Riemann problem

namespace {

double sw_branch(double h, double hk, double g)
{
    if (h <= hk) return 2.0 * (std::sqrt(g * h) - std::sqrt(g * hk));
    return (h - hk) * std::sqrt(0.5 * g * (h + hk) / (h * hk));
}

} // namespace

ShallowWaterRiemann::ShallowWaterRiemann(WaterState left, WaterState right, double g)
    : l_(left), r_(right), g_(g)
{
    if (left.h < 0.0 || right.h < 0.0 || !(g > 0.0))
        throw OracleError("shallow_water_riemann: negative depth or gravity");
    if (left.h == 0.0 && right.h == 0.0) throw OracleError("shallow_water_riemann: both sides dry");
    if (right.h == 0.0 || left.h == 0.0) {
        dry_ = true;
        return;
    }
    const double cl = std::sqrt(g * left.h), cr = std::sqrt(g * right.h);
    if (2.0 * (cl + cr) <= right.u - left.u)
        throw OracleError("shallow_water_riemann: data generate a dry region");
    // f is increasing in h; bracket then bisect.
    double lo = 0.0, hi = std::max(left.h, right.h);
    while (depth_function(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (depth_function(mid) < 0.0) lo = mid; else hi = mid;
    }
    h_star_ = 0.5 * (lo + hi);
    u_star_ = 0.5 * (left.u + right.u) +
              0.5 * (sw_branch(h_star_, right.h, g) - sw_branch(h_star_, left.h, g));
}

double ShallowWaterRiemann::depth_function(double h) const
{
    return sw_branch(h, l_.h, g_) + sw_branch(h, r_.h, g_) + r_.u - l_.u;
}

double ShallowWaterRiemann::left_head_speed() const { return l_.u - std::sqrt(g_ * l_.h); }

double ShallowWaterRiemann::left_tail_speed() const
{
    if (dry_) return l_.u + 2.0 * std::sqrt(g_ * l_.h);
    return u_star_ - std::sqrt(g_ * h_star_);
}

double ShallowWaterRiemann::right_shock_speed() const
{
    if (dry_) return l_.u + 2.0 * std::sqrt(g_ * l_.h);
    const double hs = h_star_, hr = r_.h;
    return r_.u + std::sqrt(g_ * hr) * std::sqrt(0.5 * (hs + hr) * hs / (hr * hr));
}

WaterState ShallowWaterRiemann::sample(double s) const
{
    const double g = g_;
    if (dry_) {
        if (r_.h == 0.0) {
            const double cl = std::sqrt(g * l_.h);
            if (s <= l_.u - cl) return l_;
            if (s >= l_.u + 2.0 * cl) return {0.0, 0.0};
            const double c = (l_.u + 2.0 * cl - s) / 3.0;
            return {c * c / g, (l_.u + 2.0 * cl + 2.0 * s) / 3.0};
        }
        const double cr = std::sqrt(g * r_.h);
        if (s >= r_.u + cr) return r_;
        if (s <= r_.u - 2.0 * cr) return {0.0, 0.0};
        const double c = (-r_.u + 2.0 * cr + s) / 3.0;
        return {c * c / g, (r_.u - 2.0 * cr + 2.0 * s) / 3.0};
    }
    const double cs = std::sqrt(g * h_star_);
    if (s <= u_star_) {
        const double cl = std::sqrt(g * l_.h);
        if (h_star_ > l_.h) {
            const double S = l_.u - cl * std::sqrt(0.5 * (h_star_ + l_.h) * h_star_ / (l_.h * l_.h));
            return s <= S ? l_ : WaterState{h_star_, u_star_};
        }
        if (s <= l_.u - cl) return l_;
        if (s >= u_star_ - cs) return {h_star_, u_star_};
        const double c = (l_.u + 2.0 * cl - s) / 3.0;
        return {c * c / g, (l_.u + 2.0 * cl + 2.0 * s) / 3.0};
    }
    const double cr = std::sqrt(g * r_.h);
    if (h_star_ > r_.h) {
        const double S = r_.u + cr * std::sqrt(0.5 * (h_star_ + r_.h) * h_star_ / (r_.h * r_.h));
        return s >= S ? r_ : WaterState{h_star_, u_star_};
    }
    if (s >= r_.u + cr) return r_;
    if (s <= u_star_ + cs) return {h_star_, u_star_};
    const double c = (-r_.u + 2.0 * cr + s) / 3.0;
    return {c * c / g, (r_.u - 2.0 * cr + 2.0 * s) / 3.0};
}

// Rusanov finite volume

namespace {

struct System {
    int n;
    std::function<void(const double*, double*)> flux;
    std::function<double(const double*)> speed;
    std::function<bool(const double*)> admissible;
};

// Ghost-cell kinds per side: 0 periodic, 1 wall, 2 fixed (inflow), 3 transmissive.
FieldSet rusanov(const System& sys, FieldSet q, double dx, double T, int left, int right,
                 int mom_index)
{
    const int nc = static_cast<int>(q[0].size());
    const int n = sys.n;
    std::vector<double> fixed_l(n), fixed_r(n);
    for (int i = 0; i < n; ++i) {
        fixed_l[i] = q[i][0];
        fixed_r[i] = q[i][nc - 1];
    }
    std::vector<double> ext((nc + 2) * n), F((nc + 1) * n), smax(nc + 2);
    double t = 0.0;
    while (t < T) {
        for (int j = 0; j < nc; ++j)
            for (int i = 0; i < n; ++i) ext[(j + 1) * n + i] = q[i][j];
        auto ghost = [&](int kind, int gidx, int inner, int periodic_src,
                         const std::vector<double>& fixed) {
            for (int i = 0; i < n; ++i) {
                double v;
                switch (kind) {
                case 0: v = q[i][periodic_src]; break;
                case 1: v = q[i][inner] * (i == mom_index ? -1.0 : 1.0); break;
                case 2: v = fixed[i]; break;
                default: v = q[i][inner]; break;
                }
                ext[gidx * n + i] = v;
            }
        };
        ghost(left, 0, 0, nc - 1, fixed_l);
        ghost(right, nc + 1, nc - 1, 0, fixed_r);

        double smx = 0.0;
        for (int j = 0; j < nc + 2; ++j) {
            const double* u = &ext[j * n];
            if (!sys.admissible(u)) throw OracleError("fv_reference: positivity loss");
            smax[j] = sys.speed(u);
            smx = std::max(smx, smax[j]);
        }
        double dt = 0.45 * dx / smx;
        if (t + dt > T) dt = T - t;
        std::vector<double> fl(n), fr(n);
        for (int j = 0; j <= nc; ++j) {
            const double* ul = &ext[j * n];
            const double* ur = &ext[(j + 1) * n];
            sys.flux(ul, fl.data());
            sys.flux(ur, fr.data());
            const double a = std::max(smax[j], smax[j + 1]);
            for (int i = 0; i < n; ++i) F[j * n + i] = 0.5 * (fl[i] + fr[i]) - 0.5 * a * (ur[i] - ul[i]);
        }
        for (int j = 0; j < nc; ++j)
            for (int i = 0; i < n; ++i) q[i][j] -= dt / dx * (F[(j + 1) * n + i] - F[j * n + i]);
        t += dt;
    }
    return q;
}

int ghost_kind(BoundaryKind k)
{
    switch (k) {
    case BoundaryKind::Periodic: return 0;
    case BoundaryKind::ReflectingWall: return 1;
    case BoundaryKind::SupersonicInflow: return 2;
    case BoundaryKind::NonReflectingOutflow: return 3;
    }
    return 3;
}

ArrayXd centres(double a, double b, int cells)
{
    const double dx = (b - a) / cells;
    return a + dx * (ArrayXd::LinSpaced(cells, 0, cells - 1) + 0.5);
}

void check_cells(int cells)
{
    if (cells < 100) throw UsageError("fv_reference needs at least 100 cells");
}

} // namespace

FVSolution fv_burgers(const std::function<double(double)>& u0, double a, double b, int cells,
                      double T)
{
    check_cells(cells);
    FVSolution s;
    s.x = centres(a, b, cells);
    FieldSet q{s.x.unaryExpr(u0)};
    System sys{1, [](const double* u, double* f) { f[0] = 0.5 * u[0] * u[0]; },
               [](const double* u) { return std::abs(u[0]); }, [](const double*) { return true; }};
    s.q = rusanov(sys, std::move(q), (b - a) / cells, T, 0, 0, -1);
    return s;
}

FVSolution fv_euler(const std::function<GasState(double)>& ic, double a, double b, int cells,
                    double T, BoundaryDescriptor bc, double gamma)
{
    check_cells(cells);
    FVSolution s;
    s.x = centres(a, b, cells);
    FieldSet q(3, ArrayXd(cells));
    for (int j = 0; j < cells; ++j) {
        const GasState w = ic(s.x[j]);
        q[0][j] = w.rho;
        q[1][j] = w.p / (gamma - 1.0) + 0.5 * w.rho * w.u * w.u;
        q[2][j] = w.rho * w.u;
    }
    const double g = gamma;
    auto pressure = [g](const double* c) { return (g - 1.0) * (c[1] - 0.5 * c[2] * c[2] / c[0]); };
    System sys{3,
               [g, pressure](const double* c, double* f) {
                   const double u = c[2] / c[0], p = pressure(c);
                   f[0] = c[2];
                   f[1] = u * (c[1] + p);
                   f[2] = c[2] * u + p;
               },
               [g, pressure](const double* c) {
                   return std::abs(c[2] / c[0]) + std::sqrt(g * pressure(c) / c[0]);
               },
               [pressure](const double* c) { return c[0] > 0.0 && pressure(c) > 0.0; }};
    s.q = rusanov(sys, std::move(q), (b - a) / cells, T, ghost_kind(bc.left), ghost_kind(bc.right), 2);
    return s;
}

FVSolution fv_shallow_water(const std::function<WaterState(double)>& ic, double a, double b,
                            int cells, double T, bool periodic, double g)
{
    check_cells(cells);
    FVSolution s;
    s.x = centres(a, b, cells);
    FieldSet q(2, ArrayXd(cells));
    for (int j = 0; j < cells; ++j) {
        const WaterState w = ic(s.x[j]);
        q[0][j] = w.h;
        q[1][j] = w.h * w.u;
    }
    System sys{2,
               [g](const double* c, double* f) {
                   f[0] = c[1];
                   f[1] = c[1] * c[1] / c[0] + 0.5 * g * c[0] * c[0];
               },
               [g](const double* c) { return std::abs(c[1] / c[0]) + std::sqrt(g * c[0]); },
               [](const double* c) { return c[0] > 0.0; }};
    const int kind = periodic ? 0 : 3;
    s.q = rusanov(sys, std::move(q), (b - a) / cells, T, kind, kind, 1);
    return s;
}

ArrayXd interpolate_cells(const ArrayXd& xc, const ArrayXd& v, const ArrayXd& x)
{
    ArrayXd out(x.size());
    const Eigen::Index n = xc.size();
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double xx = x[j];
        if (xx <= xc[0]) { out[j] = v[0]; continue; }
        if (xx >= xc[n - 1]) { out[j] = v[n - 1]; continue; }
        const auto it = std::upper_bound(xc.data(), xc.data() + n, xx);
        const Eigen::Index i = (it - xc.data()) - 1;
        const double w = (xx - xc[i]) / (xc[i + 1] - xc[i]);
        out[j] = (1.0 - w) * v[i] + w * v[i + 1];
    }
    return out;
}

} // namespace specrelax
