#include "doctest.h"

#include "specrelax/errors.hpp"
#include "specrelax/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace specrelax;

namespace {

constexpr double pi = std::numbers::pi;

// Plain bisection on u = sin(2 pi (x - t u)), valid where the root is unique.
double bisect_burgers(double x, double t)
{
    double lo = -1.0, hi = 1.0;
    auto f = [&](double u) { return u - std::sin(2 * pi * (x - t * u)); };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double burgers_energy(double t)
{
    const int n = 200000;
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        const double u = exact_burgers((j + 0.5) / n, t, BurgersIC::IC0);
        s += u * u;
    }
    return s / n;
}

double l1_cells(const FVSolution& fv, const std::function<double(double)>& exact, int comp = 0)
{
    double s = 0.0;
    const double dx = fv.x[1] - fv.x[0];
    for (int j = 0; j < fv.x.size(); ++j) s += std::abs(fv.q[comp][j] - exact(fv.x[j])) * dx;
    return s;
}

} // namespace

TEST_CASE("exact Burgers solution")
{
    for (double x : {0.0, 0.1, 0.37, 0.8}) {
        CHECK(exact_burgers(x, 0.0, BurgersIC::IC0) == std::sin(2 * pi * x));
        CHECK(exact_burgers(x, 0.0, BurgersIC::IC1) == doctest::Approx(std::sin(2 * pi * x - pi / 2)));
    }
    for (double t : {0.05, 0.2, 1.0}) {
        for (double d : {1e-6, 0.01, 0.2}) {
            CHECK(exact_burgers(0.5 - d, t, BurgersIC::IC0) == doctest::Approx(-exact_burgers(0.5 + d, t, BurgersIC::IC0)));
        }
    }
    CHECK(exact_burgers(0.25, 0.07, BurgersIC::IC0) == doctest::Approx(bisect_burgers(0.25, 0.07)).epsilon(1e-13));
    for (double x : {0.05, 0.3, 0.45, 0.6, 0.95})
        CHECK(exact_burgers(x, 0.12, BurgersIC::IC0) == doctest::Approx(bisect_burgers(x, 0.12)).epsilon(1e-12));
    // IC1 is IC0 moved right by a quarter period.
    CHECK(exact_burgers(0.6, 0.3, BurgersIC::IC1) == doctest::Approx(exact_burgers(0.35, 0.3, BurgersIC::IC0)));
    CHECK_THROWS_AS(exact_burgers(0.1, -1.0, BurgersIC::IC0), OracleError);
}

TEST_CASE("exact Burgers energy is conserved until the shock, then decays")
{
    const double e0 = burgers_energy(0.0);
    CHECK(e0 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(burgers_energy(0.07) == doctest::Approx(e0).epsilon(1e-8));
    const double e1 = burgers_energy(0.2), e2 = burgers_energy(0.5), e3 = burgers_energy(2.0);
    CHECK(e1 < e0 - 1e-4);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
}

TEST_CASE("Euler Riemann solver")
{
    SUBCASE("uniform data")
    {
        EulerRiemann rs({1.0, 0.3, 2.0}, {1.0, 0.3, 2.0});
        CHECK(rs.p_star() == doctest::Approx(2.0));
        CHECK(rs.u_star() == doctest::Approx(0.3));
        for (double s : {-3.0, 0.0, 0.3, 4.0}) {
            const GasState w = rs.sample(s);
            CHECK(w.rho == doctest::Approx(1.0));
            CHECK(w.p == doctest::Approx(2.0));
        }
    }
    SUBCASE("Sod")
    {
        const double g = 1.4;
        const GasState L{1.0, 0.0, 1.0}, R{0.125, 0.0, 0.1};
        EulerRiemann rs(L, R, g);
        CHECK(std::abs(rs.pressure_function(rs.p_star())) < 1e-12);
        CHECK(rs.p_star() == doctest::Approx(0.30313).epsilon(1e-4));
        CHECK(rs.u_star() == doctest::Approx(0.92745).epsilon(1e-4));
        CHECK(rs.rho_star_left() == doctest::Approx(0.42632).epsilon(1e-4));
        CHECK(rs.rho_star_right() == doctest::Approx(0.26557).epsilon(1e-4));

        // Rankine-Hugoniot across the right shock.
        const double cR = std::sqrt(g * R.p / R.rho);
        const double S = R.u + cR * std::sqrt((g + 1) / (2 * g) * rs.p_star() / R.p + (g - 1) / (2 * g));
        const GasState a = rs.sample(S - 1e-9), b = rs.sample(S + 1e-9);
        auto E = [g](const GasState& w) { return w.p / (g - 1) + 0.5 * w.rho * w.u * w.u; };
        CHECK(std::abs(a.rho * (a.u - S) - b.rho * (b.u - S)) < 1e-10);
        CHECK(std::abs(a.rho * a.u * (a.u - S) + a.p - b.rho * b.u * (b.u - S) - b.p) < 1e-10);
        CHECK(std::abs(E(a) * (a.u - S) + a.p * a.u - E(b) * (b.u - S) - b.p * b.u) < 1e-10);
        // Entropy rises through the shock.
        CHECK(a.p / std::pow(a.rho, g) > b.p / std::pow(b.rho, g));

        // Contact at x = u* t, shock at x = S t.
        const double t = 0.2;
        CHECK(rs.sample((rs.u_star() * t - 1e-6) / t).rho == doctest::Approx(rs.rho_star_left()));
        CHECK(rs.sample((rs.u_star() * t + 1e-6) / t).rho == doctest::Approx(rs.rho_star_right()));
        CHECK(rs.sample((S * t + 1e-6) / t).rho == doctest::Approx(0.125));
    }
    SUBCASE("mirror symmetry")
    {
        EulerRiemann a({1.0, 0.2, 1.0}, {0.3, -0.1, 0.4});
        EulerRiemann b({0.3, 0.1, 0.4}, {1.0, -0.2, 1.0});
        CHECK(b.p_star() == doctest::Approx(a.p_star()).epsilon(1e-13));
        CHECK(b.u_star() == doctest::Approx(-a.u_star()).epsilon(1e-13));
    }
    CHECK_THROWS_AS(EulerRiemann({1.0, -20.0, 1.0}, {1.0, 20.0, 1.0}), OracleError);
}

TEST_CASE("shallow-water dam break")
{
    ShallowWaterRiemann still({2.0, 0.0}, {2.0, 0.0});
    CHECK(still.h_star() == doctest::Approx(2.0));
    CHECK(still.u_star() == doctest::Approx(0.0).epsilon(1e-14));

    const double g = 1.0;
    ShallowWaterRiemann rs({3.0, 0.0}, {1.0, 0.0}, g);
    const double hs = rs.h_star(), us = rs.u_star();
    CHECK(std::abs(rs.depth_function(hs)) < 1e-12);
    CHECK(hs > 1.0);
    CHECK(hs < 3.0);
    // Left rarefaction: Riemann invariant u + 2 sqrt(g h) carried from the left state.
    CHECK(us + 2 * std::sqrt(g * hs) == doctest::Approx(2 * std::sqrt(3.0 * g)));
    // Right shock: mass and momentum jump conditions.
    const double S = rs.right_shock_speed();
    CHECK(std::abs(S * (hs - 1.0) - hs * us) < 1e-12);
    CHECK(std::abs(S * hs * us - (hs * us * us + 0.5 * g * hs * hs - 0.5 * g)) < 1e-12);
    // Lax entropy condition.
    CHECK(us + std::sqrt(g * hs) > S);
    CHECK(S > std::sqrt(g * 1.0));
    CHECK(rs.left_head_speed() == doctest::Approx(-std::sqrt(3.0)));
    CHECK(rs.left_tail_speed() == doctest::Approx(us - std::sqrt(g * hs)));

    // The solution depends on x/t only.
    const WaterState a = rs.sample(0.3 / 1.0), b = rs.sample(0.6 / 2.0);
    CHECK(a.h == b.h);
    CHECK(a.u == b.u);
    CHECK(rs.sample(-10.0).h == 3.0);
    CHECK(rs.sample(10.0).h == 1.0);
}

TEST_CASE("finite-volume references")
{
    SUBCASE("constant state")
    {
        const auto fv = fv_burgers([](double) { return 0.4; }, 0.0, 1.0, 200, 0.3);
        CHECK((fv.q[0] - 0.4).abs().maxCoeff() < 1e-14);
        const auto fe = fv_euler([](double) { return GasState{1.0, 0.0, 1.0}; }, -1.0, 1.0, 200, 0.1,
                                 {BoundaryKind::ReflectingWall, BoundaryKind::ReflectingWall});
        CHECK((fe.q[0] - 1.0).abs().maxCoeff() < 1e-13);
    }
    SUBCASE("Burgers through the shock")
    {
        auto exact = [](double x) { return exact_burgers(x, 0.2, BurgersIC::IC0); };
        auto u0 = [](double x) { return std::sin(2 * pi * x); };
        const double e2 = l1_cells(fv_burgers(u0, 0.0, 1.0, 2000, 0.2), exact);
        const double e8 = l1_cells(fv_burgers(u0, 0.0, 1.0, 8000, 0.2), exact);
        CHECK(e8 < 2e-3);
        const double order = std::log(e2 / e8) / std::log(4.0);
        CHECK(order >= 0.7);
        CHECK(order <= 1.1);
    }
    SUBCASE("Sod")
    {
        const GasState L{1.0, 0.0, 1.0}, R{0.125, 0.0, 0.1};
        EulerRiemann rs(L, R);
        const auto fv = fv_euler([&](double x) { return x < 0.0 ? L : R; }, -1.0, 1.0, 8000, 0.2,
                                 {BoundaryKind::ReflectingWall, BoundaryKind::ReflectingWall});
        CHECK(l1_cells(fv, [&](double x) { return rs.sample(x / 0.2).rho; }) < 5e-3);
    }
    CHECK_THROWS(fv_burgers([](double) { return 0.0; }, 0.0, 1.0, 10, 0.1));
}
