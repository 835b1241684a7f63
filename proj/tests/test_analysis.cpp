#include "doctest.h"

#include "specrelax/analysis.hpp"
#include "specrelax/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace specrelax;

namespace {

constexpr double pi = std::numbers::pi;

ArrayXd exp_spectrum(int N, double delta, double a = 1.0, double p = 0.0)
{
    ArrayXd s(N + 1);
    s[0] = 1.0;
    for (int k = 1; k <= N; ++k) s[k] = a * std::pow(k, p) * std::exp(-2.0 * delta * k);
    return s;
}

} // namespace

TEST_CASE("error norms")
{
    const ArrayXd w = ArrayXd::Constant(10, 0.1);
    const ErrorNorms z = error_norms(ArrayXd::Zero(10), w);
    CHECK(z.L1 == 0.0);
    CHECK(z.L2 == 0.0);
    CHECK(z.Linf == 0.0);

    const ErrorNorms c = error_norms(ArrayXd::Constant(10, -0.3), w);
    CHECK(c.L1 == doctest::Approx(0.3));
    CHECK(c.L2 == doctest::Approx(0.3));
    CHECK(c.Linf == doctest::Approx(0.3));

    // On a unit-length domain L1 <= L2 <= Linf.
    std::mt19937 rng(2);
    std::normal_distribution<double> d;
    ArrayXd e(10);
    for (auto& v : e) v = d(rng);
    const ErrorNorms r = error_norms(e, w);
    CHECK(r.L1 <= r.L2 + 1e-15);
    CHECK(r.L2 <= r.Linf + 1e-15);
    CHECK_THROWS_AS(error_norms(e, ArrayXd::Ones(3)), UsageError);
}

TEST_CASE("oversampled error of an exactly represented field is zero")
{
    Grid g(GridSpec::fourier(33, 0.0, 1.0));
    const ArrayXd u = (2 * pi * g.x()).sin();
    const Sampler ref = [](const ArrayXd& x) { return ArrayXd((2 * pi * x).sin()); };
    CHECK(error_norms(g, u, ref, Quadrature::Oversampled).Linf < 1e-13);
    CHECK(error_norms(g, u, ref, Quadrature::Nodal).Linf < 1e-14);
    const Refined r = refine(g, u, 4);
    CHECK(r.x.size() >= 4 * g.size() - 1);
    CHECK(r.dx == doctest::Approx(1.0 / r.x.size()));
}

TEST_CASE("convergence table")
{
    const auto rows = convergence_table({100, 200, 400}, {1e-2, 2.5e-3, 6.25e-4});
    CHECK_FALSE(rows[0].order.has_value());
    CHECK(*rows[1].order == doctest::Approx(2.0));
    CHECK(*rows[2].order == doctest::Approx(2.0));

    CHECK(*convergence_table({10, 20}, {0.5, 0.5})[1].order == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(*convergence_table({39, 77}, {1.0e-2, 5.35e-3})[1].order ==
          doctest::Approx(std::log(1.0e-2 / 5.35e-3) / std::log(77.0 / 39.0)));
    CHECK(*convergence_table({39, 77}, {1.0e-2, 5.35e-3})[1].order == doctest::Approx(0.92).epsilon(0.01));

    // Scaling every error leaves the orders alone.
    const auto a = convergence_table({39, 77, 153}, {3e-2, 1e-2, 4e-3});
    const auto b = convergence_table({39, 77, 153}, {3e-5, 1e-5, 4e-6});
    CHECK(*a[1].order == doctest::Approx(*b[1].order));
    CHECK(*a[2].order == doctest::Approx(*b[2].order));
    CHECK_THROWS_AS(convergence_table({39}, {1.0}), UsageError);
}

TEST_CASE("delta fit")
{
    SUBCASE("exact exponential")
    {
        const DeltaFit f = fit_delta(exp_spectrum(300, 0.02, 3.0), 10, 200);
        CHECK(f.delta == doctest::Approx(0.02).epsilon(1e-12));
        CHECK(f.residual < 1e-12);
        CHECK(f.modes == 191);
        CHECK(f.quality_ok);
    }
    SUBCASE("algebraic prefactor")
    {
        const ArrayXd s = exp_spectrum(300, 0.005, 1.0, -8.0 / 3.0);
        CHECK(fit_delta(s, 10, 300, true).delta == doctest::Approx(0.005).epsilon(1e-10));
        // Without the log term the prefactor biases the slope.
        CHECK(std::abs(fit_delta(s, 10, 300, false).delta - 0.005) > 1e-4);
    }
    SUBCASE("planted widths")
    {
        std::mt19937 rng(9);
        std::normal_distribution<double> noise(0.0, 0.05);
        for (double d : {1e-3, 3e-3, 1e-2, 3e-2}) {
            ArrayXd s = exp_spectrum(500, d);
            for (int k = 1; k <= 500; ++k) s[k] *= std::exp(noise(rng));
            const DeltaFit f = fit_delta(s, 20, 400);
            CHECK(std::abs(f.delta - d) < 2e-4);
            CHECK(f.quality_ok);
        }
    }
    SUBCASE("white noise has no width")
    {
        std::mt19937 rng(4);
        std::uniform_real_distribution<double> u(0.5, 1.5);
        ArrayXd s(301);
        for (auto& v : s) v = u(rng);
        CHECK(std::abs(fit_delta(s, 10, 300).delta) < 1e-3);
    }
    SUBCASE("noise floor and bad windows")
    {
        // exp(-0.4 k) drops below 1e-28 after k = 161.
        ArrayXd s = exp_spectrum(300, 0.2);
        CHECK_THROWS_AS(fit_delta(s, 200, 300), FitError);
        CHECK_THROWS_AS(fit_delta(s, 0, 100), FitError);
        CHECK_THROWS_AS(fit_delta(s, 50, 400), FitError);
        CHECK(fit_delta(s, 10, 300).modes == 152);
    }
}

TEST_CASE("fit window")
{
    SchemeConfig pps;
    pps.kind = SchemeKind::PPS;
    pps.dealias = true;
    CHECK(select_fit_window(pps, 307).k_max == 204);
    CHECK(select_fit_window(pps, 307).k_min == 25);
    pps.dealias = false;
    CHECK(select_fit_window(pps, 307).k_max == 307);

    SchemeConfig sr;
    sr.kind = SchemeKind::SR;
    sr.dealias = false;
    sr.kernel.family = KernelFamily::DeLaValleePoussin;
    sr.kernel.gamma = 0.5;
    sr.kernel.r = 0.5;
    // m = 1600^0.5 = 40: flat to k = 20.
    sr.kernel.alpha = 1.0;
    const FitWindow w = select_fit_window(sr, 1600);
    CHECK(w.k_max == 20);
    CHECK(w.k_min == 8);
    sr.kernel.gamma = 0.3;
    CHECK_THROWS_AS(select_fit_window(sr, 1600), FitError);
}

TEST_CASE("t* extrapolation")
{
    std::vector<DeltaSample> s;
    for (double t = 0.0; t < 0.11; t += 0.01) s.push_back({t, 0.3 * (0.15 - t), 8, 100, 0.0, true});
    s.push_back({0.2, 5.0, 8, 100, 0.0, false});
    const TStarFit f = extrapolate_t_star(s, 0.02, 0.1);
    CHECK(f.t_star == doctest::Approx(0.15));
    CHECK(f.slope == doctest::Approx(-0.3));
    CHECK(f.points == 9);

    // delta ~ (t* - t)^(3/2).
    std::vector<DeltaSample> q;
    for (double t = 0.0; t < 0.11; t += 0.01) q.push_back({t, std::pow(0.15 - t, 1.5), 8, 100, 0.0, true});
    CHECK(extrapolate_t_star(q, 0.0, 0.1, 1.5).t_star == doctest::Approx(0.15));
    CHECK_THROWS_AS(extrapolate_t_star(q, 0.5, 0.6), FitError);
}

TEST_CASE("energy and spectrum")
{
    Grid g(GridSpec::fourier(65, 0.0, 1.0));
    const ArrayXd s = (2 * pi * g.x()).sin();
    CHECK(energy(g, s) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(energy(g, ArrayXd::Zero(g.size())) == 0.0);
    const ArrayXd P = power_spectrum(g, s);
    CHECK(P[1] == doctest::Approx(0.25));
    // Parseval with the one-sided spectrum on a unit period.
    std::mt19937 rng(3);
    std::normal_distribution<double> d;
    ArrayXd u(g.size());
    for (auto& v : u) v = d(rng);
    const ArrayXd Pu = power_spectrum(g, u);
    CHECK(energy(g, u) == doctest::Approx(Pu[0] + 2.0 * Pu.tail(g.N()).sum()).epsilon(1e-12));
}

TEST_CASE("CSV output keeps 17 significant digits")
{
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    std::ostringstream os;
    write_columns(os, {"a", "b"}, {ArrayXd::Constant(2, 1.0), ArrayXd::Constant(2, 2.5)});
    CHECK(os.str() == "a,b\n1,2.5\n1,2.5\n");
    CHECK_THROWS_AS(write_columns(os, {"a", "b"}, {ArrayXd::Zero(2), ArrayXd::Zero(3)}), UsageError);
}
