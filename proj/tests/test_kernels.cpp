#include "doctest.h"

#include "specrelax/errors.hpp"
#include "specrelax/kernels.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace specrelax;

namespace {

ArrayXd multipliers(double (*f)(double, double), int N, double m)
{
    ArrayXd K(N + 1);
    for (int k = 0; k <= N; ++k) K[k] = f(k, m);
    return K;
}

} // namespace

TEST_CASE("relaxation parameters")
{
    const auto p = relaxation_params(307, 0.7, 0.99);
    CHECK(p.m == doctest::Approx(std::pow(307.0, 0.99)));
    CHECK(p.m == doctest::Approx(289.9).epsilon(1e-3));
    CHECK(p.tau == doctest::Approx(0.01816).epsilon(1e-3));
    CHECK(relaxation_params(307, 1.18, 0.99).tau == doctest::Approx(1.15e-3).epsilon(5e-3));
    CHECK(relaxation_params(307, 0.0, 0.5).tau == 1.0);
    CHECK_THROWS_AS(relaxation_params(307, 0.7, 1.0), ParameterError);
    CHECK_THROWS_AS(relaxation_params(307, 0.7, 0.0), ParameterError);
}

TEST_CASE("kernel values at the ends of their support")
{
    for (double m : {1.0, 5.0, 17.0, 289.9}) {
        CHECK(fejer_korovkin(0, m) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(fejer_korovkin(std::floor(m) + 1, m) == 0.0);
        CHECK(jackson(0, m) == doctest::Approx(1.0).epsilon(1e-14));
    }
    // Jackson vanishes beyond 2m - 2, the Jackson-type DLVP beyond 2m - 1.
    CHECK(jackson(2 * 10 - 2, 10) > 0.0);
    CHECK(jackson(2 * 10 - 1, 10) == 0.0);
    CHECK(jackson_dlvp(2 * 10 - 1, 10) > 0.0);
    CHECK(jackson_dlvp(2 * 10, 10) == 0.0);

    CHECK(dlvp(5, 10, 10) == 1.0);
    CHECK(dlvp(15, 10, 10) == 0.5);
    CHECK(dlvp(20, 10, 10) == 0.0);
    CHECK(dlvp(21, 10, 10) == 0.0);
}

TEST_CASE("Fejer-Korovkin decreases on its support")
{
    for (double m : {8.0, 64.0, 289.9}) {
        double prev = 1.0;
        for (int k = 1; k <= m; ++k) {
            const double v = fejer_korovkin(k, m);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("positive kernels are positive in real space")
{
    const int n = 4096;
    for (int m : {4, 16, 64, 290}) {
        const int N = 2 * m;
        CHECK(synthesize_kernel(multipliers(fejer_korovkin, N, m), n).minCoeff() >= -1e-10);
        CHECK(synthesize_kernel(multipliers(jackson, N, m), n).minCoeff() >= -1e-10);
        CHECK(synthesize_kernel(multipliers(jackson_dlvp, N, m), n).minCoeff() >= -1e-10);
    }
}

TEST_CASE("every family keeps the mean")
{
    Grid g(GridSpec::fourier(129, 0.0, 1.0));
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ArrayXd u(g.size());
    for (auto& v : u) v = d(rng);
    for (auto f : {KernelFamily::FejerKorovkin, KernelFamily::Jackson, KernelFamily::JacksonDLVP,
                   KernelFamily::DeLaValleePoussin, KernelFamily::TT05, KernelFamily::MMO78}) {
        KernelSpec s;
        s.family = f;
        const ArrayXd K = kernel_coeffs(s, g.N());
        CHECK(K[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(apply_kernel(g, u, K).mean() == doctest::Approx(u.mean()).epsilon(1e-13));
    }
    // The regularised Shannon kernel as written scales the mean by erf(r pi / sqrt 2).
    KernelSpec s;
    s.family = KernelFamily::RSK;
    CHECK(kernel_coeffs(s, g.N())[0] == doctest::Approx(std::erf(s.r * std::numbers::pi / std::sqrt(2.0))));
}

TEST_CASE("kernel multiplier vector")
{
    KernelSpec s;
    s.family = KernelFamily::FejerKorovkin;
    s.gamma = 0.99;
    const ArrayXd K = kernel_coeffs(s, 307);
    CHECK(K.size() == 308);
    CHECK(K[0] == 1.0);
    CHECK(K[290] == 0.0); // m = 289.9
    CHECK(K[289] > 0.0);

    s.family = KernelFamily::DeLaValleePoussin;
    s.r = 0.5;
    const ArrayXd D = kernel_coeffs(s, 307);
    CHECK(D[144] == 1.0);
    CHECK(D[289] > 0.0);
    CHECK(D[290] == 0.0);

    s.family = KernelFamily::Identity;
    CHECK(kernel_coeffs(s, 10).minCoeff() == 1.0);
    CHECK_THROWS_AS(parse_kernel_family("gauss"), ParameterError);
    CHECK(parse_kernel_family("feko") == KernelFamily::FejerKorovkin);
}

TEST_CASE("SVV multipliers")
{
    const double M = 2.0 * std::sqrt(307.0);
    const ArrayXd Q = svv_Q_coeffs(307, M);
    CHECK(Q[307] == 1.0);
    for (int k = 0; k <= 35; ++k) CHECK(Q[k] == 0.0);
    CHECK(Q[60] > 0.0);
    const double ref = std::exp(-(207.0 * 207.0) / ((100.0 - M) * (100.0 - M)));
    CHECK(Q[100] == doctest::Approx(ref).epsilon(1e-14));
    CHECK(Q[100] == doctest::Approx(3.9e-5).epsilon(0.05));
    CHECK_THROWS_AS(svv_Q_coeffs(307, 400.0), ParameterError);
}

TEST_CASE("applying a kernel")
{
    Grid g(GridSpec::fourier(65, 0.0, 1.0));
    const ArrayXd u = (2 * std::numbers::pi * g.x()).sin() + 0.3;
    CHECK((apply_kernel(g, u, ArrayXd::Ones(33)) - u).abs().maxCoeff() < 1e-14);
    ArrayXd only_mean = ArrayXd::Zero(33);
    only_mean[0] = 1.0;
    CHECK((apply_kernel(g, u, only_mean) - u.mean()).abs().maxCoeff() < 1e-14);

    KernelSpec s;
    const ArrayXd K = kernel_coeffs(s, 32);
    const ArrayXd twice = apply_kernel(g, apply_kernel(g, u, K), K);
    CHECK((twice - apply_kernel(g, u, K.square())).abs().maxCoeff() < 1e-14);
    CHECK_THROWS_AS(apply_kernel(g.forward(u), ArrayXd::Ones(5)), UsageError);
}
