#include "specrelax/kernels.hpp"
#include "specrelax/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace specrelax {

namespace {

constexpr double pi = std::numbers::pi;

void check_gamma(double gamma)
{
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ParameterError("gamma must lie in (0,1), got " + std::to_string(gamma));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

RelaxationParams relaxation_params(int N, double alpha, double gamma)
{
    if (N < 2) throw ParameterError("relaxation_params: N must be >= 2");
    check_gamma(gamma);
    return {std::pow(static_cast<double>(N), gamma), std::pow(static_cast<double>(N), -alpha)};
}

double fejer_korovkin(double k, double m)
{
    k = std::abs(k);
    if (k > m) return 0.0;
    const double q = m + 2.0;
    return (1.0 - k / q) * std::cos(k * pi / q) + std::sin(k * pi / q) / (q * std::tan(pi / q));
}

double jackson(double k, double m)
{
    k = std::abs(k);
    const double s = 1.0 / (2.0 * m * (2.0 * m * m + 1.0));
    if (k <= m) return s * (3 * k * k * k - 6 * m * k * k - 3 * k + 4 * m * m * m + 2 * m);
    if (k <= 2 * m - 2)
        return s * (-k * k * k + 6 * m * k * k - (12 * m * m - 1) * k + 8 * m * m * m - 2 * m);
    return 0.0;
}

double jackson_dlvp(double k, double m)
{
    const double q = std::abs(k) / m;
    if (std::abs(k) <= m) return 1.0 - 1.5 * q * q + 0.75 * q * q * q;
    if (std::abs(k) <= 2 * m - 1) return 0.25 * (2.0 - q) * (2.0 - q) * (2.0 - q);
    return 0.0;
}

double dlvp(double k, double n, double p)
{
    k = std::abs(k);
    if (k <= n) return 1.0;
    if (k <= n + p) return (n + p - k) / p;
    return 0.0;
}

ArrayXd svv_Q_coeffs(int N, double M)
{
    if (!(M > 0.0 && M < N))
        throw ParameterError("SVV cutoff M must satisfy 0 < M < N");
    ArrayXd q = ArrayXd::Zero(N + 1);
    for (int k = 0; k <= N; ++k) {
        if (k > M) {
            double num = k - N, den = k - M;
            q[k] = std::exp(-(num * num) / (den * den));
        }
    }
    return q;
}

ArrayXd kernel_coeffs(const KernelSpec& spec, int N)
{
    if (N < 1) throw ParameterError("kernel_coeffs: N must be >= 1");
    ArrayXd K(N + 1);
    const double dN = N;
    switch (spec.family) {
    case KernelFamily::Identity:
        K.setOnes();
        return K;
    case KernelFamily::SVV_Q:
        return svv_Q_coeffs(N, spec.svv_M);
    case KernelFamily::TT05: {
        // gamma here only sets the filter order, so any positive value is allowed
        const double p = std::pow(dN, spec.gamma);
        for (int k = 0; k <= N; ++k) {
            double q = k / dN;
            K[k] = (k >= N) ? 0.0 : std::exp(std::pow(q, p) / (q * q - 1.0));
        }
        return K;
    }
    case KernelFamily::RSK: {
        check_gamma(spec.gamma);
        const double delta = std::pow(dN, -spec.gamma);
        const double sigma = spec.r * delta;
        const double s = sigma / std::sqrt(2.0);
        for (int k = 0; k <= N; ++k)
            K[k] = 0.5 * (std::erf(s * (pi / delta - k)) + std::erf(s * (pi / delta + k)));
        return K;
    }
    default:
        break;
    }

    check_gamma(spec.gamma);
    const double m = std::pow(dN, spec.gamma);
    switch (spec.family) {
    case KernelFamily::FejerKorovkin:
        if (m + 2.0 <= 1.0) throw ParameterError("Fejer-Korovkin needs m + 2 > 1");
        for (int k = 0; k <= N; ++k) K[k] = fejer_korovkin(k, m);
        K[0] = 1.0;
        break;
    case KernelFamily::Jackson:
        for (int k = 0; k <= N; ++k) K[k] = jackson(k, m);
        K[0] = 1.0;
        break;
    case KernelFamily::JacksonDLVP:
        for (int k = 0; k <= N; ++k) K[k] = jackson_dlvp(k, m);
        break;
    case KernelFamily::DeLaValleePoussin: {
        if (!(spec.r > 0.0 && spec.r < 1.0)) throw ParameterError("DLVP needs r in (0,1)");
        const double n = spec.r * m, p = (1.0 - spec.r) * m;
        for (int k = 0; k <= N; ++k) K[k] = dlvp(k, n, p);
        break;
    }
    case KernelFamily::MMO78: {
        const double xi = std::pow(10.0, -spec.mmo_beta);
        for (int k = 0; k <= N; ++k)
            K[k] = (k <= m) ? 1.0 : std::exp(-xi * std::pow(k - m, 2.0 * spec.mmo_p));
        break;
    }
    default:
        throw ParameterError("kernel_coeffs: unhandled family");
    }
    return K;
}

Spectrum apply_kernel(const Spectrum& c, const ArrayXd& mult)
{
    if (mult.size() != c.size())
        throw UsageError("apply_kernel: multiplier length " + std::to_string(mult.size()) +
                         " does not match coefficient length " + std::to_string(c.size()));
    return c * mult.cast<cplx>();
}

ArrayXd apply_kernel(const Grid& g, const ArrayXd& u, const ArrayXd& mult)
{
    return g.backward(apply_kernel(g.forward(u), mult));
}

ArrayXd synthesize_kernel(const ArrayXd& mult, int n)
{
    const int N = static_cast<int>(mult.size()) - 1;
    if (n <= 2 * N) throw UsageError("synthesize_kernel: need more points than modes");
    ArrayXd out(n);
    for (int j = 0; j < n; ++j) {
        double s = mult[0];
        for (int k = 1; k <= N; ++k) s += 2.0 * mult[k] * std::cos(2.0 * pi * k * j / n);
        out[j] = s;
    }
    return out;
}

KernelFamily parse_kernel_family(const std::string& name)
{
    const std::string s = lower(name);
    if (s == "identity" || s == "none") return KernelFamily::Identity;
    if (s == "feko" || s == "fejer-korovkin" || s == "fejerkorovkin") return KernelFamily::FejerKorovkin;
    if (s == "jackson" || s == "jksn") return KernelFamily::Jackson;
    if (s == "jdlvp" || s == "jackson-dlvp") return KernelFamily::JacksonDLVP;
    if (s == "dlvp" || s == "delavalleepoussin") return KernelFamily::DeLaValleePoussin;
    if (s == "tt05") return KernelFamily::TT05;
    if (s == "mmo78") return KernelFamily::MMO78;
    if (s == "rsk") return KernelFamily::RSK;
    if (s == "svv" || s == "svv_q") return KernelFamily::SVV_Q;
    throw ParameterError("unknown kernel family '" + name + "'");
}

std::string to_string(KernelFamily f)
{
    switch (f) {
    case KernelFamily::Identity: return "identity";
    case KernelFamily::FejerKorovkin: return "feko";
    case KernelFamily::Jackson: return "jackson";
    case KernelFamily::JacksonDLVP: return "jdlvp";
    case KernelFamily::DeLaValleePoussin: return "dlvp";
    case KernelFamily::TT05: return "tt05";
    case KernelFamily::MMO78: return "mmo78";
    case KernelFamily::RSK: return "rsk";
    case KernelFamily::SVV_Q: return "svv_q";
    }
    return "?";
}

} // namespace specrelax
