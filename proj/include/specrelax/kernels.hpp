#pragma once

#include "specrelax/grid.hpp"

#include <string>

namespace specrelax {

enum class KernelFamily {
    Identity,
    FejerKorovkin,
    Jackson,
    JacksonDLVP,
    DeLaValleePoussin,
    TT05,
    MMO78,
    RSK,
    SVV_Q,
};

struct KernelSpec {
    KernelFamily family = KernelFamily::FejerKorovkin;
    double alpha = 0.7;
    double gamma = 0.99;
    double r = 0.5;          // DLVP plateau fraction, RSK order
    double mmo_beta = 2.5;   // MMO78: xi = 10^-beta
    double mmo_p = 1.0;      // MMO78 exponent
    double svv_M = 0.0;      // SVV_Q cutoff
};

struct RelaxationParams {
    double m;
    double tau;
};

RelaxationParams relaxation_params(int N, double alpha, double gamma);

// Multipliers for |k| = 0..N.
ArrayXd kernel_coeffs(const KernelSpec& spec, int N);
ArrayXd svv_Q_coeffs(int N, double M);

// Single-family evaluators at a real bandwidth.
double fejer_korovkin(double k, double m);
double jackson(double k, double m);
double jackson_dlvp(double k, double m);
double dlvp(double k, double n, double p);

// Scales coefficient k by mult[k].
Spectrum apply_kernel(const Spectrum& c, const ArrayXd& mult);
ArrayXd apply_kernel(const Grid& g, const ArrayXd& u, const ArrayXd& mult);

// Real-space profile K(x_j) = sum_{|k|<=N} K_hat(k) e^{i 2 pi k j / n} on n points.
ArrayXd synthesize_kernel(const ArrayXd& mult, int n);

KernelFamily parse_kernel_family(const std::string& name);
std::string to_string(KernelFamily f);

} // namespace specrelax
