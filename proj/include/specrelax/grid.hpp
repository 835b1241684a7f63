#pragma once

#include <Eigen/Core>

#include <complex>
#include <memory>

namespace specrelax {

using Eigen::ArrayXd;
using Eigen::ArrayXcd;
using cplx = std::complex<double>;

enum class Basis { FourierPeriodic, ChebyshevExtrema };

struct GridSpec {
    Basis basis = Basis::FourierPeriodic;
    double domain_start = 0.0;
    double domain_end = 1.0;
    int N = 16;                  // Fourier: 2N+1 nodes. Chebyshev: N+1 nodes.
    double kosloff_beta = 0.999; // Chebyshev only

    static GridSpec fourier(int Nx, double a, double b);
    static GridSpec chebyshev(int Nx, double a, double b, double beta = 0.999);
};

// Coefficients indexed by |k| (Fourier, k = 0..N) or by degree (Chebyshev,
// k = 0..N). Fourier entries are the k >= 0 half of the spectrum measured
// from the grid origin; negative modes follow from conjugate symmetry.
// Chebyshev coefficients live in the real part.
using Spectrum = ArrayXcd;

class Grid {
public:
    explicit Grid(const GridSpec& spec);

    const GridSpec& spec() const { return spec_; }
    Basis basis() const { return spec_.basis; }
    bool periodic() const { return spec_.basis == Basis::FourierPeriodic; }
    int N() const { return spec_.N; }
    int size() const { return static_cast<int>(x_.size()); }
    int modes() const { return spec_.N + 1; }
    double length() const { return spec_.domain_end - spec_.domain_start; }
    double kappa() const; // 2 pi / L

    const ArrayXd& x() const { return x_; }
    // Trapezoid weights; uniform dx on periodic grids.
    const ArrayXd& weights() const { return w_; }
    double min_spacing() const;

    Spectrum forward(const ArrayXd& u) const;
    ArrayXd backward(const Spectrum& c) const;

    // d/dx in physical space, both bases.
    Spectrum derivative_coeffs(const Spectrum& c) const;
    ArrayXd derivative(const ArrayXd& u) const;

    // Zero everything above floor(2N/3).
    int dealias_cutoff() const { return (2 * spec_.N) / 3; }
    Spectrum dealiased(const Spectrum& c) const;

private:
    struct Plans;
    GridSpec spec_;
    ArrayXd x_;
    ArrayXd w_;
    ArrayXd dXdx_; // Chebyshev chain factor per node
    std::shared_ptr<const Plans> plans_;
};

// Full Fourier spectrum in the order k = -N..N, with the phase of the grid
// origin included, i.e. u_hat(k) = (1/Nx) sum_j u_j exp(-i kappa k x_j).
ArrayXcd fourier_forward(const Grid& g, const ArrayXd& u);
// Throws NumericalError if the inverse has an imaginary part above 1e-9.
ArrayXd fourier_backward(const Grid& g, const ArrayXcd& full);

Spectrum chebyshev_forward(const Grid& g, const ArrayXd& u);
ArrayXd chebyshev_backward(const Grid& g, const Spectrum& a);

Spectrum dealias_23(const Spectrum& c, int N);
Spectrum hilbert(const Grid& g, const Spectrum& c);

// Reference-coordinate Chebyshev extrema, increasing: -cos(pi j / N).
ArrayXd chebyshev_extrema(int N);

} // namespace specrelax
