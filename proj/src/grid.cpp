#include "specrelax/grid.hpp"
#include "specrelax/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace specrelax {

namespace {

constexpr double pi = std::numbers::pi;

// The FFTW planner is not re-entrant; execution with the new-array API is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

struct Grid::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    fftw_plan dct = nullptr;

    Plans(Basis basis, int n)
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (basis == Basis::FourierPeriodic) {
            double* r = fftw_alloc_real(n);
            fftw_complex* c = fftw_alloc_complex(n / 2 + 1);
            r2c = fftw_plan_dft_r2c_1d(n, r, c, flags);
            c2r = fftw_plan_dft_c2r_1d(n, c, r, flags);
            fftw_free(r);
            fftw_free(c);
        } else {
            double* a = fftw_alloc_real(n);
            double* b = fftw_alloc_real(n);
            dct = fftw_plan_r2r_1d(n, a, b, FFTW_REDFT00, flags);
            fftw_free(a);
            fftw_free(b);
        }
    }

    ~Plans()
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
        if (dct) fftw_destroy_plan(dct);
    }

    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

GridSpec GridSpec::fourier(int Nx, double a, double b)
{
    if (Nx < 3 || Nx % 2 == 0)
        throw UsageError("Fourier grids need an odd point count Nx = 2N+1 >= 3, got " +
                         std::to_string(Nx));
    return GridSpec{Basis::FourierPeriodic, a, b, (Nx - 1) / 2, 0.999};
}

GridSpec GridSpec::chebyshev(int Nx, double a, double b, double beta)
{
    return GridSpec{Basis::ChebyshevExtrema, a, b, Nx, beta};
}

ArrayXd chebyshev_extrema(int N)
{
    ArrayXd X(N + 1);
    for (int j = 0; j <= N; ++j) X[j] = -std::cos(pi * j / N);
    // cos is not exactly antisymmetric in floating point
    for (int j = 0; j <= N / 2; ++j) {
        double s = 0.5 * (X[j] - X[N - j]);
        X[j] = s;
        X[N - j] = -s;
    }
    if (N % 2 == 0) X[N / 2] = 0.0;
    return X;
}

Grid::Grid(const GridSpec& spec) : spec_(spec)
{
    const double a = spec.domain_start, b = spec.domain_end;
    if (!(b > a)) throw UsageError("grid domain must satisfy domain_end > domain_start");
    if (spec.basis == Basis::FourierPeriodic) {
        if (spec.N < 1) throw UsageError("Fourier bandwidth N must be >= 1");
        const int n = 2 * spec.N + 1;
        const double h = (b - a) / n;
        x_ = a + h * ArrayXd::LinSpaced(n, 0, n - 1);
        w_ = ArrayXd::Constant(n, h);
        plans_ = std::make_shared<const Plans>(spec.basis, n);
        return;
    }

    if (spec.N < 2) throw UsageError("Chebyshev grids need N >= 2");
    const double beta = spec.kosloff_beta;
    if (!(beta > 0.0 && beta < 1.0)) throw UsageError("kosloff_beta must lie strictly in (0,1)");

    const ArrayXd X = chebyshev_extrema(spec.N);
    const double asb = std::asin(beta);
    const ArrayXd chi = (beta * X).asin() / asb;
    x_ = a + 0.5 * (b - a) * (chi + 1.0);
    x_[0] = a;
    x_[spec.N] = b;
    dXdx_ = (asb / beta) * (1.0 - beta * beta * X.square()).sqrt() * (2.0 / (b - a));

    const int n = spec.N + 1;
    w_ = ArrayXd::Zero(n);
    for (int j = 0; j + 1 < n; ++j) {
        const double d = 0.5 * (x_[j + 1] - x_[j]);
        w_[j] += d;
        w_[j + 1] += d;
    }
    plans_ = std::make_shared<const Plans>(spec.basis, n);
}

double Grid::kappa() const { return 2.0 * pi / length(); }

double Grid::min_spacing() const
{
    if (periodic()) return length() / size();
    return (x_.tail(size() - 1) - x_.head(size() - 1)).minCoeff();
}

Spectrum Grid::forward(const ArrayXd& u) const
{
    if (u.size() != size()) throw UsageError("forward: nodal vector has the wrong length");
    const int N = spec_.N;
    Spectrum c(N + 1);
    if (periodic()) {
        const int n = size();
        fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(u.data()),
                             reinterpret_cast<fftw_complex*>(c.data()));
        c /= static_cast<double>(n);
        return c;
    }
    ArrayXd y(N + 1);
    fftw_execute_r2r(plans_->dct, const_cast<double*>(u.data()), y.data());
    // Nodes are stored as X_j = -cos(pi j/N), hence the alternating sign.
    for (int k = 0; k <= N; ++k) {
        double ck = (k == 0 || k == N) ? 2.0 : 1.0;
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        c[k] = cplx(sgn * y[k] / (N * ck), 0.0);
    }
    return c;
}

ArrayXd Grid::backward(const Spectrum& c) const
{
    const int N = spec_.N;
    if (c.size() != N + 1) throw UsageError("backward: coefficient vector has the wrong length");
    ArrayXd u(size());
    if (periodic()) {
        Spectrum tmp = c; // c2r overwrites its input
        tmp[0] = cplx(tmp[0].real(), 0.0);
        fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(tmp.data()), u.data());
        return u;
    }
    ArrayXd z(N + 1);
    for (int k = 0; k <= N; ++k) {
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        double half = (k == 0 || k == N) ? 1.0 : 0.5;
        z[k] = sgn * half * c[k].real();
    }
    fftw_execute_r2r(plans_->dct, z.data(), u.data());
    return u;
}

Spectrum Grid::derivative_coeffs(const Spectrum& c) const
{
    const int N = spec_.N;
    if (c.size() != N + 1) throw UsageError("derivative: coefficient vector has the wrong length");
    if (periodic()) {
        Spectrum d(N + 1);
        const double kap = kappa();
        for (int k = 0; k <= N; ++k) d[k] = cplx(0.0, kap * k) * c[k];
        return d;
    }
    // Reference-coordinate derivative; the chain factor is nodal and is
    // applied by derivative().
    Spectrum d = Spectrum::Zero(N + 1);
    double bkp1 = 0.0, bk = 2.0 * N * c[N].real();
    d[N - 1] = bk;
    for (int k = N - 1; k >= 1; --k) {
        double bkm1 = bkp1 + 2.0 * k * c[k].real();
        d[k - 1] = bkm1;
        bkp1 = bk;
        bk = bkm1;
    }
    d[0] *= 0.5;
    return d;
}

ArrayXd Grid::derivative(const ArrayXd& u) const
{
    ArrayXd du = backward(derivative_coeffs(forward(u)));
    if (!periodic()) du *= dXdx_;
    return du;
}

Spectrum Grid::dealiased(const Spectrum& c) const { return dealias_23(c, spec_.N); }

Spectrum dealias_23(const Spectrum& c, int N)
{
    Spectrum out = c;
    const int kc = (2 * N) / 3;
    for (int k = kc + 1; k < out.size(); ++k) out[k] = 0.0;
    return out;
}

Spectrum hilbert(const Grid& g, const Spectrum& c)
{
    if (!g.periodic()) throw UsageError("the Hilbert transform needs a periodic Fourier grid");
    Spectrum h(c.size());
    h[0] = 0.0;
    for (int k = 1; k < c.size(); ++k) h[k] = cplx(0.0, -1.0) * c[k];
    return h;
}

ArrayXcd fourier_forward(const Grid& g, const ArrayXd& u)
{
    if (!g.periodic()) throw UsageError("fourier_forward needs a FourierPeriodic grid");
    const int N = g.N();
    const Spectrum half = g.forward(u);
    ArrayXcd full(2 * N + 1);
    const double a = g.spec().domain_start, kap = g.kappa();
    for (int k = 0; k <= N; ++k) {
        cplx v = half[k] * std::polar(1.0, -kap * k * a);
        full[N + k] = v;
        full[N - k] = std::conj(v);
    }
    full[N] = cplx(half[0].real(), 0.0);
    return full;
}

ArrayXd fourier_backward(const Grid& g, const ArrayXcd& full)
{
    if (!g.periodic()) throw UsageError("fourier_backward needs a FourierPeriodic grid");
    const int N = g.N();
    if (full.size() != 2 * N + 1) throw UsageError("fourier_backward: expected 2N+1 coefficients");
    const double a = g.spec().domain_start, kap = g.kappa();
    // The imaginary part of the inverse is the inverse of the anti-Hermitian
    // part, which we synthesize on the grid to check consistency.
    Spectrum herm(N + 1), anti(N + 1);
    for (int k = 0; k <= N; ++k) {
        cplx p = full[N + k] * std::polar(1.0, kap * k * a);
        cplx m = full[N - k] * std::polar(1.0, -kap * k * a);
        herm[k] = 0.5 * (p + std::conj(m));
        anti[k] = 0.5 * (p - std::conj(m)) * cplx(0.0, -1.0);
    }
    herm[0] = full[N].real();
    anti[0] = full[N].imag();
    // anti[k] holds the Hermitian-symmetrized coefficients of -i * (anti-Hermitian part)
    const ArrayXd imag_part = g.backward(anti);
    if (imag_part.abs().maxCoeff() > 1e-9)
        throw NumericalError("fourier_backward: coefficients are not conjugate symmetric "
                             "(imaginary residue " +
                             std::to_string(imag_part.abs().maxCoeff()) + ")");
    return g.backward(herm);
}

Spectrum chebyshev_forward(const Grid& g, const ArrayXd& u)
{
    if (g.periodic()) throw UsageError("chebyshev_forward needs a ChebyshevExtrema grid");
    return g.forward(u);
}

ArrayXd chebyshev_backward(const Grid& g, const Spectrum& a)
{
    if (g.periodic()) throw UsageError("chebyshev_backward needs a ChebyshevExtrema grid");
    return g.backward(a);
}

} // namespace specrelax
