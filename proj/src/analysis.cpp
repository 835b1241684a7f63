#include "specrelax/analysis.hpp"
#include "specrelax/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>

namespace specrelax {

ErrorNorms error_norms(const ArrayXd& err, const ArrayXd& weights)
{
    if (err.size() != weights.size()) throw UsageError("error_norms: size mismatch");
    const ArrayXd a = err.abs();
    return {(weights * a).sum(), std::sqrt((weights * a.square()).sum()), a.maxCoeff()};
}

Refined refine(const Grid& g, const ArrayXd& u, int factor)
{
    if (!g.periodic()) throw UsageError("refine: only periodic grids have a trigonometric interpolant");
    if (factor < 1) throw UsageError("refine: factor must be >= 1");
    const GridSpec& s = g.spec();
    Grid fine(GridSpec{Basis::FourierPeriodic, s.domain_start, s.domain_end, factor * s.N + (factor - 1) / 2, 0.999});
    Spectrum c = Spectrum::Zero(fine.modes());
    c.head(g.modes()) = g.forward(u);
    return {fine.x(), fine.backward(c), fine.min_spacing()};
}

ErrorNorms error_norms(const Grid& g, const ArrayXd& approx, const Sampler& reference,
                       Quadrature quad, int factor)
{
    if (quad == Quadrature::Nodal || !g.periodic())
        return error_norms(approx - reference(g.x()), g.weights());
    const Refined r = refine(g, approx, factor);
    return error_norms(r.u - reference(r.x), ArrayXd::Constant(r.x.size(), r.dx));
}

std::vector<ConvergenceRow> convergence_table(const std::vector<int>& Nx,
                                              const std::vector<double>& errors)
{
    if (Nx.size() != errors.size()) throw UsageError("convergence_table: size mismatch");
    if (Nx.size() < 2) throw UsageError("convergence_table: need at least two resolutions");
    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < Nx.size(); ++i) {
        ConvergenceRow r{Nx[i], errors[i], std::nullopt};
        if (i > 0 && Nx[i] != Nx[i - 1] && errors[i] > 0.0 && errors[i - 1] > 0.0)
            r.order = std::log(errors[i - 1] / errors[i]) /
                      std::log(static_cast<double>(Nx[i]) / Nx[i - 1]);
        rows.push_back(r);
    }
    return rows;
}

double energy(const Grid& g, const ArrayXd& u) { return (g.weights() * u.square()).sum(); }

ArrayXd power_spectrum(const Grid& g, const ArrayXd& u) { return g.forward(u).abs2(); }

DeltaFit fit_delta(const ArrayXd& spectrum, int k_min, int k_max, bool algebraic_term, double floor)
{
    if (k_min < 1 || k_max >= spectrum.size() || k_min >= k_max)
        throw FitError("fit_delta: invalid window");
    std::vector<int> ks;
    for (int k = k_min; k <= k_max; ++k)
        if (spectrum[k] > floor && std::isfinite(spectrum[k])) ks.push_back(k);
    if (ks.size() < 10) throw FitError("fit_delta: fewer than 10 modes above the noise floor");

    const int cols = algebraic_term ? 3 : 2;
    Eigen::MatrixXd A(ks.size(), cols);
    Eigen::VectorXd y(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double k = ks[i];
        A(i, 0) = 1.0;
        A(i, 1) = k;
        if (algebraic_term) A(i, 2) = std::log(k);
        y[i] = std::log(spectrum[ks[i]]);
    }
    const Eigen::VectorXd beta = A.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd r = A * beta - y;
    DeltaFit f;
    f.delta = -0.5 * beta[1];
    f.residual = std::sqrt(r.squaredNorm() / static_cast<double>(ks.size()));
    f.modes = static_cast<int>(ks.size());
    f.quality_ok = f.delta > 0.0 && f.residual < 1.0;
    return f;
}

FitWindow select_fit_window(const SchemeConfig& cfg, int N)
{
    int k_max = N;
    if (cfg.kind == SchemeKind::SR || cfg.kind == SchemeKind::SP) {
        const ArrayXd K = kernel_coeffs(cfg.kernel, N);
        k_max = 0;
        while (k_max + 1 <= N && K[k_max + 1] >= 1.0) ++k_max;
        if (cfg.dealias) k_max = std::min(k_max, (2 * N) / 3);
    } else if (cfg.dealias) {
        k_max = (2 * N) / 3;
    }
    const int k_min = std::max(8, k_max / 8);
    if (k_max - k_min < 10) throw FitError("select_fit_window: window too small");
    return {k_min, k_max};
}

TStarFit extrapolate_t_star(const std::vector<DeltaSample>& s, double t0, double t1, double nu)
{
    std::vector<double> ts, ys;
    for (const auto& d : s) {
        if (d.t >= t0 && d.t <= t1 && d.quality_ok && d.delta > 0.0) {
            ts.push_back(d.t);
            ys.push_back(std::pow(d.delta, 1.0 / nu));
        }
    }
    if (ts.size() < 2) throw FitError("extrapolate_t_star: fewer than two usable samples");
    Eigen::MatrixXd A(ts.size(), 2);
    Eigen::VectorXd y(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = ts[i];
        y[i] = ys[i];
    }
    const Eigen::VectorXd b = A.colPivHouseholderQr().solve(y);
    if (!(b[1] < 0.0)) throw FitError("extrapolate_t_star: delta is not decreasing");
    const Eigen::VectorXd r = A * b - y;
    return {-b[0] / b[1], b[1], b[0], std::sqrt(r.squaredNorm() / ts.size()),
            static_cast<int>(ts.size())};
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows)
{
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            os << (i ? "," : "");
            if (!std::isnan(r[i])) os << format_double(r[i]);
        }
        os << '\n';
    }
}

void write_columns(std::ostream& os, const std::vector<std::string>& header,
                   const std::vector<ArrayXd>& columns)
{
    if (columns.empty()) return;
    const Eigen::Index n = columns[0].size();
    std::vector<std::vector<double>> rows(n, std::vector<double>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != n) throw UsageError("write_columns: ragged columns");
        for (Eigen::Index i = 0; i < n; ++i) rows[i][c] = columns[c][i];
    }
    write_csv(os, header, rows);
}

} // namespace specrelax
