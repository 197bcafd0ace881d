#include "herzkit/littlewood_paley.hpp"

#include "convolution.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace herzkit {

LPKernel LPKernel::mexican_hat(std::size_t dim)
{
    LPKernel k;
    k.name = dim == 1 ? "mexican-hat" : "laplacian-of-gaussian";
    k.dim = dim;
    const double n = static_cast<double>(dim);
    k.psi = [n](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x)
            r2 += v * v;
        return (n - r2) * std::exp(-0.5 * r2);
    };
    k.decay_alpha = 1.0;
    k.smoothness_gamma = 1.0;
    return k;
}

std::vector<double> LPKernel::scales() const
{
    if (j_min > j_max)
        fail(ErrorKind::domain, "scale range needs j_min <= j_max");
    std::vector<double> t;
    for (int j = j_min; j <= j_max; ++j)
        t.push_back(std::exp2(j));
    return t;
}

std::vector<double> LPKernel::scale_weights() const
{
    const std::size_t m = scales().size();
    std::vector<double> w(m, std::numbers::ln2);
    if (m == 1)
        return {std::numbers::ln2};
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

namespace {

void check_kernel(const LPKernel& k, const SampledFunction& f)
{
    if (!k.psi)
        fail(ErrorKind::domain, "kernel has no profile");
    if (k.dim != f.grid().dim())
        fail(ErrorKind::shape, "kernel and grid dimensions differ");
    if (k.j_min > k.j_max)
        fail(ErrorKind::domain, "scale range needs j_min <= j_max");
}

double norm2(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

}  // namespace

AdmissibilityReport lp_admissibility_check(const LPKernel& kernel, const AdmissibilityConfig& config)
{
    if (!kernel.psi)
        fail(ErrorKind::domain, "kernel has no profile");
    if (kernel.dim > 2)
        fail(ErrorKind::capability, "admissibility check is implemented for n <= 2");
    AdmissibilityReport r;
    const std::size_t n = kernel.dim;
    const int pts = n == 1 ? config.points : std::min(config.points, 401);
    const Grid grid = Grid::uniform(n, pts % 2 ? pts : pts + 1, config.radius);
    const SampledFunction psi = SampledFunction::sample(grid, kernel.psi);
    r.mean = quadrature_integral(psi);
    r.l1 = quadrature_integral(psi.abs());
    r.zero_mean_ok = std::abs(r.mean) <= config.mean_tol * std::max(1.0, r.l1);

    // Decay: sup |psi| (1 + |x|)^{n + alpha} on the inner half versus the whole grid.
    const double expo = static_cast<double>(n) + kernel.decay_alpha;
    double inner = 0.0;
    double outer = 0.0;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.coordinates(i, x);
        const double rr = norm2(x);
        const double c = std::abs(psi[i]) * std::pow(1.0 + rr, expo);
        outer = std::max(outer, c);
        if (rr <= 0.5 * config.radius)
            inner = std::max(inner, c);
    }
    r.decay_constant = outer;
    r.decay_ok = std::isfinite(outer) && outer <= inner * (1.0 + config.tail_growth_tol);

    // Modulus: omega(y) / |y|^gamma along the first axis for shrinking shifts.
    std::vector<double> ratios;
    for (int m = 0; m <= 8; ++m) {
        const double y = std::exp2(-m);
        const SampledFunction shifted = SampledFunction::sample(grid, [&](std::span<const double> p) {
            std::vector<double> q(p.begin(), p.end());
            q[0] += y;
            return kernel.psi(q);
        });
        const double omega = quadrature_integral((shifted - psi).abs());
        ratios.push_back(omega / std::pow(y, kernel.smoothness_gamma));
    }
    r.modulus_constant = *std::max_element(ratios.begin(), ratios.end());
    const double last = ratios.back();
    const double prev = ratios[ratios.size() - 2];
    r.modulus_ok = std::isfinite(r.modulus_constant) && last <= prev * (1.0 + config.tail_growth_tol) + 1e-300;
    return r;
}

std::vector<SampledFunction> lp_convolutions(const SampledFunction& f, const LPKernel& kernel)
{
    check_kernel(kernel, f);
    const Grid& grid = f.grid();
    const double n = static_cast<double>(grid.dim());
    const std::vector<double> w = grid.quadrature_weights();
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = w[i] * f[i];
    std::vector<SampledFunction> out;
    std::vector<double> y(grid.dim());
    for (double t : kernel.scales()) {
        const auto table = detail::make_offset_table(grid, [&](std::span<const double> x, std::span<const int>) {
            for (std::size_t i = 0; i < y.size(); ++i)
                y[i] = x[i] / t;
            return std::pow(t, -n) * kernel.psi(y);
        });
        out.emplace_back(grid, detail::convolve(grid, table, v));
    }
    return out;
}

SampledFunction g_function(const SampledFunction& f, const LPKernel& kernel)
{
    const auto conv = lp_convolutions(f, kernel);
    const auto sw = kernel.scale_weights();
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t j = 0; j < conv.size(); ++j)
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += sw[j] * conv[j][i] * conv[j][i];
    for (double& v : out)
        v = std::sqrt(v);
    return SampledFunction(f.grid(), std::move(out), f.label());
}

namespace {

// sum_j sw_j t_j^{-n} sum_y w_y |F_j(y)|^2 weight(x - y, t_j)
SampledFunction weighted_square(const SampledFunction& f, const LPKernel& kernel,
                                const std::function<double(double, double)>& weight, double prefactor)
{
    const Grid& grid = f.grid();
    const double n = static_cast<double>(grid.dim());
    const auto conv = lp_convolutions(f, kernel);
    const auto sw = kernel.scale_weights();
    const auto ts = kernel.scales();
    const std::vector<double> w = grid.quadrature_weights();
    std::vector<double> total(f.size(), 0.0);
    for (std::size_t j = 0; j < conv.size(); ++j) {
        const double t = ts[j];
        std::vector<double> v(f.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = w[i] * conv[j][i] * conv[j][i];
        const auto table = detail::make_offset_table(
            grid, [&](std::span<const double> x, std::span<const int>) { return weight(norm2(x), t); });
        const auto part = detail::convolve(grid, table, v);
        const double c = sw[j] * std::pow(t, -n);
        for (std::size_t i = 0; i < total.size(); ++i)
            total[i] += c * part[i];
    }
    for (double& v : total)
        v = std::sqrt(prefactor * v);
    return SampledFunction(grid, std::move(total), f.label());
}

}  // namespace

SampledFunction lusin_area(const SampledFunction& f, const LPKernel& kernel, double aperture)
{
    check_kernel(kernel, f);
    if (!(aperture > 0.0) || !std::isfinite(aperture))
        fail(ErrorKind::domain, "aperture must be positive");
    const double n = static_cast<double>(f.grid().dim());
    const double pre = 1.0 / (std::pow(aperture, n) * unit_ball_volume(f.grid().dim()));
    return weighted_square(f, kernel, [aperture](double d, double t) { return d < aperture * t ? 1.0 : 0.0; },
                           pre);
}

SampledFunction g_star(const SampledFunction& f, const LPKernel& kernel, double lambda)
{
    check_kernel(kernel, f);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        fail(ErrorKind::domain, "lambda must be positive");
    return weighted_square(f, kernel, [lambda](double d, double t) { return std::pow(1.0 + d / t, -2.0 * lambda); },
                           1.0);
}

double area_domination_constant(std::size_t dim, double aperture, double lambda)
{
    const double n = static_cast<double>(dim);
    return std::pow(1.0 + aperture, lambda) / std::sqrt(std::pow(aperture, n) * unit_ball_volume(dim));
}

DominationReport area_domination_check(const SampledFunction& f, const LPKernel& kernel, double aperture,
                                       double lambda, double rel_tol)
{
    check_kernel(kernel, f);
    const Grid& grid = f.grid();
    const double n = static_cast<double>(grid.dim());
    const auto conv = lp_convolutions(f, kernel);
    const auto sw = kernel.scale_weights();
    const auto ts = kernel.scales();
    const std::vector<double> w = grid.quadrature_weights();
    const double pre = 1.0 / (std::pow(aperture, n) * unit_ball_volume(grid.dim()));
    const double c2 = std::pow(1.0 + aperture, 2.0 * lambda) * pre;
    DominationReport r;
    std::vector<double> s2(grid.size(), 0.0);
    std::vector<double> g2(grid.size(), 0.0);
    std::vector<double> xi(grid.dim()), yi(grid.dim()), d(grid.dim());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.coordinates(i, xi);
        for (std::size_t j = 0; j < conv.size(); ++j) {
            const double t = ts[j];
            const double c = sw[j] * std::pow(t, -n);
            for (std::size_t y = 0; y < grid.size(); ++y) {
                grid.coordinates(y, yi);
                for (std::size_t a = 0; a < d.size(); ++a)
                    d[a] = xi[a] - yi[a];
                const double dist = norm2(d);
                const double base = c * w[y] * conv[j][y] * conv[j][y];
                const double gterm = base * std::pow(1.0 + dist / t, -2.0 * lambda);
                g2[i] += gterm;
                if (dist < aperture * t) {
                    const double sterm = pre * base;
                    s2[i] += sterm;
                    ++r.terms;
                    const double rhs = c2 * gterm;
                    if (sterm > 0.0) {
                        r.max_term_ratio = std::max(r.max_term_ratio, sterm / rhs);
                        if (sterm > rhs * (1.0 + rel_tol))
                            ++r.term_violations;
                    }
                }
            }
        }
        const double S = std::sqrt(s2[i]);
        const double G = std::sqrt(c2 * g2[i]);
        if (S > 0.0) {
            r.max_point_ratio = std::max(r.max_point_ratio, S / G);
            if (S > G * (1.0 + rel_tol))
                ++r.point_violations;
        }
    }
    return r;
}

}  // namespace herzkit
