#include "herzkit/hardy.hpp"

#include "convolution.hpp"
#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace herzkit {

namespace {

// Derivative of the given order along one axis; NaN where the stencil leaves the grid.
std::vector<double> axis_derivative(const Grid& grid, std::span<const double> v, std::size_t axis, int order)
{
    std::vector<double> cur(v.begin(), v.end());
    const double h = grid.spacing(axis);
    const std::size_t stride = grid.stride(axis);
    const int n = grid.points(axis);
    std::vector<int> idx(grid.dim());
    auto apply = [&](int kind) {
        std::vector<double> next(cur.size(), std::nan(""));
        for (std::size_t f = 0; f < cur.size(); ++f) {
            grid.multi_index(f, idx);
            const int i = idx[axis];
            if (i < 1 || i > n - 2)
                continue;
            const double l = cur[f - stride];
            const double c = cur[f];
            const double r = cur[f + stride];
            next[f] = kind == 1 ? (r - l) / (2.0 * h) : (r - 2.0 * c + l) / (h * h);
        }
        cur.swap(next);
    };
    for (int k = 0; k < order / 2; ++k)
        apply(2);
    if (order % 2)
        apply(1);
    return cur;
}

void enumerate_multi(std::size_t n, int N, std::vector<int>& cur, std::size_t axis, int left,
                     std::vector<std::vector<int>>& out)
{
    if (axis == n) {
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= left; ++k) {
        cur[axis] = k;
        enumerate_multi(n, N, cur, axis + 1, left - k, out);
    }
    cur[axis] = 0;
}

}  // namespace

double schwartz_seminorm(const SampledFunction& phi, int N, const AnisotropyVector& a)
{
    const Grid& grid = phi.grid();
    if (grid.dim() != a.dim())
        fail(ErrorKind::shape, "grid and anisotropy dimensions differ");
    if (N < 0)
        fail(ErrorKind::domain, "seminorm order must be >= 0");
    const int reach = (N + 1) / 2;
    if (N > max_seminorm_order)
        fail(ErrorKind::capability, "seminorm order above " + std::to_string(max_seminorm_order));
    for (std::size_t i = 0; i < grid.dim(); ++i)
        if (grid.points(i) < 2 * reach + 1)
            fail(ErrorKind::capability, "grid too small for the difference stencils of order N");

    std::vector<std::vector<int>> betas;
    std::vector<int> cur(grid.dim(), 0);
    enumerate_multi(grid.dim(), N, cur, 0, N, betas);

    std::vector<double> best(grid.size(), 0.0);
    for (const auto& beta : betas) {
        std::vector<double> d(phi.values().begin(), phi.values().end());
        for (std::size_t axis = 0; axis < grid.dim(); ++axis)
            if (beta[axis] > 0)
                d = axis_derivative(grid, d, axis, beta[axis]);
        for (std::size_t f = 0; f < d.size(); ++f)
            best[f] = std::max(best[f], std::abs(d[f]));
    }
    std::vector<int> idx(grid.dim());
    std::vector<double> x(grid.dim());
    double sup = 0.0;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        grid.multi_index(f, idx);
        bool inside = true;
        for (std::size_t i = 0; i < grid.dim(); ++i)
            if (idx[i] < reach || idx[i] > grid.points(i) - 1 - reach)
                inside = false;
        if (!inside)
            continue;
        grid.coordinates(f, x);
        const double weight = N == 0 ? 1.0 : std::pow(bracket(x, a), N);
        sup = std::max(sup, weight * best[f]);
    }
    return sup;
}

int n_index(const ExponentVector& p, const AnisotropyVector& a)
{
    if (p.dim() != a.dim())
        fail(ErrorKind::shape, "exponent and anisotropy dimensions differ");
    const double pm = std::min(1.0, p.min());
    const double v = a.homogeneous_dimension();
    const double ap = a.max_exponent();
    const double am = a.min_exponent();
    const double value = v * (ap / am) * (1.0 + 2.0 / pm) + v + 2.0 * ap;
    return static_cast<int>(std::floor(value * (1.0 + 1e-14))) + 1;
}

SchwartzWindow SchwartzWindow::gaussian(int k_min, int k_max)
{
    SchwartzWindow w;
    w.name = "gaussian";
    w.k_min = k_min;
    w.k_max = k_max;
    w.profile = [](double s) { return std::exp(-s * s) / std::sqrt(std::numbers::pi); };
    return w;
}

double SchwartzWindow::operator()(std::span<const double> x) const
{
    if (profile) {
        double p = 1.0;
        for (double xi : x)
            p *= profile(xi);
        return p;
    }
    return phi(x);
}

SampledFunction radial_maximal(const SampledFunction& f, const SchwartzWindow& w, const AnisotropyVector& a)
{
    const Grid& grid = f.grid();
    if (grid.dim() != a.dim())
        fail(ErrorKind::shape, "grid and anisotropy dimensions differ");
    if (w.k_min > w.k_max)
        fail(ErrorKind::domain, "scale window needs k_min <= k_max");
    if (!w.profile && !w.phi)
        fail(ErrorKind::domain, "Schwartz window has no profile");
    const std::size_t n = grid.dim();
    std::vector<double> out(f.size(), 0.0);
    if (f.is_zero())
        return SampledFunction(grid, std::move(out), f.label());

    for (int k = w.k_min; k <= w.k_max; ++k) {
        const double t = std::exp2(k);
        std::vector<double> cur;
        if (w.separable()) {
            cur.assign(f.values().begin(), f.values().end());
            for (std::size_t axis = 0; axis < n; ++axis) {
                const int m = grid.points(axis);
                const double h = grid.spacing(axis);
                const double s = std::pow(t, a[axis]);
                std::vector<double> kernel(2 * m - 1);
                double mass = 0.0;
                for (int d = -(m - 1); d <= m - 1; ++d) {
                    const double val = w.profile(d * h / s) / s;
                    kernel[d + m - 1] = val;
                    mass += h * val;
                }
                for (double& v : kernel)
                    v /= mass;
                const auto aw = grid.axis_weights(axis);
                std::vector<int> idx(n);
                for (std::size_t i = 0; i < cur.size(); ++i) {
                    grid.multi_index(i, idx);
                    cur[i] *= aw[idx[axis]];
                }
                cur = detail::convolve_axis(grid, axis, kernel, cur);
            }
        } else {
            std::vector<double> y(n);
            auto table = detail::make_offset_table(grid, [&](std::span<const double> x, std::span<const int>) {
                double scale = 1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double s = std::pow(t, a[i]);
                    y[i] = x[i] / s;
                    scale /= s;
                }
                return scale * w.phi(y);
            });
            double mass = 0.0;
            for (double v : table.values)
                mass += v;
            mass *= grid.cell_volume();
            for (double& v : table.values)
                v /= mass;
            const std::vector<double> qw = grid.quadrature_weights();
            std::vector<double> v(f.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = qw[i] * f[i];
            cur = detail::convolve(grid, table, v);
        }
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::max(out[i], std::abs(cur[i]));
    }
    return SampledFunction(grid, std::move(out), f.label());
}

double herz_hardy_norm(const SampledFunction& f, const HerzParams& params, const SchwartzWindow& w)
{
    params.validate();
    return herz_norm(radial_maximal(f, w, params.anisotropy), params);
}

}  // namespace herzkit
