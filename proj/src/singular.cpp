#include "herzkit/singular.hpp"

#include "convolution.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace herzkit {

namespace {

double norm2(std::span<const double> x)
{
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

// Cell integral of |y|^{alpha - n} over prod [-h_i/2, h_i/2].
double diagonal_cell_integral(const Grid& grid, double alpha)
{
    const std::size_t n = grid.dim();
    if (n == 1) {
        const double half = 0.5 * grid.spacing(0);
        return 2.0 * std::pow(half, alpha) / alpha;
    }
    const int m = 16;
    std::vector<int> idx(n, 0);
    std::vector<double> y(n);
    double sub = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        sub *= grid.spacing(i) / m;
    double acc = 0.0;
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            y[i] = (idx[i] + 0.5 - 0.5 * m) * grid.spacing(i) / m;
        acc += sub * std::pow(norm2(y), alpha - static_cast<double>(n));
        std::size_t i = 0;
        while (i < n && ++idx[i] >= m) {
            idx[i] = 0;
            ++i;
        }
        if (i == n)
            break;
    }
    return acc;
}

}  // namespace

SampledFunction fractional_integral(const SampledFunction& f, double alpha)
{
    const Grid& grid = f.grid();
    const double n = static_cast<double>(grid.dim());
    if (!(alpha > 0.0 && alpha < n))
        fail(ErrorKind::domain, "fractional integral needs 0 < alpha < n");
    const double diag = diagonal_cell_integral(grid, alpha);
    const double cell = grid.cell_volume();
    const auto table = detail::make_offset_table(grid, [&](std::span<const double> x, std::span<const int> d) {
        const bool origin = std::all_of(d.begin(), d.end(), [](int v) { return v == 0; });
        return origin ? diag / cell : std::pow(norm2(x), alpha - n);
    });
    const std::vector<double> w = grid.quadrature_weights();
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = w[i] * f[i];
    return SampledFunction(grid, detail::convolve(grid, table, v), f.label());
}

StandardKernel::StandardKernel(std::string name, std::size_t dim, Fn k, double size_constant, double delta)
    : name_(std::move(name)), dim_(dim), k_(std::move(k)), A_(size_constant), delta_(delta)
{
    if (dim_ == 0)
        fail(ErrorKind::domain, "kernel dimension must be positive");
    if (!(A_ > 0.0) || !(delta_ > 0.0 && delta_ <= 1.0))
        fail(ErrorKind::domain, "kernel needs A > 0 and 0 < delta <= 1");
}

StandardKernel StandardKernel::hilbert()
{
    StandardKernel k(
        "hilbert", 1,
        [](std::span<const double> x, std::span<const double> y) { return 1.0 / (std::numbers::pi * (x[0] - y[0])); },
        4.5 / std::numbers::pi, 1.0);
    k.validate();
    return k;
}

StandardKernel StandardKernel::with_constant(double A) const
{
    return StandardKernel(name_, dim_, k_, A, delta_);
}

KernelValidation StandardKernel::validate(const KernelSampling& s)
{
    KernelValidation r;
    std::mt19937_64 rng(s.seed);
    std::uniform_real_distribution<double> box(-s.box, s.box);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = dim_;
    const double nd = static_cast<double>(n);
    std::vector<double> x(n), y(n), xp(n), u(n);

    auto draw = [&](std::vector<double>& p) {
        for (auto& c : p)
            c = box(rng);
    };
    for (std::size_t it = 0; it < s.pairs; ++it) {
        draw(x);
        draw(y);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = x[i] - y[i];
        const double dxy = norm2(u);
        if (dxy == 0.0)
            continue;
        ++r.pairs;
        r.size_ratio = std::max(r.size_ratio, std::abs(k_(x, y)) * std::pow(dxy, nd) / A_);

        // x' = x + rho * dir with rho <= |x - y| / 2, which keeps the triple admissible.
        for (int variant = 0; variant < 3; ++variant) {
            double rho = 0.5 * dxy * (variant == 0 ? unit(rng) : 1.0);
            for (std::size_t i = 0; i < n; ++i)
                u[i] = variant == 2 ? (y[i] - x[i]) : gauss(rng);
            const double un = norm2(u);
            if (un == 0.0)
                continue;
            for (std::size_t i = 0; i < n; ++i)
                xp[i] = x[i] + rho * u[i] / un;
            std::vector<double> d1(n), d2(n), dd(n);
            for (std::size_t i = 0; i < n; ++i) {
                d1[i] = x[i] - y[i];
                d2[i] = xp[i] - y[i];
                dd[i] = x[i] - xp[i];
            }
            const double a = norm2(d1);
            const double b = norm2(d2);
            const double c = norm2(dd);
            if (b == 0.0 || c == 0.0)
                continue;
            const double bound = std::pow(c, delta_) / std::pow(a + b, nd + delta_);
            const double dx = std::abs(k_(x, y) - k_(xp, y));
            const double dy = std::abs(k_(y, x) - k_(y, xp));
            r.regularity_ratio = std::max(r.regularity_ratio, std::max(dx, dy) / (A_ * bound));
            ++r.triples;
        }
    }
    r.size_ok = r.size_ratio <= 1.0 + s.tolerance;
    r.regularity_ok = r.regularity_ratio <= 1.0 + s.tolerance;
    validated_ = r.passed();
    return r;
}

SampledFunction cz_apply(const StandardKernel& kernel, const SampledFunction& f)
{
    if (!kernel.is_validated())
        fail(ErrorKind::precondition, "kernel '" + kernel.name() + "' has not passed validation");
    const Grid& grid = f.grid();
    if (grid.dim() != kernel.dim())
        fail(ErrorKind::shape, "kernel and grid dimensions differ");
    const std::size_t n = grid.dim();
    const std::vector<double> w = grid.quadrature_weights();
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = w[i] * f[i];
    std::vector<std::vector<double>> pts(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        pts[i] = grid.point(i);
    std::vector<double> out(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<int> ii(n), jj(n), mm(n);
        for (std::size_t i = begin; i < end; ++i) {
            grid.multi_index(i, ii);
            double acc = 0.0;
            for (std::size_t j = 0; j < grid.size(); ++j) {
                if (j == i)
                    continue;
                grid.multi_index(j, jj);
                // Sign of the offset: first nonzero component.
                int sign = 0;
                bool mirror_in = true;
                for (std::size_t a = 0; a < n; ++a) {
                    const int d = jj[a] - ii[a];
                    if (sign == 0 && d != 0)
                        sign = d > 0 ? 1 : -1;
                    mm[a] = ii[a] - d;
                    if (mm[a] < 0 || mm[a] >= grid.points(a))
                        mirror_in = false;
                }
                if (mirror_in) {
                    if (sign < 0)
                        continue;
                    const std::size_t m = grid.flat_index(mm);
                    const double tj = v[j] == 0.0 ? 0.0 : kernel(pts[i], pts[j]) * v[j];
                    const double tm = v[m] == 0.0 ? 0.0 : kernel(pts[i], pts[m]) * v[m];
                    acc += tj + tm;
                } else if (v[j] != 0.0) {
                    acc += kernel(pts[i], pts[j]) * v[j];
                }
            }
            out[i] = acc;
        }
    });
    return SampledFunction(grid, std::move(out), f.label());
}

SampledFunction OperatorHandle::apply(const SampledFunction& f) const
{
    if (const auto* k = std::get_if<StandardKernel>(&op_))
        return cz_apply(*k, f);
    return fractional_integral(f, std::get<FractionalIntegralOperator>(op_).alpha);
}

std::string OperatorHandle::name() const
{
    if (const auto* k = std::get_if<StandardKernel>(&op_))
        return "cz:" + k->name();
    return "fractional_integral";
}

SampledFunction commutator_apply(const SampledFunction& b, const OperatorHandle& op,
                                 const SampledFunction& f)
{
    require_same_grid(b.grid(), f.grid());
    return b * op.apply(f) - op.apply(b * f);
}

}  // namespace herzkit
