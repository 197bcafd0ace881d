#include "herzkit/sampled_function.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace herzkit {

SampledFunction::SampledFunction(Grid grid, std::vector<double> values, std::string label)
    : grid_(std::move(grid)), values_(std::move(values)), label_(std::move(label))
{
    if (values_.size() != grid_.size())
        fail(ErrorKind::shape, "value count does not match grid size");
    for (double v : values_)
        if (!std::isfinite(v))
            fail(ErrorKind::input_domain, "sampled values must be finite");
}

SampledFunction SampledFunction::zeros(const Grid& grid, std::string label)
{
    return SampledFunction(grid, std::vector<double>(grid.size(), 0.0), std::move(label));
}

SampledFunction SampledFunction::sample(const Grid& grid,
                                        const std::function<double(std::span<const double>)>& f,
                                        std::string label)
{
    std::vector<double> vals(grid.size());
    std::vector<double> x(grid.dim());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.coordinates(i, x);
        vals[i] = f(x);
    }
    return SampledFunction(grid, std::move(vals), std::move(label));
}

SampledFunction SampledFunction::with_label(std::string label) const
{
    SampledFunction out = *this;
    out.label_ = std::move(label);
    return out;
}

SampledFunction SampledFunction::map(const std::function<double(double)>& g) const
{
    std::vector<double> vals(values_.size());
    std::transform(values_.begin(), values_.end(), vals.begin(), g);
    return SampledFunction(grid_, std::move(vals), label_);
}

SampledFunction SampledFunction::abs() const
{
    return map([](double v) { return std::abs(v); });
}

SampledFunction SampledFunction::abs_pow(double s) const
{
    return map([s](double v) { return std::pow(std::abs(v), s); });
}

double SampledFunction::max_abs() const
{
    double m = 0.0;
    for (double v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

bool SampledFunction::is_zero() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& other)
{
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < values_.size(); ++i)
        values_[i] += other.values_[i];
    return *this;
}

SampledFunction& SampledFunction::operator-=(const SampledFunction& other)
{
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < values_.size(); ++i)
        values_[i] -= other.values_[i];
    return *this;
}

SampledFunction& SampledFunction::operator*=(double c)
{
    for (double& v : values_)
        v *= c;
    return *this;
}

SampledFunction operator*(const SampledFunction& a, const SampledFunction& b)
{
    require_same_grid(a.grid(), b.grid());
    std::vector<double> vals(a.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = a[i] * b[i];
    return SampledFunction(a.grid(), std::move(vals), a.label());
}

double quadrature_integral(const SampledFunction& f)
{
    const Grid& g = f.grid();
    // Reduce axis by axis so each 1D trapezoid sees contiguous data on axis 0.
    std::vector<double> cur(f.values().begin(), f.values().end());
    std::size_t len = g.size();
    for (std::size_t axis = 0; axis < g.dim(); ++axis) {
        const std::size_t n = static_cast<std::size_t>(g.points(axis));
        const auto w = g.axis_weights(axis);
        const std::size_t lines = len / n;
        std::vector<double> next(lines, 0.0);
        for (std::size_t l = 0; l < lines; ++l) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                acc += w[j] * cur[l * n + j];
            next[l] = acc;
        }
        cur.swap(next);
        len = lines;
    }
    return cur[0];
}

}  // namespace herzkit
