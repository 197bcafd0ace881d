#include "herzkit/grid.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace herzkit {

Grid::Grid(std::vector<int> points_per_axis, std::vector<double> half_width)
    : points_(std::move(points_per_axis)), half_width_(std::move(half_width))
{
    if (points_.empty())
        fail(ErrorKind::shape, "grid needs at least one axis");
    if (points_.size() != half_width_.size())
        fail(ErrorKind::shape, "grid point counts and half widths differ in length");
    size_ = 1;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i] < 3 || points_[i] % 2 == 0)
            fail(ErrorKind::domain, "points per axis must be odd and >= 3");
        if (!(half_width_[i] > 0.0) || !std::isfinite(half_width_[i]))
            fail(ErrorKind::domain, "grid half width must be positive and finite");
        strides_.push_back(size_);
        size_ *= static_cast<std::size_t>(points_[i]);
        const int n = points_[i];
        const double h = 2.0 * half_width_[i] / (n - 1);
        spacing_.push_back(h);
        std::vector<double> c(n);
        std::vector<double> w(n, h);
        const int mid = n / 2;
        for (int j = 0; j < n; ++j)
            c[j] = (j - mid) * h;
        c[0] = -half_width_[i];
        c[n - 1] = half_width_[i];
        w[0] = w[n - 1] = 0.5 * h;
        coords_.push_back(std::move(c));
        weights_.push_back(std::move(w));
    }
}

Grid Grid::uniform(std::size_t dim, int points, double half_width)
{
    return Grid(std::vector<int>(dim, points), std::vector<double>(dim, half_width));
}

double Grid::min_spacing() const
{
    return *std::min_element(spacing_.begin(), spacing_.end());
}

double Grid::cell_volume() const
{
    double v = 1.0;
    for (double h : spacing_)
        v *= h;
    return v;
}

void Grid::coordinates(std::size_t flat, std::span<double> out) const
{
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const std::size_t j = flat % static_cast<std::size_t>(points_[i]);
        flat /= static_cast<std::size_t>(points_[i]);
        out[i] = coords_[i][j];
    }
}

std::vector<double> Grid::point(std::size_t flat) const
{
    std::vector<double> out(dim());
    coordinates(flat, out);
    return out;
}

void Grid::multi_index(std::size_t flat, std::span<int> out) const
{
    for (std::size_t i = 0; i < points_.size(); ++i) {
        out[i] = static_cast<int>(flat % static_cast<std::size_t>(points_[i]));
        flat /= static_cast<std::size_t>(points_[i]);
    }
}

std::size_t Grid::flat_index(std::span<const int> index) const
{
    std::size_t flat = 0;
    for (std::size_t i = 0; i < points_.size(); ++i)
        flat += strides_[i] * static_cast<std::size_t>(index[i]);
    return flat;
}

std::size_t Grid::center_index() const
{
    std::size_t flat = 0;
    for (std::size_t i = 0; i < points_.size(); ++i)
        flat += strides_[i] * static_cast<std::size_t>(points_[i] / 2);
    return flat;
}

std::vector<double> Grid::quadrature_weights() const
{
    std::vector<double> w(size_, 1.0);
    std::vector<int> idx(dim());
    for (std::size_t f = 0; f < size_; ++f) {
        multi_index(f, idx);
        double p = 1.0;
        for (std::size_t i = 0; i < dim(); ++i)
            p *= weights_[i][idx[i]];
        w[f] = p;
    }
    return w;
}

bool Grid::operator==(const Grid& other) const
{
    return points_ == other.points_ && half_width_ == other.half_width_;
}

void require_same_grid(const Grid& a, const Grid& b)
{
    if (!(a == b))
        fail(ErrorKind::shape, "functions live on different grids");
}

}  // namespace herzkit
