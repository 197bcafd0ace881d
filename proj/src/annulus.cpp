#include "herzkit/annulus.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace herzkit {

void DyadicWindow::validate() const
{
    if (k_min > k_max)
        fail(ErrorKind::domain, "dyadic window needs k_min <= k_max");
    if (k_min < -60 || k_max > 60)
        fail(ErrorKind::domain, "dyadic window indices must lie in [-60, 60]");
}

AnnulusGeometry::AnnulusGeometry(const Grid& grid, const AnisotropyVector& a, DyadicWindow window)
    : grid_(grid), a_(a), window_(window)
{
    if (grid.dim() != a.dim())
        fail(ErrorKind::shape, "grid and anisotropy dimensions differ");
    window_.validate();
    norms_.resize(grid.size());
    index_.resize(grid.size());
    std::vector<double> x(grid.dim());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.coordinates(i, x);
        const double t = quasi_norm(x, a);
        norms_[i] = t;
        if (t == 0.0) {
            index_[i] = origin_annulus;
        } else {
            int e = 0;
            std::frexp(t, &e);  // t = m 2^e, m in [1/2, 1)
            index_[i] = e;
        }
    }
}

bool AnnulusGeometry::in_ball(std::size_t flat, int k) const
{
    return norms_[flat] <= std::ldexp(1.0, k);
}

double AnnulusGeometry::ball_measure(int k) const
{
    return unit_ball_volume(a_.dim()) * std::exp2(k * a_.homogeneous_dimension());
}

double AnnulusGeometry::max_quasi_norm() const
{
    return *std::max_element(norms_.begin(), norms_.end());
}

std::size_t AnnulusMask::count() const
{
    return static_cast<std::size_t>(std::count(indicator.begin(), indicator.end(), char{1}));
}

SampledFunction AnnulusMask::apply(const SampledFunction& f) const
{
    if (f.size() != indicator.size())
        fail(ErrorKind::shape, "mask and function sizes differ");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = indicator[i] ? f[i] : 0.0;
    return SampledFunction(f.grid(), std::move(v), f.label());
}

AnnulusMask annulus_mask(int k, const AnnulusGeometry& geometry, bool homogeneous)
{
    const DyadicWindow& w = geometry.window();
    if (!w.contains(k))
        fail(ErrorKind::range, "annulus index " + std::to_string(k) + " outside the dyadic window");
    if (!homogeneous && k < 0)
        fail(ErrorKind::range, "non-homogeneous annuli start at k = 0");
    AnnulusMask m;
    m.k = k;
    m.homogeneous = homogeneous;
    const std::size_t n = geometry.grid().size();
    m.indicator.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const int idx = geometry.annulus_index(i);
        if (!homogeneous && k == 0)
            m.indicator[i] = idx <= 0 ? 1 : 0;  // includes the origin
        else
            m.indicator[i] = idx == k ? 1 : 0;
    }
    return m;
}

AnnulusMask annulus_mask(int k, const AnisotropyVector& a, const Grid& grid, bool homogeneous,
                         DyadicWindow window)
{
    return annulus_mask(k, AnnulusGeometry(grid, a, window), homogeneous);
}

std::vector<int> window_indices(const DyadicWindow& window, bool homogeneous)
{
    std::vector<int> ks;
    for (int k = homogeneous ? window.k_min : std::max(0, window.k_min); k <= window.k_max; ++k)
        ks.push_back(k);
    return ks;
}

}  // namespace herzkit
