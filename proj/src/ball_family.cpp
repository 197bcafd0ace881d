#include "herzkit/ball_family.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace herzkit {

BallFamily::BallFamily(const Grid& grid, std::vector<double> radii, int center_stride,
                       BallGeometry geometry, std::optional<AnisotropyVector> anisotropy)
    : grid_(grid), stride_(center_stride), geometry_(geometry), a_(std::move(anisotropy))
{
    if (stride_ < 1)
        fail(ErrorKind::domain, "center stride must be >= 1");
    if (geometry_ == BallGeometry::anisotropic) {
        if (!a_)
            fail(ErrorKind::domain, "anisotropic ball geometry needs an anisotropy vector");
        if (a_->dim() != grid.dim())
            fail(ErrorKind::shape, "anisotropy and grid dimensions differ");
    }
    const double h = grid.min_spacing();
    radii.push_back(h);
    for (double r : radii)
        if (!(r > 0.0) || !std::isfinite(r))
            fail(ErrorKind::domain, "ball radii must be positive and finite");
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    radii.erase(std::remove_if(radii.begin(), radii.end(), [h](double r) { return r < h; }),
                radii.end());
    radii_ = std::move(radii);
    for (double r : radii_)
        stencils_.push_back(make_stencil(r));
}

BallFamily BallFamily::dyadic(const Grid& grid, double r_max, int per_octave, int center_stride,
                              BallGeometry geometry, std::optional<AnisotropyVector> anisotropy)
{
    if (per_octave < 1)
        fail(ErrorKind::domain, "radii per octave must be >= 1");
    const double h = grid.min_spacing();
    std::vector<double> radii;
    for (int j = 0;; ++j) {
        const double r = h * std::exp2(static_cast<double>(j) / per_octave);
        if (r > r_max * (1.0 + 1e-12))
            break;
        radii.push_back(r);
    }
    return BallFamily(grid, std::move(radii), center_stride, geometry, std::move(anisotropy));
}

BallFamily BallFamily::lattice_complete(const Grid& grid, double r_max)
{
    // Distinct lattice distances within r_max.
    const std::size_t n = grid.dim();
    std::vector<int> reach(n);
    for (std::size_t i = 0; i < n; ++i)
        reach[i] = std::min(grid.points(i) - 1, static_cast<int>(std::floor(r_max / grid.spacing(i))));
    std::set<double> dist;
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = 0;
    while (true) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += std::pow(d[i] * grid.spacing(i), 2);
        const double r = std::sqrt(s);
        if (r <= r_max)
            dist.insert(r);
        std::size_t i = 0;
        while (i < n && ++d[i] > reach[i]) {
            d[i] = 0;
            ++i;
        }
        if (i == n)
            break;
    }
    std::vector<double> ds(dist.begin(), dist.end());
    std::vector<double> radii;
    for (std::size_t i = 0; i + 1 < ds.size(); ++i)
        radii.push_back(0.5 * (ds[i] + ds[i + 1]));
    if (!ds.empty())
        radii.push_back(ds.back() + 0.5 * grid.min_spacing());
    return BallFamily(grid, std::move(radii), 1);
}

BallFamily::Stencil BallFamily::make_stencil(double r) const
{
    const std::size_t n = grid_.dim();
    std::vector<int> reach(n);
    for (std::size_t i = 0; i < n; ++i) {
        double extent = r;
        if (geometry_ == BallGeometry::anisotropic)
            extent = std::pow(r, (*a_)[i]);
        reach[i] = static_cast<int>(std::floor(extent / grid_.spacing(i))) + 1;
    }
    Stencil s;
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = -reach[i];
    std::vector<double> x(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            x[i] = d[i] * grid_.spacing(i);
        bool inside = false;
        if (geometry_ == BallGeometry::euclidean) {
            double s2 = 0.0;
            for (double xi : x)
                s2 += xi * xi;
            inside = std::sqrt(s2) < r;
        } else {
            inside = quasi_norm(x, *a_) < r;
        }
        if (inside)
            s.offsets.push_back(d);
        std::size_t i = 0;
        while (i < n && ++d[i] > reach[i]) {
            d[i] = -reach[i];
            ++i;
        }
        if (i == n)
            break;
    }
    return s;
}

std::vector<std::size_t> BallFamily::centers_for(std::size_t radius_index) const
{
    const int stride = radius_index == 0 ? 1 : stride_;
    const std::size_t n = grid_.dim();
    std::vector<std::vector<int>> axis_centers(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int mid = grid_.points(i) / 2;
        for (int j = mid % stride; j < grid_.points(i); j += stride)
            axis_centers[i].push_back(j);
    }
    std::vector<std::size_t> out;
    std::vector<std::size_t> pos(n, 0);
    std::vector<int> idx(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i)
            idx[i] = axis_centers[i][pos[i]];
        out.push_back(grid_.flat_index(idx));
        std::size_t i = 0;
        while (i < n && ++pos[i] >= axis_centers[i].size()) {
            pos[i] = 0;
            ++i;
        }
        if (i == n)
            break;
    }
    return out;
}

std::size_t BallFamily::ball_count() const
{
    std::size_t c = 0;
    for (std::size_t r = 0; r < radii_.size(); ++r)
        c += centers_for(r).size();
    return c;
}

std::string BallFamily::describe() const
{
    std::ostringstream os;
    os << (geometry_ == BallGeometry::euclidean ? "euclidean" : "anisotropic") << " balls, "
       << radii_.size() << " radii in [" << radii_.front() << ", " << radii_.back()
       << "], center stride " << stride_;
    return os.str();
}

void BallFamily::for_each_ball(const std::function<void(const Ball&)>& visit) const
{
    const std::size_t n = grid_.dim();
    std::vector<int> c(n);
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < radii_.size(); ++r) {
        const Stencil& st = stencils_[r];
        for (std::size_t center : centers_for(r)) {
            grid_.multi_index(center, c);
            members.clear();
            for (const auto& off : st.offsets) {
                std::size_t flat = 0;
                bool ok = true;
                for (std::size_t i = 0; i < n; ++i) {
                    const int j = c[i] + off[i];
                    if (j < 0 || j >= grid_.points(i)) {
                        ok = false;
                        break;
                    }
                    flat += grid_.stride(i) * static_cast<std::size_t>(j);
                }
                if (ok)
                    members.push_back(flat);
            }
            visit(Ball{center, r, members, st.offsets.size()});
        }
    }
}

}  // namespace herzkit
