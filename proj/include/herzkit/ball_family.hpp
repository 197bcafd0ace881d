#pragma once

#include "herzkit/anisotropy.hpp"
#include "herzkit/grid.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace herzkit {

enum class BallGeometry { euclidean, anisotropic };

// Finite family of open balls {|y - c| < r} with centers on grid nodes. The smallest
// radius equals the grid spacing and is centered at every node (a single cell); the
// other radii use centers on a subgrid with the given stride, anchored at the origin.
class BallFamily {
public:
    BallFamily(const Grid& grid, std::vector<double> radii, int center_stride = 1,
               BallGeometry geometry = BallGeometry::euclidean,
               std::optional<AnisotropyVector> anisotropy = std::nullopt);

    // Radii h * 2^{j / per_octave} up to r_max.
    static BallFamily dyadic(const Grid& grid, double r_max, int per_octave = 1, int center_stride = 1,
                             BallGeometry geometry = BallGeometry::euclidean,
                             std::optional<AnisotropyVector> anisotropy = std::nullopt);
    // One radius between each pair of consecutive lattice distances up to r_max, all
    // centers: every distinct centered lattice ball.
    static BallFamily lattice_complete(const Grid& grid, double r_max);

    const Grid& grid() const { return grid_; }
    std::span<const double> radii() const { return radii_; }
    int center_stride() const { return stride_; }
    BallGeometry geometry() const { return geometry_; }
    std::size_t ball_count() const;
    std::string describe() const;

    struct Ball {
        std::size_t center = 0;
        std::size_t radius_index = 0;
        // Grid nodes inside the ball.
        std::span<const std::size_t> members;
        // Lattice nodes inside the ball, including those off the grid.
        std::size_t lattice_count = 0;
    };

    void for_each_ball(const std::function<void(const Ball&)>& visit) const;

private:
    struct Stencil {
        std::vector<std::vector<int>> offsets;
    };

    Stencil make_stencil(double r) const;
    std::vector<std::size_t> centers_for(std::size_t radius_index) const;

    Grid grid_;
    std::vector<double> radii_;
    int stride_;
    BallGeometry geometry_;
    std::optional<AnisotropyVector> a_;
    std::vector<Stencil> stencils_;
};

}  // namespace herzkit
