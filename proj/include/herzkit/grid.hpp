#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace herzkit {

// Tensor grid on prod [-L_i, L_i], odd point count per axis so 0 is a node.
// Flat index runs with axis 0 fastest.
class Grid {
public:
    Grid(std::vector<int> points_per_axis, std::vector<double> half_width);
    static Grid uniform(std::size_t dim, int points, double half_width);

    std::size_t dim() const { return points_.size(); }
    std::size_t size() const { return size_; }
    int points(std::size_t axis) const { return points_[axis]; }
    double half_width(std::size_t axis) const { return half_width_[axis]; }
    double spacing(std::size_t axis) const { return spacing_[axis]; }
    double min_spacing() const;
    double cell_volume() const;

    std::span<const int> points_per_axis() const { return points_; }
    std::span<const double> half_widths() const { return half_width_; }
    std::span<const double> axis_coordinates(std::size_t axis) const { return coords_[axis]; }
    // Trapezoid weights along one axis.
    std::span<const double> axis_weights(std::size_t axis) const { return weights_[axis]; }
    std::size_t stride(std::size_t axis) const { return strides_[axis]; }

    void coordinates(std::size_t flat, std::span<double> out) const;
    std::vector<double> point(std::size_t flat) const;
    void multi_index(std::size_t flat, std::span<int> out) const;
    std::size_t flat_index(std::span<const int> index) const;
    std::size_t center_index() const;
    // Full tensor trapezoid weights, one per node.
    std::vector<double> quadrature_weights() const;

    bool operator==(const Grid& other) const;

private:
    std::vector<int> points_;
    std::vector<double> half_width_;
    std::vector<double> spacing_;
    std::vector<std::size_t> strides_;
    std::vector<std::vector<double>> coords_;
    std::vector<std::vector<double>> weights_;
    std::size_t size_ = 0;
};

void require_same_grid(const Grid& a, const Grid& b);

}  // namespace herzkit
