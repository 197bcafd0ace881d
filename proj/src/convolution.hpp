#pragma once

#include "herzkit/grid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace herzkit::detail {

// Offset table over d in prod [-(N_i - 1), N_i - 1], indexed by (d_i + N_i - 1).
struct OffsetTable {
    std::vector<std::size_t> strides;
    std::vector<double> values;
};

// table(d) = g(d_1 h_1, ..., d_n h_n, d)
OffsetTable make_offset_table(const Grid& grid,
                              const std::function<double(std::span<const double>, std::span<const int>)>& g);

// out[i] = sum_j table(i - j) v[j]
std::vector<double> convolve(const Grid& grid, const OffsetTable& table, std::span<const double> v);

// 1D convolution along one axis with a kernel indexed by offset + (N - 1).
std::vector<double> convolve_axis(const Grid& grid, std::size_t axis, std::span<const double> kernel,
                                  std::span<const double> v);

}  // namespace herzkit::detail
