#pragma once

#include "herzkit/anisotropy.hpp"
#include "herzkit/grid.hpp"
#include "herzkit/sampled_function.hpp"

#include <climits>
#include <vector>

namespace herzkit {

struct DyadicWindow {
    int k_min = -6;
    int k_max = 4;

    bool contains(int k) const { return k >= k_min && k <= k_max; }
    void validate() const;
};

inline constexpr int origin_annulus = INT_MIN;

// Quasi-norm field of a grid plus the dyadic annulus index of every node:
// node x lies in A_k = {2^{k-1} <= |x|_a < 2^k}.
class AnnulusGeometry {
public:
    AnnulusGeometry(const Grid& grid, const AnisotropyVector& a, DyadicWindow window = {});

    const Grid& grid() const { return grid_; }
    const AnisotropyVector& anisotropy() const { return a_; }
    const DyadicWindow& window() const { return window_; }
    std::span<const double> quasi_norms() const { return norms_; }
    int annulus_index(std::size_t flat) const { return index_[flat]; }

    bool in_annulus(std::size_t flat, int k) const { return index_[flat] == k; }
    // Closed ball |x|_a <= 2^k.
    bool in_ball(std::size_t flat, int k) const;
    // |B_k| = v_n 2^{k v}
    double ball_measure(int k) const;
    double max_quasi_norm() const;

private:
    Grid grid_;
    AnisotropyVector a_;
    DyadicWindow window_;
    std::vector<double> norms_;
    std::vector<int> index_;
};

struct AnnulusMask {
    int k = 0;
    bool homogeneous = true;
    std::vector<char> indicator;

    std::size_t count() const;
    SampledFunction apply(const SampledFunction& f) const;
};

// chi_k for the homogeneous family; chi~_0 = chi_{|x|_a < 1} and chi~_k = chi_k (k >= 1) otherwise.
AnnulusMask annulus_mask(int k, const AnnulusGeometry& geometry, bool homogeneous);
AnnulusMask annulus_mask(int k, const AnisotropyVector& a, const Grid& grid, bool homogeneous,
                         DyadicWindow window = {});

// Ball indices covered by the family inside the window.
std::vector<int> window_indices(const DyadicWindow& window, bool homogeneous);

}  // namespace herzkit
