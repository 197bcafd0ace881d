#pragma once

#include "herzkit/ball_family.hpp"
#include "herzkit/sampled_function.hpp"

#include <functional>
#include <vector>

namespace herzkit {

// Uncentered maximal function over the family, functions extended by zero off the grid:
// Mf(x) = max over balls B containing x of (1/|B|) sum_{B} |f| h^n.
SampledFunction hl_maximal(const SampledFunction& f, const BallFamily& family);

// |B|^{-(1 - alpha/n)} int_B |f|, reducing to hl_maximal at alpha = 0.
SampledFunction fractional_maximal(const SampledFunction& f, double alpha, const BallFamily& family);

// M^0 h, ..., M^K h
std::vector<SampledFunction> maximal_iterates(const SampledFunction& h, int K, const BallFamily& family);

// R_K h = sum_{k=0}^K M^k h / (2B)^k for h >= 0.
SampledFunction rubio_de_francia(const SampledFunction& h, double B, int K, const BallFamily& family);
SampledFunction rubio_from_iterates(const std::vector<SampledFunction>& iterates, double B, int K);

using NormFunction = std::function<double(const SampledFunction&)>;

inline constexpr double default_bound_headroom = 0.10;

// Largest ratio ||M g|| / ||g|| over the battery and over consecutive maximal iterates of
// each battery member, times (1 + headroom).
double estimate_maximal_bound(const std::vector<SampledFunction>& battery, const BallFamily& family,
                              const NormFunction& norm, int iterate_depth = 0,
                              double headroom = default_bound_headroom);

}  // namespace herzkit
