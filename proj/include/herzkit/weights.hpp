#pragma once

#include "herzkit/ball_family.hpp"
#include "herzkit/sampled_function.hpp"

#include <string>

namespace herzkit {

// Means below are taken over the grid nodes inside each ball (balls clipped to the grid).

// sup_B (1/|B|) int_B |b - b_B|
double bmo_norm(const SampledFunction& b, const BallFamily& family);

struct WeightReport {
    std::string kind;
    double p = 0.0;
    double q = 0.0;
    double constant = 0.0;
    // For A_p also the A_1 quantity sup_B mean(w) / min_B w.
    double a1_constant = 0.0;
    std::string family;
};

// sup_B mean(w) mean(w^{-p'/p})^{p/p'}, and the A_1 constant for p = 1.
WeightReport ap_constant(const SampledFunction& w, double p, const BallFamily& family);

// sup_B mean(w) mean(w^{-p'/q})^{q/p'}
WeightReport apq_constant(const SampledFunction& w, double p, double q, const BallFamily& family);

}  // namespace herzkit
