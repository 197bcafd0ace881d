#pragma once

#include "herzkit/annulus.hpp"
#include "herzkit/mixed_norm.hpp"

#include <vector>

namespace herzkit {

struct HerzParams {
    double alpha = 0.0;
    double p = 1.0;
    ExponentVector q;
    AnisotropyVector anisotropy;
    bool homogeneous = true;
    DyadicWindow window{};

    void validate() const;
};

struct HerzNormReport {
    double norm = 0.0;
    std::vector<int> ks;
    // |B_k|^alpha ||f chi_k||_q for each k in ks
    std::vector<double> terms;
    // ||f (1 - sum chi_k)||_q / ||f||_q
    double truncation_fraction = 0.0;
    bool truncation_warning = false;
};

inline constexpr double default_truncation_threshold = 1e-6;

double herz_norm(const SampledFunction& f, const HerzParams& params);
double herz_norm(const SampledFunction& f, const HerzParams& params, const AnnulusGeometry& geometry);
HerzNormReport herz_norm_report(const SampledFunction& f, const HerzParams& params,
                                double truncation_threshold = default_truncation_threshold);
HerzNormReport herz_norm_report(const SampledFunction& f, const HerzParams& params,
                                const AnnulusGeometry& geometry,
                                double truncation_threshold = default_truncation_threshold);

// ||f + g|| <= C (||f|| + ||g||)
double quasi_triangle_constant(double p, const ExponentVector& q);

// Bound ||sum lambda_j b_j|| <= C ||lambda||_p for blocks b_j supported in closed balls
// B_j with ||b_j||_q <= |B_j|^{-alpha}; needs alpha > 0 and q_i >= 1.
double block_synthesis_constant(double alpha, double p, double v);

// ||f||_{alpha2,p2} <= C ||f||_{alpha1,p1} for the non-homogeneous family, alpha2 < alpha1,
// with C computed over the window.
double inclusion_constant(double alpha1, double p1, double alpha2, double p2,
                          const AnisotropyVector& a, const DyadicWindow& window);

// alpha + sum (1/q1_i - 1/q2_i)
double inclusion_shifted_alpha(double alpha, const ExponentVector& q1, const ExponentVector& q2);

struct BlockDecomposition {
    HerzParams params;
    std::vector<int> ks;
    std::vector<double> lambdas;
    std::vector<SampledFunction> blocks;
    // f (1 - sum chi_k): the origin node and anything outside the window.
    SampledFunction remainder;
};

// Nonzero central blocks b_k = f chi_k / lambda_k, lambda_k = |B_k|^alpha ||f chi_k||_q.
BlockDecomposition block_decompose(const SampledFunction& f, const HerzParams& params);
SampledFunction block_synthesize(const BlockDecomposition& d);

}  // namespace herzkit
