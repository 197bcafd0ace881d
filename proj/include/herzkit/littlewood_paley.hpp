#pragma once

#include "herzkit/anisotropy.hpp"
#include "herzkit/sampled_function.hpp"

#include <string>
#include <vector>

namespace herzkit {

struct LPKernel {
    std::string name;
    std::size_t dim = 1;
    PointFunction psi;
    // |psi(x)| <= C (1 + |x|)^{-(n + decay_alpha)}
    double decay_alpha = 1.0;
    // int |psi(x + y) - psi(x)| dx <= C |y|^gamma
    double smoothness_gamma = 1.0;
    // Scales t_j = 2^j, j_min <= j <= j_max.
    int j_min = -5;
    int j_max = 3;

    // (n - |x|^2) e^{-|x|^2/2}: the Mexican hat for n = 1, Laplacian of Gaussian for n = 2.
    static LPKernel mexican_hat(std::size_t dim = 1);
    std::vector<double> scales() const;
    // Trapezoid weights in log t.
    std::vector<double> scale_weights() const;
};

struct AdmissibilityConfig {
    double radius = 40.0;
    int points = 8001;
    double mean_tol = 1e-8;
    double tail_growth_tol = 0.05;
};

struct AdmissibilityReport {
    double mean = 0.0;
    double l1 = 0.0;
    bool zero_mean_ok = false;
    double decay_constant = 0.0;
    bool decay_ok = false;
    double modulus_constant = 0.0;
    bool modulus_ok = false;

    bool admissible() const { return zero_mean_ok && decay_ok && modulus_ok; }
};

// Measures the three kernel conditions on a fine grid over [-radius, radius]^n.
AdmissibilityReport lp_admissibility_check(const LPKernel& kernel, const AdmissibilityConfig& config = {});

// f * psi_{t_j} for every scale, psi_t(x) = t^{-n} psi(x / t).
std::vector<SampledFunction> lp_convolutions(const SampledFunction& f, const LPKernel& kernel);

SampledFunction g_function(const SampledFunction& f, const LPKernel& kernel);
// (a^n |B_0|)^{-1} int int_{|x-y| < a t} |f * psi_t(y)|^2 t^{-n} dy dt/t, square-rooted.
SampledFunction lusin_area(const SampledFunction& f, const LPKernel& kernel, double aperture);
// int int |f * psi_t(y)|^2 (1 + |x-y|/t)^{-2 lambda} t^{-n} dy dt/t, square-rooted.
SampledFunction g_star(const SampledFunction& f, const LPKernel& kernel, double lambda);

// (1 + a)^lambda (a^n |B_0|)^{-1/2}
double area_domination_constant(std::size_t dim, double aperture, double lambda);

struct DominationReport {
    std::size_t term_violations = 0;
    std::size_t point_violations = 0;
    double max_term_ratio = 0.0;
    double max_point_ratio = 0.0;
    std::size_t terms = 0;
};

// Compares every cone term of S against the matching g* term, then S against C g* pointwise.
DominationReport area_domination_check(const SampledFunction& f, const LPKernel& kernel, double aperture,
                                       double lambda, double rel_tol = 1e-12);

}  // namespace herzkit
