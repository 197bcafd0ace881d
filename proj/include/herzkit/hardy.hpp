#pragma once

#include "herzkit/herz.hpp"

#include <functional>
#include <string>

namespace herzkit {

inline constexpr int max_seminorm_order = 6;

// sup_x <x>^N max_{|beta| <= N} |d^beta phi(x)| with second-order central differences,
// taken over nodes where every stencil fits.
double schwartz_seminorm(const SampledFunction& phi, int N, const AnisotropyVector& a);

// floor(v (a+/a-)(1 + 2/p-) + v + 2 a+) + 1 with p- = min(1, p_i)
int n_index(const ExponentVector& p, const AnisotropyVector& a);

struct SchwartzWindow {
    std::string name = "gaussian";
    // phi(x) = prod_i profile(x_i) when separable, otherwise phi(x).
    std::function<double(double)> profile;
    PointFunction phi;
    int N = 2;
    int k_min = -8;
    int k_max = 3;

    // pi^{-n/2} e^{-|x|^2}
    static SchwartzWindow gaussian(int k_min = -8, int k_max = 3);
    double operator()(std::span<const double> x) const;
    bool separable() const { return static_cast<bool>(profile); }
};

// max over k of |f * phi_{2^k}| with phi_t(x) = t^{-v} phi(t^{-a} x); each discrete kernel is
// rescaled to unit discrete mass.
SampledFunction radial_maximal(const SampledFunction& f, const SchwartzWindow& w, const AnisotropyVector& a);

double herz_hardy_norm(const SampledFunction& f, const HerzParams& params, const SchwartzWindow& w);

}  // namespace herzkit
