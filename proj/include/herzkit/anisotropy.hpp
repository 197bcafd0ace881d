#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace herzkit {

inline constexpr double default_quasi_norm_tol = 1e-12;

// Exponents a_i >= 1 of the dilation t^a x = (t^{a_1} x_1, ..., t^{a_n} x_n).
class AnisotropyVector {
public:
    AnisotropyVector() = default;
    explicit AnisotropyVector(std::vector<double> a);
    static AnisotropyVector isotropic(std::size_t n);

    std::size_t dim() const { return a_.size(); }
    double operator[](std::size_t i) const { return a_[i]; }
    std::span<const double> exponents() const { return a_; }

    double homogeneous_dimension() const { return v_; }
    double min_exponent() const { return a_minus_; }
    double max_exponent() const { return a_plus_; }

    bool operator==(const AnisotropyVector& other) const { return a_ == other.a_; }

private:
    std::vector<double> a_;
    double v_ = 0.0;
    double a_minus_ = 0.0;
    double a_plus_ = 0.0;
};

std::vector<double> dilate(double t, const AnisotropyVector& a, std::span<const double> x);

// Unique t > 0 with sum x_i^2 / t^{2 a_i} = 1, and 0 at the origin.
double quasi_norm(std::span<const double> x, const AnisotropyVector& a,
                  double tol = default_quasi_norm_tol);

// <x> = |(1, x)|_{(1, a)}
double bracket(std::span<const double> x, const AnisotropyVector& a,
               double tol = default_quasi_norm_tol);

// Lebesgue measure of the Euclidean unit ball, which is also |B_a(0,1)|.
double unit_ball_volume(std::size_t n);

class AnisotropicBall {
public:
    AnisotropicBall(std::vector<double> center, double radius, AnisotropyVector a);

    bool contains(std::span<const double> y) const;
    double measure() const;

    std::span<const double> center() const { return center_; }
    double radius() const { return radius_; }
    const AnisotropyVector& anisotropy() const { return a_; }

private:
    std::vector<double> center_;
    double radius_;
    AnisotropyVector a_;
};

using PointFunction = std::function<double(std::span<const double>)>;

// Integral of f over |x|_a < rho_max in anisotropic polar coordinates x = rho^a xi.
// resolution: {angles, radii} for n = 2, {polar angles, azimuths, radii} for n = 3.
double polar_integrate(const PointFunction& f, const AnisotropyVector& a, double rho_max,
                       std::span<const int> resolution);

}  // namespace herzkit
