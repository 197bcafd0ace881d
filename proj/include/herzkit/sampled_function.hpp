#pragma once

#include "herzkit/grid.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace herzkit {

class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<double> values, std::string label = {});

    static SampledFunction zeros(const Grid& grid, std::string label = {});
    static SampledFunction sample(const Grid& grid,
                                  const std::function<double(std::span<const double>)>& f,
                                  std::string label = {});

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::string& label() const { return label_; }
    SampledFunction with_label(std::string label) const;

    SampledFunction map(const std::function<double(double)>& g) const;
    SampledFunction abs() const;
    SampledFunction abs_pow(double s) const;
    double max_abs() const;
    bool is_zero() const;

    SampledFunction& operator+=(const SampledFunction& other);
    SampledFunction& operator-=(const SampledFunction& other);
    SampledFunction& operator*=(double c);

    friend SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
    friend SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
    friend SampledFunction operator*(SampledFunction a, double c) { return a *= c; }
    friend SampledFunction operator*(double c, SampledFunction a) { return a *= c; }
    // Pointwise product.
    friend SampledFunction operator*(const SampledFunction& a, const SampledFunction& b);

private:
    Grid grid_;
    std::vector<double> values_;
    std::string label_;
};

// Tensor trapezoid rule.
double quadrature_integral(const SampledFunction& f);

}  // namespace herzkit
