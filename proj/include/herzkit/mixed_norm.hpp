#pragma once

#include "herzkit/anisotropy.hpp"
#include "herzkit/sampled_function.hpp"

#include <limits>
#include <vector>

namespace herzkit {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Exponents q_i in (0, inf], applied with x_1 innermost.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::vector<double> q);
    static ExponentVector uniform(std::size_t n, double q);

    std::size_t dim() const { return q_.size(); }
    double operator[](std::size_t i) const { return q_[i]; }
    std::span<const double> exponents() const { return q_; }

    // Componentwise q' = q/(q-1); needs every q_i >= 1.
    ExponentVector conjugate() const;
    ExponentVector scaled(double s) const;
    double min() const;
    bool all_at_least_one() const;
    // sum a_i / q_i with 1/inf = 0
    double weighted_reciprocal_sum(const AnisotropyVector& a) const;
    double reciprocal_sum() const;

    bool operator==(const ExponentVector& other) const { return q_ == other.q_; }

private:
    std::vector<double> q_;
};

double conjugate_exponent(double q);

double mixed_lebesgue_norm(const SampledFunction& f, const ExponentVector& q);

struct InequalityPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

// (int |f g|, ||f||_q ||g||_{q'})
InequalityPair holder_check(const SampledFunction& f, const SampledFunction& g,
                            const ExponentVector& q);
// (|| |f|^s ||_q, ||f||_{s q}^s)
InequalityPair power_identity_check(const SampledFunction& f, const ExponentVector& q, double s);

}  // namespace herzkit
