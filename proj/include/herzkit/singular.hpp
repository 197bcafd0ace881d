#pragma once

#include "herzkit/sampled_function.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>

namespace herzkit {

// I_alpha f(x) = int f(y) |x - y|^{-(n - alpha)} dy; the diagonal cell uses the cell
// integral of the kernel (closed form in 1D, refined midpoint rule otherwise).
SampledFunction fractional_integral(const SampledFunction& f, double alpha);

struct KernelValidation {
    bool size_ok = false;
    bool regularity_ok = false;
    // Largest observed measured/A ratios.
    double size_ratio = 0.0;
    double regularity_ratio = 0.0;
    std::size_t pairs = 0;
    std::size_t triples = 0;

    bool passed() const { return size_ok && regularity_ok; }
};

struct KernelSampling {
    std::uint64_t seed = 20240611;
    std::size_t pairs = 4000;
    double box = 4.0;
    double tolerance = 1e-9;
};

// Standard kernel: |K(x,y)| <= A / |x-y|^n and
// |K(x,y) - K(x',y)| <= A |x-x'|^delta / (|x-y| + |x'-y|)^{n+delta} when |x-x'| <= max/2,
// and the same in y.
class StandardKernel {
public:
    using Fn = std::function<double(std::span<const double>, std::span<const double>)>;

    StandardKernel(std::string name, std::size_t dim, Fn k, double size_constant, double delta);

    // 1/(pi (x - y)); A = 9/(2 pi) is the least single constant covering both conditions.
    static StandardKernel hilbert();

    KernelValidation validate(const KernelSampling& sampling = {});
    bool is_validated() const { return validated_; }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    double size_constant() const { return A_; }
    double delta() const { return delta_; }
    double operator()(std::span<const double> x, std::span<const double> y) const { return k_(x, y); }
    StandardKernel with_constant(double A) const;

private:
    std::string name_;
    std::size_t dim_;
    Fn k_;
    double A_;
    double delta_;
    bool validated_ = false;
};

// Principal value T f(x) = sum_{y != x} K(x, y) f(y) w_y, each offset summed with its mirror.
SampledFunction cz_apply(const StandardKernel& kernel, const SampledFunction& f);

struct FractionalIntegralOperator {
    double alpha = 0.5;
};

class OperatorHandle {
public:
    OperatorHandle(StandardKernel kernel) : op_(std::move(kernel)) {}
    OperatorHandle(FractionalIntegralOperator op) : op_(op) {}

    SampledFunction apply(const SampledFunction& f) const;
    std::string name() const;

private:
    std::variant<StandardKernel, FractionalIntegralOperator> op_;
};

// [b, T] f = b T f - T(b f)
SampledFunction commutator_apply(const SampledFunction& b, const OperatorHandle& op,
                                 const SampledFunction& f);

}  // namespace herzkit
