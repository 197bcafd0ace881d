#include "herzkit/mixed_norm.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace herzkit {

ExponentVector::ExponentVector(std::vector<double> q) : q_(std::move(q))
{
    if (q_.empty())
        fail(ErrorKind::domain, "exponent vector must have at least one component");
    for (double qi : q_)
        if (!(qi > 0.0) || std::isnan(qi))
            fail(ErrorKind::domain, "exponents must lie in (0, inf]");
}

ExponentVector ExponentVector::uniform(std::size_t n, double q)
{
    return ExponentVector(std::vector<double>(n, q));
}

double conjugate_exponent(double q)
{
    if (!(q >= 1.0))
        fail(ErrorKind::domain, "conjugate exponent needs q >= 1");
    if (q == 1.0)
        return infinity;
    if (std::isinf(q))
        return 1.0;
    return q / (q - 1.0);
}

ExponentVector ExponentVector::conjugate() const
{
    std::vector<double> c(q_.size());
    std::transform(q_.begin(), q_.end(), c.begin(), conjugate_exponent);
    return ExponentVector(std::move(c));
}

ExponentVector ExponentVector::scaled(double s) const
{
    if (!(s > 0.0))
        fail(ErrorKind::domain, "exponent scale must be positive");
    std::vector<double> c(q_.size());
    std::transform(q_.begin(), q_.end(), c.begin(), [s](double q) { return s * q; });
    return ExponentVector(std::move(c));
}

double ExponentVector::min() const
{
    return *std::min_element(q_.begin(), q_.end());
}

bool ExponentVector::all_at_least_one() const
{
    return std::all_of(q_.begin(), q_.end(), [](double q) { return q >= 1.0; });
}

double ExponentVector::weighted_reciprocal_sum(const AnisotropyVector& a) const
{
    if (a.dim() != q_.size())
        fail(ErrorKind::shape, "exponent and anisotropy dimensions differ");
    double s = 0.0;
    for (std::size_t i = 0; i < q_.size(); ++i)
        s += a[i] / q_[i];
    return s;
}

double ExponentVector::reciprocal_sum() const
{
    double s = 0.0;
    for (double q : q_)
        s += 1.0 / q;
    return s;
}

double mixed_lebesgue_norm(const SampledFunction& f, const ExponentVector& q)
{
    const Grid& g = f.grid();
    if (q.dim() != g.dim())
        fail(ErrorKind::shape, "exponent vector and grid dimensions differ");
    std::vector<double> cur(f.size());
    for (std::size_t i = 0; i < cur.size(); ++i)
        cur[i] = std::abs(f[i]);
    std::size_t len = cur.size();
    for (std::size_t axis = 0; axis < g.dim(); ++axis) {
        const std::size_t n = static_cast<std::size_t>(g.points(axis));
        const auto w = g.axis_weights(axis);
        const double qa = q[axis];
        const std::size_t lines = len / n;
        std::vector<double> next(lines);
        for (std::size_t l = 0; l < lines; ++l) {
            const double* row = &cur[l * n];
            if (std::isinf(qa)) {
                next[l] = *std::max_element(row, row + n);
            } else {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    if (row[j] != 0.0)
                        acc += w[j] * std::pow(row[j], qa);
                next[l] = std::pow(acc, 1.0 / qa);
            }
        }
        cur.swap(next);
        len = lines;
    }
    return cur[0];
}

InequalityPair holder_check(const SampledFunction& f, const SampledFunction& g,
                            const ExponentVector& q)
{
    require_same_grid(f.grid(), g.grid());
    const ExponentVector qc = q.conjugate();
    InequalityPair r;
    r.lhs = quadrature_integral((f * g).abs());
    r.rhs = mixed_lebesgue_norm(f, q) * mixed_lebesgue_norm(g, qc);
    return r;
}

InequalityPair power_identity_check(const SampledFunction& f, const ExponentVector& q, double s)
{
    if (!(s > 0.0) || !std::isfinite(s))
        fail(ErrorKind::domain, "power must be positive and finite");
    InequalityPair r;
    r.lhs = mixed_lebesgue_norm(f.abs_pow(s), q);
    r.rhs = std::pow(mixed_lebesgue_norm(f, q.scaled(s)), s);
    return r;
}

}  // namespace herzkit
