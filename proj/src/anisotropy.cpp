#include "herzkit/anisotropy.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace herzkit {

AnisotropyVector::AnisotropyVector(std::vector<double> a) : a_(std::move(a))
{
    if (a_.empty())
        fail(ErrorKind::domain, "anisotropy vector must have at least one component");
    for (double ai : a_)
        if (!std::isfinite(ai) || ai < 1.0)
            fail(ErrorKind::domain, "anisotropy exponents must be finite and >= 1");
    v_ = 0.0;
    for (double ai : a_)
        v_ += ai;
    a_minus_ = *std::min_element(a_.begin(), a_.end());
    a_plus_ = *std::max_element(a_.begin(), a_.end());
}

AnisotropyVector AnisotropyVector::isotropic(std::size_t n)
{
    return AnisotropyVector(std::vector<double>(n, 1.0));
}

std::vector<double> dilate(double t, const AnisotropyVector& a, std::span<const double> x)
{
    if (x.size() != a.dim())
        fail(ErrorKind::shape, "point and anisotropy dimensions differ");
    if (!(t >= 0.0) || !std::isfinite(t))
        fail(ErrorKind::domain, "dilation parameter must be finite and >= 0");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = std::pow(t, a[i]) * x[i];
    return out;
}

double quasi_norm(std::span<const double> x, const AnisotropyVector& a, double tol)
{
    if (x.size() != a.dim())
        fail(ErrorKind::shape, "point and anisotropy dimensions differ");
    if (!(tol > 0.0))
        fail(ErrorKind::domain, "tolerance must be positive");
    std::size_t nonzero = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]))
            fail(ErrorKind::input_domain, "non-finite coordinate");
        if (x[i] != 0.0) {
            ++nonzero;
            last = i;
        }
    }
    if (nonzero == 0)
        return 0.0;
    if (nonzero == 1)
        return std::pow(std::abs(x[last]), 1.0 / a[last]);

    // phi(s) = sum exp(2 ln|x_i| - 2 a_i s) - 1 is convex and decreasing in s = ln t.
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> logs;
    std::vector<double> exps;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0)
            continue;
        const double r = std::pow(std::abs(x[i]), 1.0 / a[i]);
        lo = std::max(lo, r);
        hi += r;
        logs.push_back(2.0 * std::log(std::abs(x[i])));
        exps.push_back(2.0 * a[i]);
    }
    auto phi = [&](double s, double& dphi) {
        double f = -1.0;
        dphi = 0.0;
        for (std::size_t i = 0; i < logs.size(); ++i) {
            const double term = std::exp(logs[i] - exps[i] * s);
            f += term;
            dphi -= exps[i] * term;
        }
        return f;
    };

    double s_lo = std::log(lo);
    double s_hi = std::log(hi);
    double d = 0.0;
    while (phi(s_hi, d) > 0.0)
        s_hi += 1e-12 + 1e-12 * std::abs(s_hi);

    double s = s_lo;
    for (int iter = 0; iter < 200; ++iter) {
        const double f = phi(s, d);
        if (f == 0.0)
            break;
        if (f > 0.0)
            s_lo = s;
        else
            s_hi = s;
        double next = s - f / d;
        if (!(next > s_lo && next < s_hi))
            next = 0.5 * (s_lo + s_hi);
        const double t = std::exp(s);
        const double step = std::abs(std::exp(next) - t);
        s = next;
        if (step <= std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * t))
            break;
        if (s_hi - s_lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(s))
            break;
    }
    return std::exp(s);
}

double bracket(std::span<const double> x, const AnisotropyVector& a, double tol)
{
    std::vector<double> y(x.size() + 1, 1.0);
    std::copy(x.begin(), x.end(), y.begin() + 1);
    std::vector<double> b(a.dim() + 1, 1.0);
    std::copy(a.exponents().begin(), a.exponents().end(), b.begin() + 1);
    return quasi_norm(y, AnisotropyVector(std::move(b)), tol);
}

double unit_ball_volume(std::size_t n)
{
    const double h = 0.5 * static_cast<double>(n);
    return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

AnisotropicBall::AnisotropicBall(std::vector<double> center, double radius, AnisotropyVector a)
    : center_(std::move(center)), radius_(radius), a_(std::move(a))
{
    if (center_.size() != a_.dim())
        fail(ErrorKind::shape, "ball center and anisotropy dimensions differ");
    if (!(radius_ > 0.0) || !std::isfinite(radius_))
        fail(ErrorKind::domain, "ball radius must be positive and finite");
}

bool AnisotropicBall::contains(std::span<const double> y) const
{
    if (y.size() != center_.size())
        fail(ErrorKind::shape, "point and ball dimensions differ");
    std::vector<double> d(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        d[i] = y[i] - center_[i];
    return quasi_norm(d, a_) < radius_;
}

double AnisotropicBall::measure() const
{
    return unit_ball_volume(a_.dim()) * std::pow(radius_, a_.homogeneous_dimension());
}

double polar_integrate(const PointFunction& f, const AnisotropyVector& a, double rho_max,
                       std::span<const int> resolution)
{
    const std::size_t n = a.dim();
    if (n != 2 && n != 3)
        fail(ErrorKind::capability, "polar integration is implemented for n = 2 and n = 3");
    if (resolution.size() != n)
        fail(ErrorKind::shape, "polar resolution needs one entry per angular direction plus radii");
    for (int r : resolution)
        if (r < 1)
            fail(ErrorKind::domain, "polar resolution entries must be positive");
    if (!(rho_max > 0.0) || !std::isfinite(rho_max))
        fail(ErrorKind::domain, "rho_max must be positive and finite");

    const double v = a.homogeneous_dimension();
    const int n_rho = resolution[n - 1];
    const double d_rho = rho_max / n_rho;
    std::vector<double> rho(n_rho);
    std::vector<double> rho_w(n_rho);
    for (int i = 0; i < n_rho; ++i) {
        rho[i] = (i + 0.5) * d_rho;
        rho_w[i] = d_rho * std::pow(rho[i], v - 1.0);
    }

    std::vector<double> xi(n);
    std::vector<double> x(n);
    auto radial = [&](double sphere_weight) {
        // Jacobian of rho^a xi is rho^{v-1} sum a_i xi_i^2.
        double jac = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            jac += a[i] * xi[i] * xi[i];
        double acc = 0.0;
        for (int i = 0; i < n_rho; ++i) {
            for (std::size_t k = 0; k < n; ++k)
                x[k] = std::pow(rho[i], a[k]) * xi[k];
            acc += rho_w[i] * f(x);
        }
        return sphere_weight * jac * acc;
    };

    double total = 0.0;
    if (n == 2) {
        const int n_theta = resolution[0];
        const double d_theta = 2.0 * std::numbers::pi / n_theta;
        for (int j = 0; j < n_theta; ++j) {
            const double th = j * d_theta;
            xi[0] = std::cos(th);
            xi[1] = std::sin(th);
            total += radial(d_theta);
        }
    } else {
        const int n_phi = resolution[0];
        const int n_theta = resolution[1];
        const double d_phi = std::numbers::pi / n_phi;
        const double d_theta = 2.0 * std::numbers::pi / n_theta;
        for (int k = 0; k < n_phi; ++k) {
            const double ph = (k + 0.5) * d_phi;
            for (int j = 0; j < n_theta; ++j) {
                const double th = j * d_theta;
                xi[0] = std::sin(ph) * std::cos(th);
                xi[1] = std::sin(ph) * std::sin(th);
                xi[2] = std::cos(ph);
                total += radial(std::sin(ph) * d_phi * d_theta);
            }
        }
    }
    return total;
}

}  // namespace herzkit
