#include "herzkit/maximal.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace herzkit {

namespace {

SampledFunction sup_over_balls(const SampledFunction& f, const BallFamily& family, double alpha)
{
    require_same_grid(f.grid(), family.grid());
    const std::size_t n = f.grid().dim();
    const double cell = f.grid().cell_volume();
    std::vector<double> absf(f.size());
    for (std::size_t i = 0; i < absf.size(); ++i)
        absf[i] = std::abs(f[i]);
    std::vector<double> out(f.size(), 0.0);
    const double power = 1.0 - alpha / static_cast<double>(n);
    family.for_each_ball([&](const BallFamily::Ball& b) {
        double sum = 0.0;
        for (std::size_t m : b.members)
            sum += absf[m];
        if (sum == 0.0)
            return;
        const double measure = static_cast<double>(b.lattice_count) * cell;
        const double value = alpha == 0.0 ? sum / static_cast<double>(b.lattice_count)
                                          : std::pow(measure, -power) * sum * cell;
        for (std::size_t m : b.members)
            out[m] = std::max(out[m], value);
    });
    return SampledFunction(f.grid(), std::move(out), f.label());
}

}  // namespace

SampledFunction hl_maximal(const SampledFunction& f, const BallFamily& family)
{
    return sup_over_balls(f, family, 0.0);
}

SampledFunction fractional_maximal(const SampledFunction& f, double alpha, const BallFamily& family)
{
    const double n = static_cast<double>(f.grid().dim());
    if (!(alpha >= 0.0 && alpha < n))
        fail(ErrorKind::domain, "fractional maximal needs 0 <= alpha < n");
    return sup_over_balls(f, family, alpha);
}

std::vector<SampledFunction> maximal_iterates(const SampledFunction& h, int K, const BallFamily& family)
{
    if (K < 0)
        fail(ErrorKind::domain, "iterate count must be >= 0");
    std::vector<SampledFunction> it;
    it.push_back(h.abs());
    for (int k = 1; k <= K; ++k)
        it.push_back(hl_maximal(it.back(), family));
    return it;
}

SampledFunction rubio_from_iterates(const std::vector<SampledFunction>& iterates, double B, int K)
{
    if (!(B > 0.0) || !std::isfinite(B))
        fail(ErrorKind::domain, "bound B must be positive and finite");
    if (K < 0 || static_cast<std::size_t>(K) >= iterates.size())
        fail(ErrorKind::domain, "not enough maximal iterates for K");
    SampledFunction out = iterates[0];
    double scale = 1.0;
    for (int k = 1; k <= K; ++k) {
        scale /= 2.0 * B;
        out += iterates[k] * scale;
    }
    return out;
}

SampledFunction rubio_de_francia(const SampledFunction& h, double B, int K, const BallFamily& family)
{
    for (double v : h.values())
        if (v < 0.0)
            fail(ErrorKind::domain, "Rubio de Francia iteration needs h >= 0");
    return rubio_from_iterates(maximal_iterates(h, K, family), B, K);
}

double estimate_maximal_bound(const std::vector<SampledFunction>& battery, const BallFamily& family,
                              const NormFunction& norm, int iterate_depth, double headroom)
{
    if (battery.empty())
        fail(ErrorKind::domain, "bound estimation needs a non-empty battery");
    double best = 0.0;
    for (const auto& g : battery) {
        SampledFunction cur = g.abs();
        double n0 = norm(cur);
        for (int d = 0; d <= iterate_depth; ++d) {
            SampledFunction next = hl_maximal(cur, family);
            const double n1 = norm(next);
            if (n0 > 0.0)
                best = std::max(best, n1 / n0);
            cur = std::move(next);
            n0 = n1;
        }
    }
    if (!(best > 0.0))
        fail(ErrorKind::domain, "battery has no function with positive norm");
    return best * (1.0 + headroom);
}

}  // namespace herzkit
