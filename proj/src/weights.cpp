#include "herzkit/weights.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace herzkit {

namespace {

void require_positive(const SampledFunction& w)
{
    for (double v : w.values())
        if (!(v > 0.0))
            fail(ErrorKind::domain, "weight must be strictly positive on the grid");
}

}  // namespace

double bmo_norm(const SampledFunction& b, const BallFamily& family)
{
    require_same_grid(b.grid(), family.grid());
    double best = 0.0;
    family.for_each_ball([&](const BallFamily::Ball& ball) {
        if (ball.members.empty())
            return;
        double mean = 0.0;
        for (std::size_t m : ball.members)
            mean += b[m];
        mean /= static_cast<double>(ball.members.size());
        double osc = 0.0;
        for (std::size_t m : ball.members)
            osc += std::abs(b[m] - mean);
        best = std::max(best, osc / static_cast<double>(ball.members.size()));
    });
    return best;
}

WeightReport ap_constant(const SampledFunction& w, double p, const BallFamily& family)
{
    require_same_grid(w.grid(), family.grid());
    require_positive(w);
    if (!(p >= 1.0) || !std::isfinite(p))
        fail(ErrorKind::domain, "A_p constant needs 1 <= p < inf");
    WeightReport r;
    r.kind = p == 1.0 ? "A_1" : "A_p";
    r.p = p;
    r.family = family.describe();
    const double e = p > 1.0 ? -1.0 / (p - 1.0) : 0.0;  // -p'/p
    family.for_each_ball([&](const BallFamily::Ball& ball) {
        if (ball.members.empty())
            return;
        const double cnt = static_cast<double>(ball.members.size());
        double mw = 0.0;
        double mdual = 0.0;
        double wmin = std::numeric_limits<double>::infinity();
        for (std::size_t m : ball.members) {
            mw += w[m];
            wmin = std::min(wmin, w[m]);
            if (p > 1.0)
                mdual += std::pow(w[m], e);
        }
        mw /= cnt;
        r.a1_constant = std::max(r.a1_constant, mw / wmin);
        if (p > 1.0)
            r.constant = std::max(r.constant, mw * std::pow(mdual / cnt, p - 1.0));
    });
    if (p == 1.0)
        r.constant = r.a1_constant;
    return r;
}

WeightReport apq_constant(const SampledFunction& w, double p, double q, const BallFamily& family)
{
    require_same_grid(w.grid(), family.grid());
    require_positive(w);
    if (!(p > 1.0) || !std::isfinite(p) || !(q > 0.0) || !std::isfinite(q))
        fail(ErrorKind::domain, "A_{p,q} constant needs 1 < p < inf and 0 < q < inf");
    WeightReport r;
    r.kind = "A_pq";
    r.p = p;
    r.q = q;
    r.family = family.describe();
    const double pc = p / (p - 1.0);
    family.for_each_ball([&](const BallFamily::Ball& ball) {
        if (ball.members.empty())
            return;
        const double cnt = static_cast<double>(ball.members.size());
        double mw = 0.0;
        double mdual = 0.0;
        for (std::size_t m : ball.members) {
            mw += w[m];
            mdual += std::pow(w[m], -pc / q);
        }
        r.constant = std::max(r.constant, (mw / cnt) * std::pow(mdual / cnt, q / pc));
    });
    return r;
}

}  // namespace herzkit
