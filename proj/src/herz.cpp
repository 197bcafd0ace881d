#include "herzkit/herz.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace herzkit {

void HerzParams::validate() const
{
    if (!std::isfinite(alpha))
        fail(ErrorKind::domain, "alpha must be finite");
    if (!(p > 0.0) || std::isnan(p))
        fail(ErrorKind::domain, "p must lie in (0, inf]");
    if (q.dim() != anisotropy.dim())
        fail(ErrorKind::shape, "q and anisotropy dimensions differ");
    window.validate();
}

namespace {

void check_geometry(const SampledFunction& f, const HerzParams& params, const AnnulusGeometry& geo)
{
    params.validate();
    require_same_grid(f.grid(), geo.grid());
    if (!(geo.anisotropy() == params.anisotropy))
        fail(ErrorKind::shape, "geometry anisotropy differs from parameters");
    if (geo.window().k_min != params.window.k_min || geo.window().k_max != params.window.k_max)
        fail(ErrorKind::shape, "geometry window differs from parameters");
}

bool member(int idx, int k, bool homogeneous)
{
    if (!homogeneous && k == 0)
        return idx <= 0;
    return idx == k;
}

bool covered(int idx, const DyadicWindow& w, bool homogeneous)
{
    if (homogeneous)
        return idx != origin_annulus && w.contains(idx);
    return idx <= w.k_max && (w.k_min <= 0 || w.contains(idx));
}

SampledFunction masked(const SampledFunction& f, const AnnulusGeometry& geo, int k, bool homogeneous)
{
    std::vector<double> v(f.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (member(geo.annulus_index(i), k, homogeneous))
            v[i] = f[i];
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction uncovered(const SampledFunction& f, const AnnulusGeometry& geo, bool homogeneous)
{
    std::vector<double> v(f.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!covered(geo.annulus_index(i), geo.window(), homogeneous))
            v[i] = f[i];
    return SampledFunction(f.grid(), std::move(v));
}

double combine(const std::vector<double>& terms, double p)
{
    if (std::isinf(p)) {
        double m = 0.0;
        for (double t : terms)
            m = std::max(m, t);
        return m;
    }
    double s = 0.0;
    for (double t : terms)
        if (t != 0.0)
            s += std::pow(t, p);
    return std::pow(s, 1.0 / p);
}

}  // namespace

HerzNormReport herz_norm_report(const SampledFunction& f, const HerzParams& params,
                                const AnnulusGeometry& geometry, double truncation_threshold)
{
    check_geometry(f, params, geometry);
    HerzNormReport r;
    r.ks = window_indices(params.window, params.homogeneous);
    for (int k : r.ks) {
        const double local = mixed_lebesgue_norm(masked(f, geometry, k, params.homogeneous), params.q);
        r.terms.push_back(local == 0.0 ? 0.0 : std::pow(geometry.ball_measure(k), params.alpha) * local);
    }
    r.norm = combine(r.terms, params.p);
    const double total = mixed_lebesgue_norm(f, params.q);
    if (total > 0.0)
        r.truncation_fraction =
            mixed_lebesgue_norm(uncovered(f, geometry, params.homogeneous), params.q) / total;
    r.truncation_warning = r.truncation_fraction > truncation_threshold;
    return r;
}

HerzNormReport herz_norm_report(const SampledFunction& f, const HerzParams& params,
                                double truncation_threshold)
{
    params.validate();
    return herz_norm_report(f, params, AnnulusGeometry(f.grid(), params.anisotropy, params.window),
                            truncation_threshold);
}

double herz_norm(const SampledFunction& f, const HerzParams& params, const AnnulusGeometry& geometry)
{
    check_geometry(f, params, geometry);
    std::vector<double> terms;
    for (int k : window_indices(params.window, params.homogeneous)) {
        const double local = mixed_lebesgue_norm(masked(f, geometry, k, params.homogeneous), params.q);
        terms.push_back(local == 0.0 ? 0.0 : std::pow(geometry.ball_measure(k), params.alpha) * local);
    }
    return combine(terms, params.p);
}

double herz_norm(const SampledFunction& f, const HerzParams& params)
{
    params.validate();
    return herz_norm(f, params, AnnulusGeometry(f.grid(), params.anisotropy, params.window));
}

double quasi_triangle_constant(double p, const ExponentVector& q)
{
    if (!(p > 0.0) || std::isnan(p))
        fail(ErrorKind::domain, "p must lie in (0, inf]");
    double e = 0.0;
    for (double qi : q.exponents())
        if (qi < 1.0)
            e += (1.0 - qi) / qi;
    if (p < 1.0)
        e += (1.0 - p) / p;
    return std::exp2(e);
}

double block_synthesis_constant(double alpha, double p, double v)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        fail(ErrorKind::precondition, "block synthesis bound needs alpha > 0");
    if (!(p > 0.0) || !(v > 0.0))
        fail(ErrorKind::domain, "p and v must be positive");
    // Blocks in closed balls may touch the next annulus outward, hence the extra 2^{v alpha}.
    const double shift = std::exp2(v * alpha);
    auto geometric = [&](double r) { return 1.0 / (1.0 - std::exp2(-v * alpha * r)); };
    if (std::isinf(p))
        return shift * geometric(1.0);
    if (p <= 1.0)
        return shift * std::pow(geometric(p), 1.0 / p);
    const double pc = p / (p - 1.0);
    return shift * std::pow(geometric(0.5 * pc), 1.0 / pc) * std::pow(geometric(0.5 * p), 1.0 / p);
}

double inclusion_constant(double alpha1, double p1, double alpha2, double p2,
                          const AnisotropyVector& a, const DyadicWindow& window)
{
    if (!(alpha2 < alpha1))
        fail(ErrorKind::precondition, "inclusion needs alpha2 < alpha1");
    if (!(p1 > 0.0) || !(p2 > 0.0))
        fail(ErrorKind::domain, "p1 and p2 must be positive");
    window.validate();
    const double vn = unit_ball_volume(a.dim());
    std::vector<double> ratios;
    for (int k = std::max(0, window.k_min); k <= window.k_max; ++k)
        ratios.push_back(std::pow(vn * std::exp2(k * a.homogeneous_dimension()), alpha2 - alpha1));
    if (ratios.empty())
        return 0.0;
    if (std::isinf(p2) || (p2 >= p1 && !std::isinf(p1)))
        return *std::max_element(ratios.begin(), ratios.end());
    // 1/p2 = 1/p1 + 1/r
    const double r = std::isinf(p1) ? p2 : 1.0 / (1.0 / p2 - 1.0 / p1);
    double s = 0.0;
    for (double x : ratios)
        s += std::pow(x, r);
    return std::pow(s, 1.0 / r);
}

double inclusion_shifted_alpha(double alpha, const ExponentVector& q1, const ExponentVector& q2)
{
    if (q1.dim() != q2.dim())
        fail(ErrorKind::shape, "exponent vectors differ in dimension");
    double s = alpha;
    for (std::size_t i = 0; i < q1.dim(); ++i)
        s += 1.0 / q1[i] - 1.0 / q2[i];
    return s;
}

BlockDecomposition block_decompose(const SampledFunction& f, const HerzParams& params)
{
    params.validate();
    const AnnulusGeometry geo(f.grid(), params.anisotropy, params.window);
    BlockDecomposition d{params, {}, {}, {}, uncovered(f, geo, params.homogeneous)};
    for (int k : window_indices(params.window, params.homogeneous)) {
        SampledFunction part = masked(f, geo, k, params.homogeneous);
        const double local = mixed_lebesgue_norm(part, params.q);
        if (local == 0.0)
            continue;
        const double lambda = std::pow(geo.ball_measure(k), params.alpha) * local;
        d.ks.push_back(k);
        d.lambdas.push_back(lambda);
        d.blocks.push_back((part * (1.0 / lambda)).with_label("block_" + std::to_string(k)));
    }
    return d;
}

SampledFunction block_synthesize(const BlockDecomposition& d)
{
    if (d.ks.size() != d.lambdas.size() || d.ks.size() != d.blocks.size())
        fail(ErrorKind::shape, "decomposition arrays differ in length");
    SampledFunction out = d.remainder;
    for (std::size_t i = 0; i < d.blocks.size(); ++i)
        out += d.blocks[i] * d.lambdas[i];
    return out;
}

}  // namespace herzkit
