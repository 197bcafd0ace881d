#include "herzkit/atoms.hpp"

#include "herzkit/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <cmath>
#include <random>

namespace herzkit {

namespace {

double lp_sum(const std::vector<AtomicPiece>& pieces, double p)
{
    double s = 0.0;
    for (const auto& piece : pieces)
        s = std::isinf(p) ? std::max(s, std::abs(piece.lambda)) : s + std::pow(std::abs(piece.lambda), p);
    return s;
}

double monomial(std::span<const double> x, const std::vector<int>& beta, std::span<const double> scale)
{
    double m = 1.0;
    for (std::size_t i = 0; i < beta.size(); ++i)
        for (int e = 0; e < beta[i]; ++e)
            m *= x[i] / scale[i];
    return m;
}

// Per-axis extent of the nonzero set, used to keep the moment Gram matrix well scaled.
std::vector<double> support_extent(const SampledFunction& f)
{
    const Grid& g = f.grid();
    std::vector<double> ext(g.dim(), 0.0);
    std::vector<double> x(g.dim());
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0.0)
            continue;
        g.coordinates(j, x);
        for (std::size_t i = 0; i < x.size(); ++i)
            ext[i] = std::max(ext[i], std::abs(x[i]));
    }
    for (std::size_t i = 0; i < ext.size(); ++i)
        if (ext[i] == 0.0)
            ext[i] = g.spacing(i);
    return ext;
}

std::vector<double> scaled_moments(const SampledFunction& f, const std::vector<std::vector<int>>& betas,
                                   std::span<const double> scale)
{
    const Grid& g = f.grid();
    const auto w = g.quadrature_weights();
    std::vector<double> x(g.dim());
    std::vector<double> m(betas.size(), 0.0);
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0.0)
            continue;
        g.coordinates(j, x);
        for (std::size_t b = 0; b < betas.size(); ++b)
            m[b] += w[j] * f[j] * monomial(x, betas[b], scale);
    }
    return m;
}

// max_beta |int fn x^beta| / (tol_factor ||fn|| prod scale_i^beta_i)
double moment_ratio(const SampledFunction& fn, int s, double norm, std::span<const double> scale)
{
    if (norm == 0.0)
        return 0.0;
    const auto betas = multi_indices_up_to(fn.grid().dim(), s);
    const auto m = scaled_moments(fn, betas, scale);
    double r = 0.0;
    for (double v : m)
        r = std::max(r, std::abs(v) / (moment_tol_factor * norm));
    return r;
}

SampledFunction indicator_mean(const SampledFunction& like, const std::vector<char>& in, const std::vector<double>& w)
{
    double measure = 0.0;
    for (std::size_t j = 0; j < in.size(); ++j)
        if (in[j])
            measure += w[j];
    std::vector<double> v(in.size(), 0.0);
    for (std::size_t j = 0; j < in.size(); ++j)
        if (in[j])
            v[j] = 1.0 / measure;
    return SampledFunction(like.grid(), std::move(v));
}

double ball_measure(int k, const AnisotropyVector& a)
{
    return unit_ball_volume(a.dim()) * std::exp2(k * a.homogeneous_dimension());
}

}  // namespace

int minimal_moment_order(double alpha, const ExponentVector& q, const AnisotropyVector& a)
{
    if (q.dim() != a.dim())
        fail(ErrorKind::shape, "q and anisotropy dimensions differ");
    const double v = a.homogeneous_dimension();
    const double t = (v / a.min_exponent()) * (alpha + q.weighted_reciprocal_sum(a) / v - 1.0);
    return std::max(0, static_cast<int>(std::floor(t)));
}

std::vector<std::vector<int>> multi_indices_up_to(std::size_t n, int s)
{
    if (s < 0)
        fail(ErrorKind::domain, "moment order must be nonnegative");
    std::vector<std::vector<int>> out;
    std::vector<int> beta(n, 0);
    for (int total = 0; total <= s; ++total) {
        // All compositions of total into n parts, first axis varying slowest.
        std::function<void(std::size_t, int)> rec = [&](std::size_t axis, int left) {
            if (axis + 1 == n) {
                beta[axis] = left;
                out.push_back(beta);
                return;
            }
            for (int e = left; e >= 0; --e) {
                beta[axis] = e;
                rec(axis + 1, left - e);
            }
        };
        if (n == 0)
            break;
        rec(0, total);
    }
    return out;
}

std::vector<double> moments(const SampledFunction& f, int s)
{
    const auto betas = multi_indices_up_to(f.grid().dim(), s);
    std::vector<double> ones(f.grid().dim(), 1.0);
    return scaled_moments(f, betas, ones);
}

AtomReport atom_check(const SampledFunction& fn, const AtomSpec& spec, const AnisotropyVector& a, double size_tol)
{
    if (spec.q.dim() != a.dim() || fn.grid().dim() != a.dim())
        fail(ErrorKind::shape, "atom dimensions differ");
    if (spec.s < 0)
        fail(ErrorKind::domain, "moment order must be nonnegative");
    AtomReport r;
    AnnulusGeometry geo(fn.grid(), a, DyadicWindow{std::min(spec.k, 0), std::max(spec.k, 0)});
    for (std::size_t j = 0; j < fn.size(); ++j)
        if (fn[j] != 0.0 && !geo.in_ball(j, spec.k))
            ++r.support_violations;
    r.support_ok = r.support_violations == 0 && (!spec.restricted || spec.k >= 0);
    r.norm = mixed_lebesgue_norm(fn, spec.q);
    r.bound = std::pow(geo.ball_measure(spec.k), -spec.alpha);
    r.size_ratio = r.norm / r.bound;
    r.size_ok = r.norm <= r.bound * (1.0 + size_tol);
    std::vector<double> scale(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        scale[i] = std::exp2(spec.k * a[i]);
    r.moment_ratio = moment_ratio(fn, spec.s, r.norm, scale);
    r.moments_ok = r.moment_ratio <= 1.0;
    return r;
}

MoleculeSpec MoleculeSpec::make(double alpha, const ExponentVector& q, int s, double epsilon,
                                const AnisotropyVector& a, std::optional<int> l)
{
    if (q.dim() != a.dim())
        fail(ErrorKind::shape, "q and anisotropy dimensions differ");
    if (s < 0)
        fail(ErrorKind::domain, "moment order must be nonnegative");
    const double v = a.homogeneous_dimension();
    const double sum = q.weighted_reciprocal_sum(a);
    const double floor_eps = std::max<double>(s, (v / a.min_exponent()) * (alpha + sum - 1.0));
    if (!(epsilon > floor_eps))
        fail(ErrorKind::domain, "epsilon must exceed " + std::to_string(floor_eps));
    MoleculeSpec m;
    m.alpha = alpha;
    m.q = q;
    m.s = s;
    m.epsilon = epsilon;
    m.a_exp = (1.0 - sum / v) - alpha + epsilon;
    m.d_exp = (1.0 - sum / v) + epsilon;
    m.l = l;
    if (!(m.a_exp > 0.0 && m.a_exp < m.d_exp))
        fail(ErrorKind::domain, "molecule exponents need 0 < a < d");
    return m;
}

MoleculeReport molecule_check(const SampledFunction& fn, const MoleculeSpec& spec, const AnisotropyVector& a)
{
    if (spec.q.dim() != a.dim() || fn.grid().dim() != a.dim())
        fail(ErrorKind::shape, "molecule dimensions differ");
    MoleculeReport r;
    const double vd = a.homogeneous_dimension() * spec.d_exp;
    const Grid& g = fn.grid();
    std::vector<double> x(g.dim());
    std::vector<double> weighted(fn.size());
    for (std::size_t j = 0; j < fn.size(); ++j) {
        if (fn[j] == 0.0) {
            weighted[j] = 0.0;
            continue;
        }
        g.coordinates(j, x);
        weighted[j] = std::pow(quasi_norm(x, a), vd) * fn[j];
    }
    r.norm = mixed_lebesgue_norm(fn, spec.q);
    r.weighted_norm = mixed_lebesgue_norm(SampledFunction(g, std::move(weighted)), spec.q);
    const double t = spec.a_exp / spec.d_exp;
    r.R = r.norm == 0.0 ? 0.0 : std::pow(r.norm, t) * std::pow(r.weighted_norm, 1.0 - t);
    if (r.norm > 0.0) {
        const double rho = std::pow(r.weighted_norm / r.norm, 1.0 / vd);
        std::vector<double> scale(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            scale[i] = std::max(std::pow(rho, a[i]), g.spacing(i));
        r.moment_ratio = moment_ratio(fn, spec.s, r.norm, scale);
    }
    r.moments_ok = r.moment_ratio <= 1.0;
    if (spec.l)
        r.dyadic_size_ok = r.norm <= std::pow(ball_measure(*spec.l, a), -spec.alpha) * (1.0 + default_size_tol);
    return r;
}

SampledFunction remove_moments(const SampledFunction& g, int s, const SampledFunction& carrier)
{
    require_same_grid(g.grid(), carrier.grid());
    if (carrier.is_zero())
        fail(ErrorKind::precondition, "moment carrier is zero on the grid");
    const auto betas = multi_indices_up_to(g.grid().dim(), s);
    const auto scale = support_extent(carrier);
    const std::size_t m = betas.size();

    const Grid& grid = g.grid();
    const auto w = grid.quadrature_weights();
    std::vector<double> x(grid.dim());
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    std::vector<double> mono(m);
    for (std::size_t j = 0; j < carrier.size(); ++j) {
        if (carrier[j] == 0.0)
            continue;
        grid.coordinates(j, x);
        for (std::size_t b = 0; b < m; ++b)
            mono[b] = monomial(x, betas[b], scale);
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c)
                gram(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) += w[j] * carrier[j] * mono[b] * mono[c];
    }
    const auto solver = gram.colPivHouseholderQr();
    if (solver.rank() < static_cast<Eigen::Index>(m))
        fail(ErrorKind::precondition, "carrier does not resolve the requested moments");

    SampledFunction out = g;
    // A second pass mops up the rounding left by the first.
    for (int pass = 0; pass < 2; ++pass) {
        const auto mom = scaled_moments(out, betas, scale);
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
        for (std::size_t b = 0; b < m; ++b)
            rhs(static_cast<Eigen::Index>(b)) = mom[b];
        const Eigen::VectorXd c = solver.solve(rhs);
        std::vector<double> v(out.values().begin(), out.values().end());
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (carrier[j] == 0.0)
                continue;
            grid.coordinates(j, x);
            double poly = 0.0;
            for (std::size_t b = 0; b < m; ++b)
                poly += c(static_cast<Eigen::Index>(b)) * monomial(x, betas[b], scale);
            v[j] -= carrier[j] * poly;
        }
        out = SampledFunction(grid, std::move(v), g.label());
    }
    return out;
}

SampledFunction random_atom(const Grid& grid, const AtomSpec& spec, const AnisotropyVector& a, std::uint64_t seed,
                            double fill)
{
    if (grid.dim() != a.dim() || spec.q.dim() != a.dim())
        fail(ErrorKind::shape, "atom dimensions differ");
    if (!(fill > 0.0 && fill <= 1.0))
        fail(ErrorKind::domain, "fill must lie in (0, 1]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));

    const std::size_t n = grid.dim();
    const auto betas = multi_indices_up_to(n, 2);
    std::vector<double> coef(betas.size());
    for (auto& c : coef)
        c = normal(rng);
    std::vector<double> freq(n);
    for (auto& f : freq)
        f = 3.0 * normal(rng);
    const double shift = phase(rng);

    std::vector<double> scale(n);
    for (std::size_t i = 0; i < n; ++i)
        scale[i] = std::exp2(spec.k * a[i]);
    const double radius = std::exp2(spec.k);

    std::vector<double> bump(grid.size(), 0.0), raw(grid.size(), 0.0);
    std::vector<double> x(n);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        grid.coordinates(j, x);
        const double u = quasi_norm(x, a) / radius;
        if (u >= 1.0)
            continue;
        const double b = std::pow(1.0 - u * u, 3);
        double poly = 0.0;
        for (std::size_t t = 0; t < betas.size(); ++t)
            poly += coef[t] * monomial(x, betas[t], scale);
        double arg = shift;
        for (std::size_t i = 0; i < n; ++i)
            arg += freq[i] * x[i] / scale[i];
        bump[j] = b;
        raw[j] = b * poly * std::cos(arg);
    }
    SampledFunction carrier(grid, std::move(bump));
    if (carrier.is_zero())
        fail(ErrorKind::precondition, "grid does not resolve the atom ball");
    SampledFunction g = remove_moments(SampledFunction(grid, std::move(raw)), spec.s, carrier);
    const double norm = mixed_lebesgue_norm(g, spec.q);
    if (norm == 0.0)
        fail(ErrorKind::precondition, "generated atom vanished after moment removal");
    g *= fill * std::pow(ball_measure(spec.k, a), -spec.alpha) / norm;
    return g.with_label("atom");
}

SampledFunction synthesize(const AtomicDecomposition& d, bool include_remainder)
{
    SampledFunction out = include_remainder ? d.remainder : SampledFunction::zeros(d.remainder.grid());
    for (const auto* family : {&d.family1, &d.family2})
        for (const auto& piece : *family)
            out += piece.lambda * piece.atom;
    return out;
}

bool atomic_index_in_range(double alpha, const ExponentVector& q, const AnisotropyVector& a)
{
    const double v = a.homogeneous_dimension();
    const double sum = q.weighted_reciprocal_sum(a);
    return alpha >= 1.0 - sum / v && alpha < (a.max_exponent() - sum) / v + 1.0;
}

AtomicDecomposition atomic_decompose(const SampledFunction& f, const HerzParams& params, const SchwartzWindow& w,
                                     double truncation_threshold)
{
    params.validate();
    const AnisotropyVector& a = params.anisotropy;
    if (f.grid().dim() != a.dim())
        fail(ErrorKind::shape, "function and anisotropy dimensions differ");
    if (!params.homogeneous)
        fail(ErrorKind::capability, "atomic decomposition is built on the homogeneous family");
    if (!atomic_index_in_range(params.alpha, params.q, a))
        fail(ErrorKind::precondition, "alpha outside the index range of the atomic characterization");

    const Grid& grid = f.grid();
    const auto wq = grid.quadrature_weights();
    const DyadicWindow& win = params.window;
    AnnulusGeometry geo(grid, a, win);
    const auto norms = geo.quasi_norms();

    // Windows where A~_k = A_{k-1} u A_k u A_{k+1} holds grid nodes; they form a contiguous run.
    std::vector<int> ks;
    std::vector<std::vector<char>> tilde;
    for (int k = win.k_min; k <= win.k_max; ++k) {
        std::vector<char> in(grid.size(), 0);
        bool any = false;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const int idx = geo.annulus_index(j);
            if (idx != origin_annulus && idx >= k - 1 && idx <= k + 1) {
                in[j] = 1;
                any = true;
            }
        }
        if (any) {
            ks.push_back(k);
            tilde.push_back(std::move(in));
        }
    }
    AtomicDecomposition d(f);
    d.kind = "atomic";
    d.p = params.p;
    if (ks.empty()) {
        d.warnings.push_back("no dyadic annulus of the window meets the grid");
        return d;
    }
    for (std::size_t t = 1; t < ks.size(); ++t)
        if (ks[t] != ks[t - 1] + 1)
            fail(ErrorKind::precondition, "annuli of the window are not contiguous on the grid");

    // Partition of unity from psi_k(x) = (1 - u^2)^3, u = (|x|_a - 1.25 2^k) / (0.75 2^k).
    const std::size_t K = ks.size();
    std::vector<std::vector<double>> psi(K, std::vector<double>(grid.size(), 0.0));
    std::vector<double> total(grid.size(), 0.0);
    for (std::size_t t = 0; t < K; ++t) {
        const double c = std::exp2(ks[t]);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double u = (norms[j] - 1.25 * c) / (0.75 * c);
            if (std::abs(u) < 1.0) {
                psi[t][j] = std::pow(1.0 - u * u, 3);
                total[j] += psi[t][j];
            }
        }
    }

    const SampledFunction mf = radial_maximal(f, w, a);
    auto piece_norm = [&](int j) {
        std::vector<double> v(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (geo.annulus_index(i) == j)
                v[i] = mf[i];
        return mixed_lebesgue_norm(SampledFunction(grid, std::move(v)), params.q);
    };
    std::vector<double> mnorm;
    const int j_lo = ks.front() - 1;
    for (int j = j_lo; j <= ks.back() + 2; ++j)
        mnorm.push_back(piece_norm(j));
    auto S = [&](int from, int to) {
        double s = 0.0;
        for (int j = from; j <= to; ++j)
            s += mnorm[static_cast<std::size_t>(j - j_lo)];
        return s;
    };

    std::vector<SampledFunction> v, g;
    std::vector<double> c(K);
    double covered_mass = 0.0;
    for (std::size_t t = 0; t < K; ++t) {
        v.push_back(indicator_mean(f, tilde[t], wq));
        std::vector<double> fp(grid.size(), 0.0);
        for (std::size_t j = 0; j < grid.size(); ++j)
            if (psi[t][j] != 0.0)
                fp[j] = f[j] * psi[t][j] / total[j];
        SampledFunction part(grid, std::move(fp));
        c[t] = quadrature_integral(part);
        g.push_back(part - c[t] * v[t]);
    }
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (total[j] > 0.0)
            covered_mass += std::abs(f[j]) * wq[j];

    // m_k = sum_{i >= k} c_i and h_k = m_{k+1} (v_{k+1} - v_k).
    std::vector<double> m(K + 1, 0.0);
    for (std::size_t t = K; t-- > 0;)
        m[t] = m[t + 1] + c[t];
    std::vector<SampledFunction> h;
    for (std::size_t t = 0; t + 1 < K; ++t)
        h.push_back(m[t + 1] * (v[t + 1] - v[t]));

    const double alpha = params.alpha;
    auto fill_family = [&](const std::vector<SampledFunction>& pieces, int ball_shift, int s_lo, int s_hi,
                           std::vector<AtomicPiece>& out) {
        double C = 0.0;
        std::vector<double> norms_q(pieces.size());
        for (std::size_t t = 0; t < pieces.size(); ++t) {
            norms_q[t] = mixed_lebesgue_norm(pieces[t], params.q);
            const double s = S(ks[t] + s_lo, ks[t] + s_hi);
            if (norms_q[t] > 0.0 && s > 0.0)
                C = std::max(C, norms_q[t] / s);
        }
        for (std::size_t t = 0; t < pieces.size(); ++t) {
            if (norms_q[t] == 0.0)
                continue;
            const int ball = ks[t] + ball_shift;
            const double bm = std::pow(geo.ball_measure(ball), alpha);
            const double s = S(ks[t] + s_lo, ks[t] + s_hi);
            double lambda = C * bm * s;
            if (!(s > 0.0)) {
                lambda = bm * norms_q[t];
                d.warnings.push_back("piece at k=" + std::to_string(ks[t]) + " has no maximal-function mass nearby");
            }
            out.push_back(AtomicPiece{ball, lambda, (1.0 / lambda) * pieces[t]});
        }
        return C;
    };
    d.c1 = fill_family(g, 1, -1, 1, d.family1);
    d.c2 = fill_family(h, 2, -1, 2, d.family2);
    d.lambda_sum1 = lp_sum(d.family1, d.p);
    d.lambda_sum2 = lp_sum(d.family2, d.p);

    // f (1 - sum Psi_k) + m_{K0} v_{K0}
    std::vector<double> rem(grid.size(), 0.0);
    double outside = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (total[j] == 0.0) {
            rem[j] = f[j];
            outside += std::abs(f[j]) * wq[j];
        }
    }
    d.remainder = SampledFunction(grid, std::move(rem)) + m[0] * v[0];
    const double mass = covered_mass + outside;
    if (mass > 0.0 && outside / mass > truncation_threshold)
        d.warnings.push_back("mass outside the dyadic window: fraction " + std::to_string(outside / mass));
    return d;
}

AtomicDecomposition molecule_to_atoms(const SampledFunction& fn, const MoleculeSpec& spec, const AnisotropyVector& a,
                                      double p, SigmaReading reading)
{
    if (!(spec.alpha > 0.0))
        fail(ErrorKind::precondition, "molecule conversion needs alpha > 0");
    if (!(p > 0.0))
        fail(ErrorKind::domain, "p must be positive");
    const auto check = molecule_check(fn, spec, a);
    if (!check.passed())
        fail(ErrorKind::precondition, "input is not a molecule");
    if (check.norm == 0.0)
        fail(ErrorKind::precondition, "zero molecule has no scale");

    const Grid& grid = fn.grid();
    const auto wq = grid.quadrature_weights();
    const double v = a.homogeneous_dimension();
    const double r = std::pow(check.norm, -1.0 / spec.alpha);
    const int sigma_measure = static_cast<int>(std::ceil(std::log2(r) / v));
    const int sigma_radius = static_cast<int>(std::ceil(std::log2(r)));
    const int sigma = reading == SigmaReading::measure_scale ? sigma_measure : sigma_radius;

    AtomicDecomposition d(SampledFunction::zeros(grid));
    d.kind = "molecular";
    d.p = p;
    d.r = r;
    d.sigma = sigma;
    d.sigma_radius_reading = sigma_radius;
    if (spec.s > 0)
        d.warnings.push_back("pieces carry vanishing mean only; higher moments are not redistributed");

    // Shell index of every node: 0 for |x|_a <= 2^sigma, k for 2^{sigma+k-1} < |x|_a <= 2^{sigma+k}.
    AnnulusGeometry geo(grid, a, DyadicWindow{std::clamp(sigma, -60, 60), std::clamp(sigma, -60, 60)});
    const auto norms = geo.quasi_norms();
    std::vector<int> shell(grid.size(), 0);
    int top = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = norms[j] / std::exp2(sigma);
        int k = 0;
        if (t > 1.0) {
            k = static_cast<int>(std::ceil(std::log2(t)));
            while (std::exp2(sigma + k - 1) >= norms[j])
                --k;
            while (std::exp2(sigma + k) < norms[j])
                ++k;
        }
        shell[j] = k;
        top = std::max(top, k);
    }

    std::vector<int> ks;
    std::vector<SampledFunction> mk, psik;
    std::vector<double> mass;
    for (int k = 0; k <= top; ++k) {
        std::vector<char> in(grid.size(), 0);
        std::vector<double> part(grid.size(), 0.0);
        bool any = false;
        for (std::size_t j = 0; j < grid.size(); ++j)
            if (shell[j] == k) {
                in[j] = 1;
                part[j] = fn[j];
                any = true;
            }
        if (!any)
            continue;
        ks.push_back(k);
        SampledFunction piece(grid, std::move(part));
        mass.push_back(quadrature_integral(piece));
        mk.push_back(std::move(piece));
        psik.push_back(indicator_mean(fn, in, wq));
    }

    const double va = v * spec.a_exp;
    const std::size_t K = ks.size();
    std::vector<SampledFunction> first, second;
    std::vector<int> first_ball, second_ball;
    std::vector<double> first_scale, second_scale;
    for (std::size_t t = 0; t < K; ++t) {
        first.push_back(mk[t] - mass[t] * psik[t]);
        first_ball.push_back(sigma + ks[t]);
        first_scale.push_back(std::exp2(ks[t] * va));
    }
    std::vector<double> N(K + 1, 0.0);
    for (std::size_t t = K; t-- > 0;)
        N[t] = N[t + 1] + mass[t];
    for (std::size_t t = 0; t + 1 < K; ++t) {
        second.push_back(N[t + 1] * (psik[t + 1] - psik[t]));
        second_ball.push_back(sigma + ks[t + 1]);
        second_scale.push_back(std::exp2(ks[t] * va));
    }
    d.remainder = N[0] * psik[0];

    auto fill_family = [&](const std::vector<SampledFunction>& pieces, const std::vector<int>& balls,
                           const std::vector<double>& scales, std::vector<AtomicPiece>& out) {
        double C = 0.0;
        std::vector<double> nq(pieces.size());
        for (std::size_t t = 0; t < pieces.size(); ++t) {
            nq[t] = mixed_lebesgue_norm(pieces[t], spec.q);
            C = std::max(C, nq[t] * scales[t] * std::pow(ball_measure(balls[t], a), spec.alpha));
        }
        for (std::size_t t = 0; t < pieces.size(); ++t) {
            if (nq[t] == 0.0)
                continue;
            const double lambda = C / scales[t];
            out.push_back(AtomicPiece{balls[t], lambda, (1.0 / lambda) * pieces[t]});
        }
        return C;
    };
    d.c1 = fill_family(first, first_ball, first_scale, d.family1);
    d.c2 = fill_family(second, second_ball, second_scale, d.family2);
    d.lambda_sum1 = lp_sum(d.family1, p);
    d.lambda_sum2 = lp_sum(d.family2, p);
    if (sigma != sigma_radius)
        d.warnings.push_back("radius-scale reading gives sigma=" + std::to_string(sigma_radius) +
                             " (measure-scale " + std::to_string(sigma_measure) + ")");
    return d;
}

}  // namespace herzkit
