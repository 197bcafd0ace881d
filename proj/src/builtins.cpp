#include "herzkit/builtins.hpp"

#include "herzkit/errors.hpp"

#include <cmath>
#include <random>
#include <set>

namespace herzkit {

namespace {

struct Reader {
    const BuiltinParams& params;
    std::set<std::string> used;

    double get(const std::string& key, double fallback)
    {
        used.insert(key);
        const auto it = params.find(key);
        if (it == params.end())
            return fallback;
        if (!std::isfinite(it->second))
            fail(ErrorKind::input_domain, "builtin parameter " + key + " must be finite");
        return it->second;
    }

    void finish(const std::string& name) const
    {
        for (const auto& [k, v] : params)
            if (!used.count(k))
                fail(ErrorKind::parse, "builtin '" + name + "' has no parameter '" + k + "'");
    }
};

double euclid(std::span<const double> x)
{
    double s = 0.0;
    for (double c : x)
        s += c * c;
    return std::sqrt(s);
}

}  // namespace

std::vector<std::string> builtin_names()
{
    return {"gauss", "box", "annulus", "log", "power", "mexhat"};
}

SampledFunction builtin_function(const std::string& name, const Grid& grid, const BuiltinParams& params,
                                 const AnisotropyVector* a)
{
    Reader in{params, {}};
    const double amp = in.get("amp", 1.0);
    const auto n = static_cast<double>(grid.dim());
    const double h = grid.min_spacing();
    const AnisotropyVector iso = AnisotropyVector::isotropic(grid.dim());
    const AnisotropyVector& av = a ? *a : iso;
    if (av.dim() != grid.dim())
        fail(ErrorKind::shape, "anisotropy and grid dimensions differ");

    PointFunction f;
    if (name == "gauss") {
        const double sigma = in.get("sigma", 1.0);
        if (!(sigma > 0.0))
            fail(ErrorKind::domain, "sigma must be positive");
        f = [=](std::span<const double> x) {
            const double r = euclid(x);
            return amp * std::exp(-r * r / (2.0 * sigma * sigma));
        };
    } else if (name == "box") {
        const double r = in.get("r", 1.0);
        if (!(r > 0.0))
            fail(ErrorKind::domain, "r must be positive");
        f = [=](std::span<const double> x) {
            double v = amp;
            for (double c : x) {
                const double d = std::abs(c) - r;
                if (std::abs(d) <= 1e-12 * r)
                    v *= 0.5;
                else if (d > 0.0)
                    return 0.0;
            }
            return v;
        };
    } else if (name == "annulus") {
        const double inner = in.get("inner", 0.5);
        const double outer = in.get("outer", 1.0);
        if (!(inner >= 0.0 && outer > inner))
            fail(ErrorKind::domain, "annulus needs 0 <= inner < outer");
        f = [=, &av](std::span<const double> x) {
            const double t = quasi_norm(x, av);
            return (t >= inner && t < outer) ? amp : 0.0;
        };
    } else if (name == "log") {
        const double origin = std::log(h / 2.0) - 1.0 / n;
        f = [=](std::span<const double> x) {
            const double r = euclid(x);
            return amp * (r == 0.0 ? origin : std::log(r));
        };
    } else if (name == "power") {
        const double gamma = in.get("gamma", 0.5);
        const double cell = std::pow(h / 2.0, gamma);
        const double origin = gamma > -n ? n / (n + gamma) * cell : cell;
        f = [=](std::span<const double> x) {
            const double r = euclid(x);
            return amp * (r == 0.0 ? origin : std::pow(r, gamma));
        };
    } else if (name == "mexhat") {
        const double sigma = in.get("sigma", 1.0);
        if (!(sigma > 0.0))
            fail(ErrorKind::domain, "sigma must be positive");
        f = [=](std::span<const double> x) {
            const double r = euclid(x) / sigma;
            return amp * (n - r * r) * std::exp(-r * r / 2.0);
        };
    } else {
        fail(ErrorKind::parse, "unknown builtin '" + name + "'");
    }
    in.finish(name);
    return SampledFunction::sample(grid, f, name);
}

std::vector<SampledFunction> random_bump_battery(const Grid& grid, std::size_t count, std::uint64_t seed,
                                                 double min_width)
{
    if (!(min_width > 0.0))
        fail(ErrorKind::domain, "bump width must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = grid.dim();
    std::vector<SampledFunction> out;
    for (std::size_t b = 0; b < count; ++b) {
        const int bumps = 1 + static_cast<int>(unit(rng) * 3.0) % 3;
        std::vector<std::vector<double>> centers;
        std::vector<double> widths, heights;
        for (int j = 0; j < bumps; ++j) {
            std::vector<double> c(n);
            for (std::size_t i = 0; i < n; ++i)
                c[i] = (2.0 * unit(rng) - 1.0) * 0.5 * grid.half_width(i);
            centers.push_back(std::move(c));
            widths.push_back(min_width * (1.0 + 3.0 * unit(rng)));
            heights.push_back(0.2 + unit(rng));
        }
        out.push_back(SampledFunction::sample(
            grid,
            [&](std::span<const double> x) {
                double v = 0.0;
                for (int j = 0; j < bumps; ++j) {
                    double r2 = 0.0;
                    for (std::size_t i = 0; i < n; ++i)
                        r2 += (x[i] - centers[j][i]) * (x[i] - centers[j][i]);
                    const double u = 1.0 - r2 / (widths[j] * widths[j]);
                    if (u > 0.0)
                        v += heights[j] * u * u;
                }
                return v;
            },
            "bumps" + std::to_string(b)));
    }
    return out;
}

}  // namespace herzkit
