#include "herzkit/builtins.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/littlewood_paley.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace herzkit;

namespace {

LPKernel small_kernel()
{
    auto k = LPKernel::mexican_hat(1);
    k.j_min = -3;
    k.j_max = 1;
    return k;
}

// Direct sums: F_j(x) = sum_y t^{-1} psi((x - y)/t) w_y f(y).
std::vector<std::vector<double>> direct_convolutions(const SampledFunction& f, const LPKernel& k)
{
    const Grid& g = f.grid();
    const auto w = g.quadrature_weights();
    std::vector<std::vector<double>> out;
    for (double t : k.scales()) {
        std::vector<double> F(f.size(), 0.0);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < f.size(); ++j) {
                const double u = (g.point(i)[0] - g.point(j)[0]) / t;
                F[i] += k.psi(std::span<const double>(&u, 1)) / t * w[j] * f[j];
            }
        out.push_back(std::move(F));
    }
    return out;
}

// sqrt(sum_j sw_j t_j^{-1} sum_y w_y |F_j(y)|^2 weight(|x - y|, t_j) * pre)
std::vector<double> direct_square(const SampledFunction& f, const LPKernel& k,
                                  const std::function<double(double, double)>& weight, double pre)
{
    const Grid& g = f.grid();
    const auto w = g.quadrature_weights();
    const auto F = direct_convolutions(f, k);
    const auto ts = k.scales();
    const auto sw = k.scale_weights();
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j)
            for (std::size_t y = 0; y < f.size(); ++y)
                out[i] += sw[j] / ts[j] * w[y] * F[j][y] * F[j][y] *
                          weight(std::abs(g.point(i)[0] - g.point(y)[0]), ts[j]);
        out[i] = std::sqrt(pre * out[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("kernel admissibility")
{
    CHECK(lp_admissibility_check(LPKernel::mexican_hat(1)).admissible());
    CHECK(lp_admissibility_check(LPKernel::mexican_hat(2)).admissible());

    LPKernel gauss;
    gauss.name = "gauss";
    gauss.psi = [](std::span<const double> x) { return std::exp(-x[0] * x[0]); };
    const auto rg = lp_admissibility_check(gauss);
    CHECK_FALSE(rg.zero_mean_ok);
    CHECK(rg.mean == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-8));

    LPKernel slow;
    slow.name = "slow";
    slow.psi = [](std::span<const double> x) { return x[0] / (1.0 + x[0] * x[0]); };
    const auto rs = lp_admissibility_check(slow);
    CHECK(rs.zero_mean_ok);
    CHECK_FALSE(rs.decay_ok);
    CHECK_FALSE(rs.admissible());

    const auto sw = LPKernel::mexican_hat(1).scale_weights();
    double total = 0.0;
    for (double v : sw)
        total += v;
    CHECK(total == doctest::Approx(8.0 * std::numbers::ln2));
}

TEST_CASE("square functions against direct sums")
{
    const Grid g({65}, {4.0});
    const auto k = small_kernel();
    const auto f = builtin_function("gauss", g, {{"sigma", 0.7}}) - 0.4 * builtin_function("box", g, {{"r", 1.5}});

    const auto conv = lp_convolutions(f, k);
    const auto oracle = direct_convolutions(f, k);
    REQUIRE(conv.size() == oracle.size());
    for (std::size_t j = 0; j < conv.size(); ++j)
        for (std::size_t i = 0; i < f.size(); ++i)
            CHECK(conv[j][i] == doctest::Approx(oracle[j][i]).epsilon(1e-11).scale(1.0));

    const auto G = g_function(f, k);
    const auto gd = direct_square(f, k, [](double, double) { return 0.0; }, 1.0);
    const auto sw = k.scale_weights();
    for (std::size_t i = 0; i < f.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < oracle.size(); ++j)
            s += sw[j] * oracle[j][i] * oracle[j][i];
        CHECK(G[i] == doctest::Approx(std::sqrt(s)).epsilon(1e-10).scale(1.0));
        CHECK(gd[i] == 0.0);
    }

    const double a = 1.5;
    const auto S = lusin_area(f, k, a);
    const auto Sd = direct_square(f, k, [a](double d, double t) { return d < a * t ? 1.0 : 0.0; }, 1.0 / (2.0 * a));
    const double lambda = 1.2;
    const auto Gs = g_star(f, k, lambda);
    const auto Gd = direct_square(f, k, [lambda](double d, double t) { return std::pow(1.0 + d / t, -2.0 * lambda); }, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(S[i] == doctest::Approx(Sd[i]).epsilon(1e-10).scale(1.0));
        CHECK(Gs[i] == doctest::Approx(Gd[i]).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("square function properties")
{
    const Grid g({129}, {4.0});
    const auto k = small_kernel();
    const auto f = builtin_function("mexhat", g, {{"sigma", 0.5}});
    CHECK(g_function(SampledFunction::zeros(g), k).is_zero());
    const auto g1 = g_function(f, k);
    const auto g2 = g_function(-2.5 * f, k);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(g2[i] == doctest::Approx(2.5 * g1[i]).epsilon(1e-13).scale(1e-300));

    for (double a : {0.5, 1.0, 2.0})
        for (double lambda : {0.75, 1.5}) {
            const auto rep = area_domination_check(f, k, a, lambda);
            CHECK(rep.terms > 0);
            CHECK(rep.term_violations == 0);
            CHECK(rep.point_violations == 0);
            CHECK(rep.max_point_ratio <= 1.0 + 1e-12);
            const auto S = lusin_area(f, k, a);
            const auto Gs = g_star(f, k, lambda);
            const double C = area_domination_constant(1, a, lambda);
            for (std::size_t i = 0; i < g.size(); ++i)
                CHECK(S[i] <= C * Gs[i] * (1.0 + 1e-12));
        }
}

TEST_CASE("parameter validation")
{
    const Grid g({33}, {2.0});
    const auto f = builtin_function("gauss", g);
    auto k = small_kernel();
    CHECK_THROWS_AS(lusin_area(f, k, 0.0), Error);
    CHECK_THROWS_AS(g_star(f, k, -1.0), Error);
    k.j_min = 3;
    CHECK_THROWS_AS(g_function(f, k), Error);
    const Grid g2({17, 17}, {2.0, 2.0});
    try {
        g_function(builtin_function("gauss", g2), small_kernel());
        FAIL("expected shape error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::shape);
    }
}
