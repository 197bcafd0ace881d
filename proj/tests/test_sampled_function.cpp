#include "herzkit/annulus.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/sampled_function.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace herzkit;

TEST_CASE("grid layout")
{
    const Grid g({5, 3}, {2.0, 1.0});
    CHECK(g.size() == 15);
    CHECK(g.spacing(0) == doctest::Approx(1.0));
    CHECK(g.spacing(1) == doctest::Approx(1.0));
    CHECK(g.axis_coordinates(0)[0] == -2.0);
    CHECK(g.axis_coordinates(0)[4] == 2.0);
    CHECK(g.axis_coordinates(0)[2] == 0.0);
    const auto c = g.point(g.center_index());
    CHECK(c[0] == 0.0);
    CHECK(c[1] == 0.0);
    // Axis 0 varies fastest.
    CHECK(g.point(1)[0] == -1.0);
    CHECK(g.point(1)[1] == -1.0);
    std::vector<int> idx(2);
    g.multi_index(13, idx);
    CHECK(g.flat_index(idx) == 13);
    CHECK_THROWS_AS(Grid({4}, {1.0}), Error);
    CHECK_THROWS_AS(Grid({1}, {1.0}), Error);
    CHECK_THROWS_AS(Grid({5}, {-1.0}), Error);
}

TEST_CASE("sampled function arithmetic and validation")
{
    const Grid g = Grid::uniform(1, 5, 2.0);
    const auto f = SampledFunction::sample(g, [](std::span<const double> x) { return x[0]; });
    const auto h = SampledFunction::sample(g, [](std::span<const double> x) { return x[0] * x[0]; });
    const auto s = f + h;
    const auto p = f * h;
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(s[i] == f[i] + h[i]);
        CHECK(p[i] == f[i] * h[i]);
        CHECK((2.0 * f)[i] == 2.0 * f[i]);
    }
    CHECK_THROWS_AS(SampledFunction(g, std::vector<double>(4, 0.0)), Error);
    CHECK_THROWS_AS(SampledFunction(g, std::vector<double>{0, 0, NAN, 0, 0}), Error);
    const auto other = SampledFunction::zeros(Grid::uniform(1, 7, 2.0));
    CHECK_THROWS_AS(f + other, Error);
}

TEST_CASE("quadrature examples")
{
    const Grid g2 = Grid::uniform(2, 33, 1.0);
    CHECK(quadrature_integral(SampledFunction::zeros(g2)) == 0.0);
    CHECK(quadrature_integral(SampledFunction::sample(g2, [](std::span<const double>) { return 1.0; })) ==
          doctest::Approx(4.0).epsilon(1e-14));
    const Grid g1 = Grid::uniform(1, 257, 8.0);
    const auto gauss = SampledFunction::sample(g1, [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
    CHECK(std::abs(quadrature_integral(gauss) - std::sqrt(std::numbers::pi)) <= 1e-8);
}

TEST_CASE("annulus masks")
{
    const auto iso = AnisotropyVector::isotropic(2);
    const Grid g = Grid::uniform(2, 65, 2.0);
    SUBCASE("empty below the spacing")
    {
        CHECK(annulus_mask(-6, iso, g, true).count() == 0);
    }
    SUBCASE("euclidean annulus")
    {
        const auto m = annulus_mask(0, iso, g, true);
        for (std::size_t j = 0; j < g.size(); ++j) {
            const auto x = g.point(j);
            const double r = std::hypot(x[0], x[1]);
            CHECK(static_cast<bool>(m.indicator[j]) == (r >= 0.5 && r < 1.0));
        }
    }
    SUBCASE("anisotropic membership")
    {
        const AnisotropyVector a({2.0, 1.0});
        const Grid g1({9, 9}, {2.0, 2.0});
        const auto m = annulus_mask(1, a, g1, true);
        std::vector<int> idx{6, 4};
        const auto j = g1.flat_index(idx);
        CHECK(g1.point(j)[0] == doctest::Approx(1.0));
        CHECK(m.indicator[j]);
        const Grid g15({5, 5}, {3.0, 3.0});
        std::vector<int> i15{3, 2};
        CHECK(g15.point(g15.flat_index(i15))[0] == doctest::Approx(1.5));
        CHECK(annulus_mask(1, a, g15, true).indicator[g15.flat_index(i15)]);
    }
    SUBCASE("range errors")
    {
        try {
            annulus_mask(5, iso, g, true);
            FAIL("expected range error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::range);
        }
    }
    SUBCASE("non-homogeneous family")
    {
        const auto m0 = annulus_mask(0, iso, g, false);
        for (std::size_t j = 0; j < g.size(); ++j) {
            const auto x = g.point(j);
            CHECK(static_cast<bool>(m0.indicator[j]) == (std::hypot(x[0], x[1]) < 1.0));
        }
        CHECK_THROWS_AS(annulus_mask(-1, iso, g, false), Error);
    }
}

TEST_CASE("annuli partition the punctured window")
{
    const AnisotropyVector a({2.0, 1.0});
    const Grid g({41, 33}, {3.0, 2.0});
    const DyadicWindow w{-6, 4};
    AnnulusGeometry geo(g, a, w);
    std::vector<int> hits(g.size(), 0);
    for (int k = w.k_min; k <= w.k_max; ++k) {
        const auto m = annulus_mask(k, geo, true);
        for (std::size_t j = 0; j < g.size(); ++j)
            hits[j] += m.indicator[j];
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double t = geo.quasi_norms()[j];
        const bool inside = t > 0.0 && t >= std::exp2(w.k_min - 1) && t < std::exp2(w.k_max);
        CHECK(hits[j] == (inside ? 1 : 0));
    }
}

TEST_CASE("ball measure converges under refinement")
{
    const AnisotropyVector a({2.0, 1.0});
    const double exact = std::numbers::pi * std::exp2(3.0);
    double prev_err = 0.0;
    for (int n : {129, 257, 513}) {
        const Grid g({n, n}, {4.5, 2.5});
        AnnulusGeometry geo(g, a);
        const auto w = g.quadrature_weights();
        double m = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (geo.in_ball(j, 1))
                m += w[j];
        const double err = std::abs(m - exact);
        CHECK(err / exact < 0.02);
        if (prev_err > 0.0)
            CHECK(err < prev_err);
        prev_err = err;
    }
    AnnulusGeometry geo(Grid::uniform(2, 9, 1.0), a);
    CHECK(geo.ball_measure(1) == doctest::Approx(exact));
}
