#include "herzkit/builtins.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/herz.hpp"
#include "herzkit/maximal.hpp"
#include "herzkit/weights.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace herzkit;

namespace {

// Brute force over every odd window of nodes [c - m, c + m] containing node x, values off the grid
// counted as zero; s = 1 - alpha gives the fractional normalisation.
double window_oracle(const SampledFunction& f, int x, double alpha, int m_max)
{
    const int N = f.grid().points(0);
    const double h = f.grid().spacing(0);
    double best = 0.0;
    for (int m = 0; m <= m_max; ++m)
        for (int c = std::max(0, x - m); c <= std::min(N - 1, x + m); ++c) {
            double s = 0.0;
            for (int j = c - m; j <= c + m; ++j)
                if (j >= 0 && j < N)
                    s += std::abs(f[static_cast<std::size_t>(j)]);
            const double measure = (2 * m + 1) * h;
            best = std::max(best, std::pow(measure, -(1.0 - alpha)) * s * h);
        }
    return best;
}

SampledFunction indicator01(const Grid& g)
{
    return SampledFunction::sample(g, [](std::span<const double> x) { return (x[0] >= -1e-12 && x[0] <= 1.0 + 1e-12) ? 1.0 : 0.0; });
}

}  // namespace

TEST_CASE("maximal function basics")
{
    const Grid g({129}, {4.0});
    const auto family = BallFamily::dyadic(g, 2.0);
    const auto c = SampledFunction::sample(g, [](std::span<const double>) { return 2.5; });
    const auto mc = hl_maximal(c, family);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(mc[i] == doctest::Approx(2.5).epsilon(1e-15));

    std::mt19937_64 rng(2);
    const auto battery = random_bump_battery(g, 10, 3, 0.25);
    for (const auto& f : battery) {
        const auto h = battery[(&f - battery.data() + 1) % battery.size()];
        const auto mf = hl_maximal(f, family);
        const auto mh = hl_maximal(h, family);
        const auto mfh = hl_maximal(f - 0.7 * h, family);
        const auto m3 = hl_maximal(-3.0 * f, family);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(mf[i] >= std::abs(f[i]) * (1.0 - 1e-15));
            CHECK(mfh[i] <= (mf[i] + 0.7 * mh[i]) * (1.0 + 1e-14));
            CHECK(m3[i] == doctest::Approx(3.0 * mf[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("maximal function against the exhaustive window oracle")
{
    const Grid g({129}, {4.0});
    const double h = g.spacing(0);
    const auto family = BallFamily::lattice_complete(g, 8.0);
    const auto f = indicator01(g);
    const auto mf = hl_maximal(f, family);
    const int x3 = static_cast<int>(std::lround((3.0 + 4.0) / h));
    CHECK(mf[static_cast<std::size_t>(x3)] == doctest::Approx(window_oracle(f, x3, 0.0, 128)).epsilon(1e-14));
    CHECK(mf[static_cast<std::size_t>(x3)] == doctest::Approx(1.0 / 3.0).epsilon(2.0 * h));
    for (int x = 0; x < 129; x += 7)
        CHECK(mf[static_cast<std::size_t>(x)] == doctest::Approx(window_oracle(f, x, 0.0, 128)).epsilon(1e-14));

    const auto fm = fractional_maximal(f, 0.5, family);
    const int xh = static_cast<int>(std::lround((0.5 + 4.0) / h));
    CHECK(fm[static_cast<std::size_t>(xh)] == doctest::Approx(window_oracle(f, xh, 0.5, 128)).epsilon(1e-13));
}

TEST_CASE("fractional maximal function")
{
    const Grid g({65, 65}, {2.0, 2.0});
    const auto family = BallFamily::dyadic(g, 1.0);
    const auto f = builtin_function("gauss", g);
    const auto m = hl_maximal(f, family);
    const auto m0 = fractional_maximal(f, 0.0, family);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(m0[i] == m[i]);
    CHECK(fractional_maximal(SampledFunction::zeros(g), 1.0, family).is_zero());
    try {
        fractional_maximal(f, 2.0, family);
        FAIL("expected domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
}

TEST_CASE("rubio de francia iteration")
{
    const Grid g({129}, {4.0});
    SUBCASE("geometric series when M fixes the constant")
    {
        const BallFamily cells(g, {});
        const auto one = SampledFunction::sample(g, [](std::span<const double>) { return 1.0; });
        const double B = 1.3;
        for (int K : {0, 3, 30}) {
            const auto r = rubio_de_francia(one, B, K, cells);
            double expected = 0.0;
            for (int k = 0; k <= K; ++k)
                expected += std::pow(2.0 * B, -k);
            CHECK(r[64] == doctest::Approx(expected).epsilon(1e-14));
        }
        CHECK(rubio_de_francia(one, B, 200, cells)[0] == doctest::Approx(2.0 * B / (2.0 * B - 1.0)).epsilon(1e-14));
    }
    SUBCASE("pointwise properties")
    {
        const auto family = BallFamily::dyadic(g, 2.0);
        const auto battery = random_bump_battery(g, 8, 12, 0.25);
        const double B = 2.0;
        const int K = 6;
        for (const auto& h : battery) {
            const auto it = maximal_iterates(h, K + 1, family);
            for (std::size_t i = 0; i < g.size(); ++i)
                CHECK(it[0][i] == std::abs(h[i]));
            const auto r = rubio_de_francia(h, B, K, family);
            const auto r1 = rubio_from_iterates(it, B, K + 1);
            const auto mr = hl_maximal(r, family);
            for (std::size_t i = 0; i < g.size(); ++i) {
                CHECK(h[i] <= r[i]);
                CHECK(mr[i] <= 2.0 * B * r1[i] * (1.0 + 1e-13));
            }
        }
        CHECK_THROWS_AS(rubio_de_francia(-1.0 * battery[0], B, K, family), Error);
    }
    SUBCASE("bound estimate covers the battery")
    {
        const auto family = BallFamily::dyadic(g, 2.0);
        const auto battery = random_bump_battery(g, 6, 4, 0.25);
        HerzParams hp;
        hp.alpha = 0.1;
        hp.p = 2.0;
        hp.q = ExponentVector({2.0});
        hp.anisotropy = AnisotropyVector::isotropic(1);
        const NormFunction norm = [&](const SampledFunction& f) { return herz_norm(f, hp); };
        const double B = estimate_maximal_bound(battery, family, norm, 2);
        for (const auto& f : battery)
            CHECK(norm(hl_maximal(f, family)) <= B * norm(f));
        CHECK(B >= 1.0);
    }
}

TEST_CASE("bmo norm")
{
    const Grid g({257}, {4.0});
    const auto c = SampledFunction::sample(g, [](std::span<const double>) { return -1.5; });
    CHECK(bmo_norm(c, BallFamily::dyadic(g, 2.0)) == doctest::Approx(0.0).epsilon(1e-15));
    const auto s = SampledFunction::sample(g, [](std::span<const double> x) { return std::sin(3.0 * x[0]); });
    CHECK(bmo_norm(s, BallFamily::dyadic(g, 4.0)) <= 2.0 * s.max_abs());
    const auto lg = builtin_function("log", g);
    const double b1 = bmo_norm(lg, BallFamily::dyadic(g, 1.0));
    const double b2 = bmo_norm(lg, BallFamily::dyadic(g, 2.0));
    const double b4 = bmo_norm(lg, BallFamily::dyadic(g, 4.0));
    CHECK(std::isfinite(b4));
    CHECK(b2 == doctest::Approx(b1).epsilon(0.10));
    CHECK(b4 == doctest::Approx(b2).epsilon(0.10));
}

TEST_CASE("muckenhoupt constants")
{
    const Grid g({257}, {4.0});
    const auto one = SampledFunction::sample(g, [](std::span<const double>) { return 1.0; });
    const auto fam = BallFamily::dyadic(g, 2.0, 2);
    CHECK(ap_constant(one, 2.0, fam).constant == 1.0);
    CHECK(ap_constant(one, 1.0, fam).constant == 1.0);
    CHECK(apq_constant(one, 2.0, 3.0, fam).constant == 1.0);

    const auto sqrtw = builtin_function("power", g, {{"gamma", 0.5}});
    const auto invsq = builtin_function("power", g, {{"gamma", -2.0}});
    double prev_inv = 0.0;
    std::vector<double> sq;
    for (double r : {1.0, 2.0, 4.0}) {
        const auto fr = BallFamily::dyadic(g, r, 2);
        const auto rs = ap_constant(sqrtw, 2.0, fr);
        CHECK(rs.constant >= 1.0);
        sq.push_back(rs.constant);
        const double inv = ap_constant(invsq, 2.0, fr).constant;
        CHECK(inv > prev_inv);
        prev_inv = inv;
    }
    CHECK(sq[1] == doctest::Approx(sq[0]).epsilon(0.10));
    CHECK(sq[2] == doctest::Approx(sq[1]).epsilon(0.10));

    const auto a1 = SampledFunction::sample(g, [](std::span<const double> x) { return std::pow(1.0 + std::abs(x[0]), -0.5); });
    const auto rep = apq_constant(a1, 1.5, 3.0, fam);
    CHECK(std::isfinite(rep.constant));
    CHECK(apq_constant(7.0 * a1, 1.5, 3.0, fam).constant == doctest::Approx(rep.constant).epsilon(1e-12));
    CHECK(ap_constant(a1, 1.0, fam).a1_constant < 2.5);

    const auto bad = SampledFunction::sample(g, [](std::span<const double> x) { return x[0]; });
    try {
        ap_constant(bad, 2.0, fam);
        FAIL("expected domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
}
