#include "herzkit/annulus.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/mixed_norm.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace herzkit;

namespace {

SampledFunction random_smooth(const Grid& g, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    const double c0 = nd(rng), c1 = nd(rng), c2 = nd(rng), w = 0.5 + std::abs(nd(rng));
    return SampledFunction::sample(g, [=](std::span<const double> x) {
        double r2 = 0.0;
        for (double c : x)
            r2 += c * c;
        return (c0 + c1 * x[0] + c2 * x[x.size() - 1] * x[0]) * std::exp(-w * r2);
    });
}

// Iterated norm written out directly for two axes.
double oracle_2d(const SampledFunction& f, double q1, double q2)
{
    const Grid& g = f.grid();
    const auto w0 = g.axis_weights(0);
    const auto w1 = g.axis_weights(1);
    const int n0 = g.points(0), n1 = g.points(1);
    double outer = 0.0;
    for (int j = 0; j < n1; ++j) {
        double inner = 0.0;
        for (int i = 0; i < n0; ++i)
            inner += w0[i] * std::pow(std::abs(f[static_cast<std::size_t>(j * n0 + i)]), q1);
        outer += w1[j] * std::pow(std::pow(inner, 1.0 / q1), q2);
    }
    return std::pow(outer, 1.0 / q2);
}

}  // namespace

TEST_CASE("exponent vectors")
{
    const ExponentVector q({1.0, 2.0, infinity, 4.0});
    const auto c = q.conjugate();
    CHECK(c[0] == infinity);
    CHECK(c[1] == doctest::Approx(2.0));
    CHECK(c[2] == 1.0);
    CHECK(c[3] == doctest::Approx(4.0 / 3.0));
    CHECK_THROWS_AS(ExponentVector({0.5}).conjugate(), Error);
    CHECK_THROWS_AS(ExponentVector({0.0}), Error);
    CHECK_THROWS_AS(ExponentVector({-1.0}), Error);
    CHECK(q.reciprocal_sum() == doctest::Approx(1.75));
    CHECK(ExponentVector({2.0, 4.0}).weighted_reciprocal_sum(AnisotropyVector({2.0, 1.0})) == doctest::Approx(1.25));
}

TEST_CASE("mixed norm examples")
{
    const Grid g({41, 41}, {2.0, 2.0});
    const Grid fine({801, 801}, {2.0, 2.0});
    const auto unit_box = [](std::span<const double> x) {
        for (double c : x)
            if (c < -1e-12 || c > 1.0 + 1e-12)
                return 0.0;
        return 1.0;
    };
    const auto box = SampledFunction::sample(fine, unit_box);
    CHECK(mixed_lebesgue_norm(box, ExponentVector({2.0, 3.0})) == doctest::Approx(1.0).epsilon(0.01));
    CHECK_THROWS_AS(mixed_lebesgue_norm(box, ExponentVector({2.0})), Error);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        const auto f = random_smooth(g, rng);
        for (double p : {1.0, 2.0, 3.5}) {
            const double classical = std::pow(quadrature_integral(f.abs_pow(p)), 1.0 / p);
            CHECK(mixed_lebesgue_norm(f, ExponentVector::uniform(2, p)) == doctest::Approx(classical).epsilon(1e-12));
        }
        CHECK(mixed_lebesgue_norm(f, ExponentVector({2.0, 3.0})) == doctest::Approx(oracle_2d(f, 2.0, 3.0)).epsilon(1e-12));
        CHECK(mixed_lebesgue_norm(f, ExponentVector({0.5, 1.5})) == doctest::Approx(oracle_2d(f, 0.5, 1.5)).epsilon(1e-12));
    }
}

TEST_CASE("separable factorization and infinite exponents")
{
    const Grid g({65, 33}, {4.0, 3.0});
    const Grid gx({65}, {4.0}), gy({33}, {3.0});
    const auto gfun = [](double x) { return std::exp(-x * x) * (1.0 + 0.3 * x); };
    const auto hfun = [](double y) { return std::cos(y) * std::exp(-0.5 * y * y); };
    const auto f = SampledFunction::sample(g, [&](std::span<const double> x) { return gfun(x[0]) * hfun(x[1]); });
    const auto fg = SampledFunction::sample(gx, [&](std::span<const double> x) { return gfun(x[0]); });
    const auto fh = SampledFunction::sample(gy, [&](std::span<const double> x) { return hfun(x[0]); });
    for (auto [q1, q2] : {std::pair{2.0, 3.0}, {1.0, 4.0}, {infinity, 2.0}, {1.5, infinity}}) {
        const double lhs = mixed_lebesgue_norm(f, ExponentVector({q1, q2}));
        const double rhs = mixed_lebesgue_norm(fg, ExponentVector({q1})) * mixed_lebesgue_norm(fh, ExponentVector({q2}));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    CHECK(mixed_lebesgue_norm(SampledFunction::zeros(g), ExponentVector({infinity, infinity})) == 0.0);
    CHECK(mixed_lebesgue_norm(f, ExponentVector({infinity, infinity})) == doctest::Approx(f.max_abs()));
}

TEST_CASE("norm axioms")
{
    const Grid g({33, 33}, {2.0, 2.0});
    std::mt19937_64 rng(9);
    const ExponentVector q({1.5, 3.0});
    std::size_t tri = 0;
    for (int t = 0; t < 50; ++t) {
        const auto f = random_smooth(g, rng);
        const auto h = random_smooth(g, rng);
        CHECK(mixed_lebesgue_norm(-2.5 * f, q) == doctest::Approx(2.5 * mixed_lebesgue_norm(f, q)).epsilon(1e-14));
        const auto big = f.abs() + h.abs();
        CHECK(mixed_lebesgue_norm(f, q) <= mixed_lebesgue_norm(big, q));
        if (mixed_lebesgue_norm(f + h, q) > (mixed_lebesgue_norm(f, q) + mixed_lebesgue_norm(h, q)) * (1.0 + 1e-13))
            ++tri;
    }
    CHECK(tri == 0);
}

TEST_CASE("holder inequality")
{
    const Grid g1({81}, {2.0});
    const auto chi = SampledFunction::sample(g1, [](std::span<const double> x) {
        if (x[0] < 0.0 || x[0] > 1.0)
            return 0.0;
        return (x[0] == 0.0 || x[0] == 1.0) ? std::sqrt(0.5) : 1.0;
    });
    const auto [l0, r0] = holder_check(chi, SampledFunction::zeros(g1), ExponentVector({2.0}));
    CHECK(l0 == 0.0);
    CHECK(r0 == 0.0);
    const auto [l1, r1] = holder_check(chi, chi, ExponentVector({2.0}));
    CHECK(l1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r1 == doctest::Approx(1.0).epsilon(1e-14));

    const Grid g({41, 41}, {2.0, 2.0});
    std::mt19937_64 rng(21);
    std::size_t violations = 0;
    for (int t = 0; t < 100; ++t) {
        const auto f = random_smooth(g, rng);
        const auto h = random_smooth(g, rng);
        const auto [lhs, rhs] = holder_check(f, h, ExponentVector({3.0, 1.5}));
        if (lhs > rhs * (1.0 + 1e-12))
            ++violations;
    }
    CHECK(violations == 0);
    CHECK_THROWS_AS(holder_check(chi, chi, ExponentVector({0.5})), Error);
}

TEST_CASE("power identity")
{
    const Grid g({49, 49}, {3.0, 3.0});
    const auto gauss = SampledFunction::sample(g, [](std::span<const double> x) { return std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]); });
    for (double s : {1.0, 2.0, 0.7}) {
        const auto [lhs, rhs] = power_identity_check(gauss, ExponentVector({2.0, 3.0}), s);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
    }
    const auto [l1, r1] = power_identity_check(gauss, ExponentVector({2.0, 3.0}), 1.0);
    CHECK(l1 == r1);
    CHECK_THROWS_AS(power_identity_check(gauss, ExponentVector({2.0, 3.0}), 0.0), Error);
}

TEST_CASE("indicator of an anisotropic ball")
{
    // ||chi_{B_a(0,r)}||_q <= 2^{sum 1/q_i} r^{sum a_i/q_i}: the box [-r^{a_i}, r^{a_i}] contains the ball.
    const AnisotropyVector a({2.0, 1.0});
    const Grid g({401, 201}, {5.0, 2.5});
    for (double r : {0.5, 1.0, 1.5}) {
        const auto chi = SampledFunction::sample(g, [&](std::span<const double> x) { return quasi_norm(x, a) < r ? 1.0 : 0.0; });
        for (const auto& qv : {std::vector<double>{1.0, 1.0}, {2.0, 3.0}, {1.5, 4.0}}) {
            const ExponentVector q(qv);
            const double bound = std::pow(2.0, q.reciprocal_sum()) * std::pow(r, q.weighted_reciprocal_sum(a));
            CHECK(mixed_lebesgue_norm(chi, q) <= bound * 1.02);
        }
    }
}
