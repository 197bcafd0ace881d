#include "herzkit/builtins.hpp"
#include "herzkit/errors.hpp"
#include "herzkit/singular.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace herzkit;

namespace {

// Plain O(N^2) sum over every off-diagonal node.
SampledFunction direct_sum(const StandardKernel& k, const SampledFunction& f)
{
    const Grid& g = f.grid();
    const auto w = g.quadrature_weights();
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j)
            if (i != j)
                out[i] += k(g.point(i), g.point(j)) * w[j] * f[j];
    return SampledFunction(g, out);
}

}  // namespace

TEST_CASE("fractional integral")
{
    const Grid g({1025}, {4.0});
    CHECK(fractional_integral(SampledFunction::zeros(g), 0.5).is_zero());
    const auto box = builtin_function("box", g);
    const auto at0 = fractional_integral(box, 0.5)[g.center_index()];
    CHECK(at0 == doctest::Approx(4.0).epsilon(0.01));

    const auto f = builtin_function("gauss", g);
    const auto h = builtin_function("mexhat", g);
    const auto lhs = fractional_integral(f + h, 0.3);
    const auto rhs = fractional_integral(f, 0.3) + fractional_integral(h, 0.3);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));

    // Radial Gaussian in the plane: I_alpha e^{-|y|^2}(0) = pi Gamma(alpha / 2).
    const Grid g2({129, 129}, {5.0, 5.0});
    const auto gauss2 = SampledFunction::sample(g2, [](std::span<const double> x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); });
    CHECK(fractional_integral(gauss2, 1.0)[g2.center_index()] ==
          doctest::Approx(std::numbers::pi * std::tgamma(0.5)).epsilon(0.01));
    CHECK_THROWS_AS(fractional_integral(f, 1.0), Error);
}

TEST_CASE("kernel validation")
{
    auto hil = StandardKernel::hilbert();
    CHECK(hil.is_validated());
    CHECK(hil.size_constant() == doctest::Approx(4.5 / std::numbers::pi));
    auto tight = hil.with_constant(1.0 / std::numbers::pi);
    const auto r = tight.validate();
    CHECK(r.size_ok);
    CHECK_FALSE(r.regularity_ok);
    CHECK(r.regularity_ratio > 1.0);
    CHECK_FALSE(tight.is_validated());

    const Grid g({65}, {2.0});
    const auto f = builtin_function("gauss", g);
    try {
        cz_apply(tight, f);
        FAIL("expected precondition error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
    }
}

TEST_CASE("hilbert transform")
{
    const auto hil = StandardKernel::hilbert();
    const Grid g({1025}, {8.0});
    CHECK(cz_apply(hil, SampledFunction::zeros(g)).is_zero());
    const auto even = builtin_function("gauss", g);
    CHECK(std::abs(cz_apply(hil, even)[g.center_index()]) <= 1e-15);

    const auto box = builtin_function("box", g);
    const auto hb = cz_apply(hil, box);
    const double h = g.spacing(0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.point(i)[0];
        if (std::abs(std::abs(x) - 1.0) < 5.0 * h - 1e-12)
            continue;
        const double exact = std::log(std::abs((x + 1.0) / (x - 1.0))) / std::numbers::pi;
        CHECK(std::abs(hb[i] - exact) <= 0.02 * std::abs(exact) + 1e-12);
    }

    const Grid small({129}, {4.0});
    const auto f = builtin_function("mexhat", small) + 0.3 * builtin_function("box", small, {{"r", 0.5}});
    const auto fast = cz_apply(hil, f);
    const auto slow = direct_sum(hil, f);
    for (std::size_t i = 0; i < small.size(); ++i)
        CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("commutators")
{
    const Grid g({257}, {4.0});
    const auto hil = OperatorHandle(StandardKernel::hilbert());
    const auto f = SampledFunction::sample(g, [](std::span<const double> x) { return (x[0] >= 0.0 && x[0] <= 1.0) ? 1.0 : 0.0; });
    const auto c = SampledFunction::sample(g, [](std::span<const double>) { return 3.0; });
    const auto zero = commutator_apply(c, hil, f);
    const double scale = cz_apply(StandardKernel::hilbert(), f).max_abs() * 3.0;
    CHECK(zero.max_abs() <= 1e-14 * scale);
    const auto fi = OperatorHandle(FractionalIntegralOperator{0.5});
    CHECK(commutator_apply(c, fi, f).max_abs() <= 1e-14 * 3.0 * fractional_integral(f, 0.5).max_abs());

    const auto b = builtin_function("log", g);
    const auto g2 = builtin_function("gauss", g);
    const auto lhs = commutator_apply(b, hil, f + g2);
    const auto rhs = commutator_apply(b, hil, f) + commutator_apply(b, hil, g2);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-10).scale(1.0));

    const auto direct = b * direct_sum(StandardKernel::hilbert(), f) - direct_sum(StandardKernel::hilbert(), b * f);
    const auto com = commutator_apply(b, hil, f);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(com[i] == doctest::Approx(direct[i]).epsilon(1e-10).scale(1.0));
    CHECK(hil.name() == "cz:hilbert");
}
