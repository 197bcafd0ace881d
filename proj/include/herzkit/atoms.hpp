#pragma once

#include "herzkit/hardy.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace herzkit {

// floor((v/a-)(alpha + (1/v) sum a_i/q_i - 1)), clamped at 0.
int minimal_moment_order(double alpha, const ExponentVector& q, const AnisotropyVector& a);

// Multi-indices beta with |beta| <= s, graded order.
std::vector<std::vector<int>> multi_indices_up_to(std::size_t n, int s);
// int f x^beta for each beta of multi_indices_up_to(n, s).
std::vector<double> moments(const SampledFunction& f, int s);

struct AtomSpec {
    double alpha = 0.0;
    ExponentVector q;
    int s = 0;
    int k = 0;
    bool restricted = false;
};

struct AtomReport {
    bool support_ok = false;
    bool size_ok = false;
    bool moments_ok = false;
    double norm = 0.0;
    double bound = 0.0;
    // norm / bound
    double size_ratio = 0.0;
    // Nodes with nonzero value outside the closed ball.
    std::size_t support_violations = 0;
    // max_beta |int fn x^beta| / moment_tol(beta)
    double moment_ratio = 0.0;

    bool passed() const { return support_ok && size_ok && moments_ok; }
};

inline constexpr double default_size_tol = 1e-9;
inline constexpr double moment_tol_factor = 1e-9;

AtomReport atom_check(const SampledFunction& fn, const AtomSpec& spec, const AnisotropyVector& a,
                      double size_tol = default_size_tol);

struct MoleculeSpec {
    double alpha = 0.0;
    ExponentVector q;
    int s = 0;
    double epsilon = 0.0;
    double a_exp = 0.0;
    double d_exp = 0.0;
    std::optional<int> l;

    // Computes a_exp and d_exp and checks the invariants.
    static MoleculeSpec make(double alpha, const ExponentVector& q, int s, double epsilon,
                             const AnisotropyVector& a, std::optional<int> l = std::nullopt);
};

struct MoleculeReport {
    double R = 0.0;
    double norm = 0.0;
    // || |x|_a^{v d} fn ||_q
    double weighted_norm = 0.0;
    bool moments_ok = false;
    double moment_ratio = 0.0;
    std::optional<bool> dyadic_size_ok;

    bool passed() const { return std::isfinite(R) && moments_ok && dyadic_size_ok.value_or(true); }
};

MoleculeReport molecule_check(const SampledFunction& fn, const MoleculeSpec& spec, const AnisotropyVector& a);

// Random smooth atom on B_k: polynomial times cosine on the (1 - u^2)^3 bump, moments up to
// spec.s removed, scaled to ||a||_q = fill |B_k|^{-alpha}.
SampledFunction random_atom(const Grid& grid, const AtomSpec& spec, const AnisotropyVector& a,
                            std::uint64_t seed, double fill = 1.0);

// Subtracts sum_beta c_beta x^beta carrier so that moments up to s vanish.
SampledFunction remove_moments(const SampledFunction& g, int s, const SampledFunction& carrier);

struct AtomicPiece {
    int ball_index = 0;
    double lambda = 0.0;
    SampledFunction atom;
};

struct AtomicDecomposition {
    explicit AtomicDecomposition(SampledFunction rem) : remainder(std::move(rem)) {}

    std::string kind;
    double p = 1.0;
    std::vector<AtomicPiece> family1;
    std::vector<AtomicPiece> family2;
    // Measured normalising constants of the two families.
    double c1 = 0.0;
    double c2 = 0.0;
    double lambda_sum1 = 0.0;  // sum |lambda_{1,k}|^p
    double lambda_sum2 = 0.0;
    // f - sum lambda a on the grid.
    SampledFunction remainder;
    std::vector<std::string> warnings;
    // Molecule conversion only.
    double r = 0.0;
    int sigma = 0;
    int sigma_radius_reading = 0;
};

SampledFunction synthesize(const AtomicDecomposition& d, bool include_remainder = true);

// Index range 1 - (1/v) sum a_i/q_i <= alpha < (a+ - sum a_i/q_i)/v + 1.
bool atomic_index_in_range(double alpha, const ExponentVector& q, const AnisotropyVector& a);

AtomicDecomposition atomic_decompose(const SampledFunction& f, const HerzParams& params, const SchwartzWindow& w,
                                     double truncation_threshold = default_truncation_threshold);

enum class SigmaReading {
    // 2^{(sigma-1) v} < r <= 2^{sigma v}
    measure_scale,
    // 2^{sigma-1} < r <= 2^sigma
    radius_scale
};

AtomicDecomposition molecule_to_atoms(const SampledFunction& fn, const MoleculeSpec& spec, const AnisotropyVector& a,
                                      double p = 1.0, SigmaReading reading = SigmaReading::measure_scale);

}  // namespace herzkit
