#pragma once

#include "herzkit/anisotropy.hpp"
#include "herzkit/sampled_function.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace herzkit {

using BuiltinParams = std::map<std::string, double>;

// gauss      amp e^{-|x|^2 / (2 sigma^2)}
// box        amp chi_{[-r,r]^n}, boundary nodes weighted 1/2 per axis
// annulus    amp chi_{inner <= |x|_a < outer}
// log        amp ln|x|, origin cell replaced by its ball average ln(h/2) - 1/n
// power      amp |x|^gamma, origin by its ball average when gamma > -n, else (h/2)^gamma
// mexhat     amp (n - |y|^2) e^{-|y|^2/2}, y = x / sigma
SampledFunction builtin_function(const std::string& name, const Grid& grid, const BuiltinParams& params = {},
                                 const AnisotropyVector* a = nullptr);

std::vector<std::string> builtin_names();

// Nonnegative sums of 1-3 bumps (1 - |x - c|^2 / w^2)_+^2 with widths in [min_width, 4 min_width]
// and centers inside the inner half of the grid; deterministic in the seed.
std::vector<SampledFunction> random_bump_battery(const Grid& grid, std::size_t count, std::uint64_t seed,
                                                 double min_width);

}  // namespace herzkit
