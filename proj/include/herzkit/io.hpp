#pragma once

#include "herzkit/sampled_function.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace herzkit {

using Json = nlohmann::ordered_json;

// Rows x1,...,xn,value in any order; the grid is recovered from the coordinates.
SampledFunction read_csv(const std::filesystem::path& path);
std::string to_csv(const SampledFunction& f);

// {"grid": {"dim", "half_width", "points_per_axis"}, "values", "label"}
Json to_json(const SampledFunction& f);
SampledFunction function_from_json(const Json& j);
Json grid_to_json(const Grid& g);

// Dispatch on extension: .csv or .json.
SampledFunction read_function(const std::filesystem::path& path);

// Writes through a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Shortest text that reads back to the same double; JSON-safe spelling for inf.
Json number_json(double x);

}  // namespace herzkit
