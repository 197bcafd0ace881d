#include "herzkit/io.hpp"

#include "herzkit/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

namespace herzkit {

namespace {

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_double(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorKind::parse, "not a number: '" + std::string(s) + "'");
    return x;
}

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

SampledFunction read_csv(const std::filesystem::path& path)
{
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line))
        fail(ErrorKind::parse, "empty csv " + path.string());
    const std::size_t cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (cols < 2)
        fail(ErrorKind::parse, "csv needs coordinate and value columns");
    const std::size_t n = cols - 1;

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        std::vector<double> row;
        std::string_view rest(line);
        for (std::size_t c = 0; c < cols; ++c) {
            const auto comma = rest.find(',');
            if ((comma == std::string_view::npos) != (c + 1 == cols))
                fail(ErrorKind::parse, "csv row has the wrong column count: " + line);
            row.push_back(parse_double(rest.substr(0, comma)));
            if (comma != std::string_view::npos)
                rest.remove_prefix(comma + 1);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        fail(ErrorKind::parse, "csv has no data rows");

    std::vector<int> points(n);
    std::vector<double> half(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lo = rows[0][i], hi = rows[0][i];
        for (const auto& r : rows) {
            lo = std::min(lo, r[i]);
            hi = std::max(hi, r[i]);
        }
        if (std::abs(lo + hi) > 1e-9 * std::max(1.0, hi))
            fail(ErrorKind::parse, "csv coordinates are not symmetric about 0");
        std::vector<double> c;
        for (const auto& r : rows)
            c.push_back(r[i]);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end(), [&](double x, double y) { return std::abs(x - y) <= 1e-9 * hi; }),
                c.end());
        points[i] = static_cast<int>(c.size());
        half[i] = hi;
    }
    Grid grid(points, half);
    if (rows.size() != grid.size())
        fail(ErrorKind::parse, "csv does not cover the full tensor grid");
    std::vector<double> values(grid.size(), std::nan(""));
    std::vector<int> idx(n);
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < n; ++i) {
            const double pos = (r[i] + half[i]) / grid.spacing(i);
            idx[i] = static_cast<int>(std::lround(pos));
            if (std::abs(pos - idx[i]) > 1e-6)
                fail(ErrorKind::parse, "csv coordinates are not on a uniform grid");
        }
        values[grid.flat_index(idx)] = r[n];
    }
    for (double v : values)
        if (std::isnan(v))
            fail(ErrorKind::parse, "csv has duplicate or missing grid nodes");
    return SampledFunction(grid, std::move(values), path.stem().string());
}

std::string to_csv(const SampledFunction& f)
{
    const Grid& g = f.grid();
    std::string out;
    for (std::size_t i = 0; i < g.dim(); ++i)
        out += "x" + std::to_string(i + 1) + ",";
    out += "value\n";
    std::vector<double> x(g.dim());
    for (std::size_t j = 0; j < f.size(); ++j) {
        g.coordinates(j, x);
        for (double c : x)
            out += format_double(c) + ",";
        out += format_double(f[j]) + "\n";
    }
    return out;
}

Json number_json(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (std::isnan(x))
        return "nan";
    return x;
}

Json grid_to_json(const Grid& g)
{
    Json j;
    j["dim"] = g.dim();
    j["half_width"] = std::vector<double>(g.half_widths().begin(), g.half_widths().end());
    j["points_per_axis"] = std::vector<int>(g.points_per_axis().begin(), g.points_per_axis().end());
    return j;
}

Json to_json(const SampledFunction& f)
{
    Json j;
    j["grid"] = grid_to_json(f.grid());
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    j["label"] = f.label();
    return j;
}

SampledFunction function_from_json(const Json& j)
{
    try {
        const auto& g = j.at("grid");
        auto half = g.at("half_width").get<std::vector<double>>();
        auto points = g.at("points_per_axis").get<std::vector<int>>();
        if (g.contains("dim") && g.at("dim").get<std::size_t>() != points.size())
            fail(ErrorKind::parse, "grid dim disagrees with points_per_axis");
        if (half.size() == 1 && points.size() > 1)
            half.assign(points.size(), half[0]);
        auto values = j.at("values").get<std::vector<double>>();
        std::string label = j.value("label", std::string{});
        return SampledFunction(Grid(std::move(points), std::move(half)), std::move(values), std::move(label));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("malformed function json: ") + e.what());
    }
}

SampledFunction read_function(const std::filesystem::path& path)
{
    const auto ext = path.extension().string();
    if (ext == ".csv")
        return read_csv(path);
    if (ext == ".json") {
        Json j;
        try {
            j = Json::parse(read_text(path));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::parse, std::string("invalid json: ") + e.what());
        }
        if (j.contains("function"))
            return function_from_json(j.at("function"));
        return function_from_json(j);
    }
    fail(ErrorKind::parse, "unknown input extension '" + ext + "'");
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorKind::io, "cannot write " + tmp.string());
        out << content;
        if (!out.flush())
            fail(ErrorKind::io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        fail(ErrorKind::io, "cannot move report into place: " + ec.message());
}

}  // namespace herzkit
