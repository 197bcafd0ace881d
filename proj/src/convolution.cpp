#include "convolution.hpp"

#include "herzkit/parallel.hpp"

namespace herzkit::detail {

OffsetTable make_offset_table(const Grid& grid,
                              const std::function<double(std::span<const double>, std::span<const int>)>& g)
{
    const std::size_t n = grid.dim();
    OffsetTable t;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        t.strides.push_back(total);
        total *= static_cast<std::size_t>(2 * grid.points(i) - 1);
    }
    t.values.resize(total);
    std::vector<int> d(n);
    std::vector<double> x(n);
    for (std::size_t f = 0; f < total; ++f) {
        std::size_t rem = f;
        for (std::size_t i = 0; i < n; ++i) {
            const int len = 2 * grid.points(i) - 1;
            d[i] = static_cast<int>(rem % static_cast<std::size_t>(len)) - (grid.points(i) - 1);
            rem /= static_cast<std::size_t>(len);
            x[i] = d[i] * grid.spacing(i);
        }
        t.values[f] = g(x, d);
    }
    return t;
}

std::vector<double> convolve(const Grid& grid, const OffsetTable& table, std::span<const double> v)
{
    const std::size_t n = grid.dim();
    const std::size_t size = grid.size();
    std::vector<std::size_t> jc(size);
    std::vector<std::size_t> nz;
    std::vector<int> idx(n);
    for (std::size_t j = 0; j < size; ++j) {
        grid.multi_index(j, idx);
        std::size_t c = 0;
        for (std::size_t a = 0; a < n; ++a)
            c += static_cast<std::size_t>(idx[a]) * table.strides[a];
        jc[j] = c;
        if (v[j] != 0.0)
            nz.push_back(j);
    }
    std::vector<double> out(size, 0.0);
    parallel_for(size, [&](std::size_t begin, std::size_t end) {
        std::vector<int> ii(n);
        for (std::size_t i = begin; i < end; ++i) {
            grid.multi_index(i, ii);
            std::size_t base = 0;
            for (std::size_t a = 0; a < n; ++a)
                base += static_cast<std::size_t>(ii[a] + grid.points(a) - 1) * table.strides[a];
            double acc = 0.0;
            for (std::size_t j : nz)
                acc += table.values[base - jc[j]] * v[j];
            out[i] = acc;
        }
    });
    return out;
}

std::vector<double> convolve_axis(const Grid& grid, std::size_t axis, std::span<const double> kernel,
                                  std::span<const double> v)
{
    const std::size_t n_axis = static_cast<std::size_t>(grid.points(axis));
    const std::size_t stride = grid.stride(axis);
    const std::size_t size = grid.size();
    const std::size_t outer = size / (n_axis * stride);
    std::vector<double> out(size, 0.0);
    const std::size_t lines = outer * stride;
    parallel_for(lines, [&](std::size_t begin, std::size_t end) {
        std::vector<double> line(n_axis);
        for (std::size_t l = begin; l < end; ++l) {
            const std::size_t o = l / stride;
            const std::size_t s = l % stride;
            const std::size_t base = o * n_axis * stride + s;
            bool any = false;
            for (std::size_t j = 0; j < n_axis; ++j) {
                line[j] = v[base + j * stride];
                any = any || line[j] != 0.0;
            }
            if (!any)
                continue;
            for (std::size_t i = 0; i < n_axis; ++i) {
                double acc = 0.0;
                const double* k = kernel.data() + (i + n_axis - 1);
                for (std::size_t j = 0; j < n_axis; ++j)
                    acc += k[-static_cast<std::ptrdiff_t>(j)] * line[j];
                out[base + i * stride] = acc;
            }
        }
    });
    return out;
}

}  // namespace herzkit::detail
