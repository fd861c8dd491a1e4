#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heishom/model.hpp"

namespace heishom {

/// Cubic lattice [-R, R]^3 with spacing h and the origin as a node.
/// Internal storage is y3-fastest; the serialized layout is y1-fastest.
struct Grid3 {
    double h = 0.125;
    int half = 64; // nodes per semi-axis; nodes_per_axis = 2*half + 1

    static Grid3 make(double radius, double spacing, std::int64_t node_cap = 1 << 26);

    int n() const { return 2 * half + 1; }
    double radius() const { return half * h; }
    int center() const { return half; }
    std::int64_t size() const {
        const std::int64_t m = n();
        return m * m * m;
    }
    double coord(int idx) const { return (idx - half) * h; }
    std::int64_t index(int i, int j, int k) const {
        const std::int64_t m = n();
        return k + m * (j + m * static_cast<std::int64_t>(i));
    }
    bool operator==(const Grid3& o) const { return h == o.h && half == o.half; }
};

struct GridFunction {
    Grid3 grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const Grid3& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.size()), fill) {}

    double& at(int i, int j, int k) { return values[static_cast<std::size_t>(grid.index(i, j, k))]; }
    double at(int i, int j, int k) const {
        return values[static_cast<std::size_t>(grid.index(i, j, k))];
    }
    double at_origin() const { return at(grid.center(), grid.center(), grid.center()); }

    double max_abs() const;
    /// Largest |v| over nodes with |y|_inf <= radius.
    double max_abs_within(double radius) const;
};

/// Sample a callable on the grid.
template <typename F>
GridFunction sample_on_grid(const Grid3& g, F&& f) {
    GridFunction out(g);
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            for (int k = 0; k < g.n(); ++k)
                out.at(i, j, k) = f(FastState{g.coord(i), g.coord(j), g.coord(k)});
    return out;
}

/// Binary format: header (R, h as 64-bit floats, nodes_per_axis as int64)
/// followed by the values as 64-bit floats in y1-fastest order.
void save_grid_function(const std::string& path, const GridFunction& gf);
GridFunction load_grid_function(const std::string& path);

} // namespace heishom
