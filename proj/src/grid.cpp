#include "heishom/grid.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "heishom/errors.hpp"

namespace heishom {

Grid3 Grid3::make(double radius, double spacing, std::int64_t node_cap) {
    if (!(radius > 0.0) || !(spacing > 0.0)) throw ConfigError("grid: radius and spacing must be positive");
    Grid3 g;
    g.h = spacing;
    g.half = static_cast<int>(std::llround(radius / spacing));
    if (g.half < 2) throw ConfigError("grid: fewer than 5 nodes per axis");
    if (g.size() > node_cap) throw ConfigError("grid: node count exceeds memory cap");
    return g;
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::max_abs_within(double radius) const {
    const int lo = grid.center() - static_cast<int>(std::floor(radius / grid.h));
    const int hi = grid.center() + static_cast<int>(std::floor(radius / grid.h));
    double m = 0.0;
    for (int i = lo; i <= hi; ++i)
        for (int j = lo; j <= hi; ++j)
            for (int k = lo; k <= hi; ++k) m = std::max(m, std::abs(at(i, j, k)));
    return m;
}

namespace {
struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;
} // namespace

void save_grid_function(const std::string& path, const GridFunction& gf) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw ConfigError("cannot open for writing: " + path);
    const double R = gf.grid.radius(), h = gf.grid.h;
    const std::int64_t n = gf.grid.n();
    std::fwrite(&R, sizeof R, 1, f.get());
    std::fwrite(&h, sizeof h, 1, f.get());
    std::fwrite(&n, sizeof n, 1, f.get());
    // y1-fastest on disk
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = gf.at(i, j, k);
            if (std::fwrite(row.data(), sizeof(double), row.size(), f.get()) != row.size())
                throw ConfigError("short write: " + path);
        }
}

GridFunction load_grid_function(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw ConfigError("cannot open for reading: " + path);
    double R = 0.0, h = 0.0;
    std::int64_t n = 0;
    if (std::fread(&R, sizeof R, 1, f.get()) != 1 || std::fread(&h, sizeof h, 1, f.get()) != 1 ||
        std::fread(&n, sizeof n, 1, f.get()) != 1)
        throw ConfigError("truncated grid file header: " + path);
    Grid3 g = Grid3::make(R, h);
    if (g.n() != n) throw ConfigError("inconsistent grid file header: " + path);
    GridFunction out(g);
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            if (std::fread(row.data(), sizeof(double), row.size(), f.get()) != row.size())
                throw ConfigError("truncated grid file payload: " + path);
            for (int i = 0; i < n; ++i) out.at(i, j, k) = row[static_cast<std::size_t>(i)];
        }
    return out;
}

} // namespace heishom
