#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace parasol {

/// Nodal values over the interior grid points of a domain.  Homogeneous
/// Dirichlet boundary values are implicit and never stored.
using Field = std::vector<double>;

/// Uniform box grid in one or two space dimensions with homogeneous
/// Dirichlet boundaries.  Interior nodes along each axis sit at
/// x_i = (i+1)h, i = 0..N-1, with mesh width h = extent/(N+1).
struct DomainSpec {
    int dimension = 1;
    std::array<double, 2> extent{1.0, 1.0};
    std::array<int, 2> points{1, 1};  // interior points per axis

    static DomainSpec line(double length, int n) {
        DomainSpec s;
        s.dimension = 1;
        s.extent = {length, 1.0};
        s.points = {n, 1};
        s.validate();
        return s;
    }

    static DomainSpec box(double lx, double ly, int nx, int ny) {
        DomainSpec s;
        s.dimension = 2;
        s.extent = {lx, ly};
        s.points = {nx, ny};
        s.validate();
        return s;
    }

    double mesh_width(int axis) const {
        return extent[static_cast<std::size_t>(axis)] /
               (points[static_cast<std::size_t>(axis)] + 1);
    }

    std::size_t node_count() const {
        std::size_t n = static_cast<std::size_t>(points[0]);
        if (dimension == 2) n *= static_cast<std::size_t>(points[1]);
        return n;
    }

    /// Coordinate of interior node `node` (lexicographic, x fastest) along `axis`.
    double coordinate(std::size_t node, int axis) const {
        if (dimension == 1) return (static_cast<double>(node) + 1.0) * mesh_width(0);
        const std::size_t nx = static_cast<std::size_t>(points[0]);
        const std::size_t i = node % nx;
        const std::size_t j = node / nx;
        const std::size_t k = (axis == 0) ? i : j;
        return (static_cast<double>(k) + 1.0) * mesh_width(axis);
    }

    void validate() const {
        if (dimension != 1 && dimension != 2)
            throw std::invalid_argument("DomainSpec: dimension must be 1 or 2");
        for (int a = 0; a < dimension; ++a) {
            if (points[static_cast<std::size_t>(a)] < 1)
                throw std::invalid_argument("DomainSpec: need at least one interior point per axis");
            if (!(extent[static_cast<std::size_t>(a)] > 0.0))
                throw std::invalid_argument("DomainSpec: extent must be positive");
        }
    }

    bool operator==(const DomainSpec&) const = default;
};

inline Field constant_field(const DomainSpec& spec, double value) {
    return Field(spec.node_count(), value);
}

inline double sup_norm(const Field& f) {
    double s = 0.0;
    for (double x : f) s = std::max(s, std::abs(x));
    return s;
}

inline double min_value(const Field& f) {
    double s = f.empty() ? 0.0 : f.front();
    for (double x : f) s = std::min(s, x);
    return s;
}

inline bool strictly_positive(const Field& f) {
    return std::all_of(f.begin(), f.end(), [](double x) { return x > 0.0; });
}

/// Nodewise power; the workhorse behind every u^{m-1}, u^p, ... term.
inline Field pow_field(const Field& f, double e) {
    Field out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::pow(f[i], e);
    return out;
}

inline double sup_diff(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

}  // namespace parasol
