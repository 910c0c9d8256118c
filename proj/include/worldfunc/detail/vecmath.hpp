#pragma once

// Chart-coordinate helpers shared by the samplers. These use the Euclidean
// structure of the background chart and never stand in for sigma.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace worldfunc::detail {

inline double dot(std::span<const double> a, std::span<const double> b)
{
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm(std::span<const double> a)
{
    return std::sqrt(dot(a, a));
}

inline std::vector<double> sub(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

/// a + t * b
inline std::vector<double> axpy(std::span<const double> a, double t, std::span<const double> b)
{
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + t * b[i];
    }
    return out;
}

inline double chart_distance(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Orthonormal basis of the complement of the unit vector u, built by
/// Gram-Schmidt over the coordinate axes taken in order of increasing
/// alignment with u.
inline std::vector<std::vector<double>> orthonormal_complement(std::span<const double> u)
{
    const std::size_t n = u.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return std::abs(u[i]) < std::abs(u[j]); });
    std::vector<std::vector<double>> basis;
    basis.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t axis : order) {
        if (basis.size() + 1 >= n) {
            break;
        }
        std::vector<double> v(n, 0.0);
        v[axis] = 1.0;
        const double pu = dot(v, u);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] -= pu * u[i];
        }
        for (const auto& b : basis) {
            const double pb = dot(v, b);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] -= pb * b[i];
            }
        }
        const double len = norm(v);
        if (len < 1e-8) {
            continue;
        }
        for (double& c : v) {
            c /= len;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace worldfunc::detail
