// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "radgeom/space_form.hpp"

namespace radgeom::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent, stateless stream: the generator state depends only on
/// (seed, salt), never on call order.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t salt) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(salt)));
}

inline Vector gaussian_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal(rng);
    return v;
}

inline Vector unit_vector(int dim, std::mt19937_64& rng) {
    for (;;) {
        Vector v = gaussian_vector(dim, rng);
        double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

/// Uniform unit tangent at a sphere point (orthogonal to base).
inline Vector unit_tangent(const Point& base, std::mt19937_64& rng) {
    for (;;) {
        Vector v = gaussian_vector(static_cast<int>(base.size()), rng);
        v -= v.dot(base) * base;
        double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

}  // namespace radgeom::detail
