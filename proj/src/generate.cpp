// SPDX-License-Identifier: Apache-2.0
#include "radgeom/generate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rng_util.hpp"

namespace radgeom {

Body generate_body(const GenParams& params, std::uint64_t seed) {
    if (params.kappa != 0.0 && params.kappa != 1.0)
        throw std::invalid_argument("generate_body: kappa must be 0 or 1");
    if (params.dim < 1) throw std::invalid_argument("generate_body: dim must be positive");
    if (params.balls_min < 1 || params.balls_max < params.balls_min)
        throw std::invalid_argument("generate_body: bad ball count range");
    if (!(params.radius_min > 0.0) || params.radius_max < params.radius_min)
        throw std::invalid_argument("generate_body: bad radius range");
    double r_cap = model_radius(params.kappa, params.target_A);
    if (params.radius_max > r_cap * (1.0 + 1e-12))
        throw std::invalid_argument(
            "generate_body: radius_max exceeds the model radius for target_A");
    if (params.max_attempts < 1)
        throw std::invalid_argument("generate_body: max_attempts must be positive");

    SpaceForm sf(params.kappa, params.dim);
    auto rng = detail::stream(seed, 0x6e4b0dULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> count(params.balls_min, params.balls_max);

    // witness anchor: origin for the plane, a random pole direction for
    // the sphere (fixed first axis keeps outputs reproducible)
    Point witness;
    if (params.kappa == 0.0) {
        witness = Point::Zero(sf.ambient_dim());
    } else {
        witness = detail::unit_vector(sf.ambient_dim(), rng);
    }

    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        int n_balls = count(rng);
        std::vector<Ball> balls;
        balls.reserve(static_cast<std::size_t>(n_balls));
        for (int i = 0; i < n_balls; ++i) {
            Ball b;
            b.radius = params.radius_min + (params.radius_max - params.radius_min) * unif(rng);
            // sphere caps must stay strictly convex
            if (params.kappa == 1.0)
                b.radius = std::min(b.radius, std::numbers::pi / 2.0 - 1e-9);
            double off = 0.9 * b.radius * unif(rng);
            if (params.kappa == 0.0) {
                b.center = witness + off * detail::unit_vector(sf.ambient_dim(), rng);
            } else {
                b.center = geodesic_point(sf, witness, detail::unit_tangent(witness, rng), off);
            }
            balls.push_back(std::move(b));
        }
        try {
            return Body(sf, std::move(balls));
        } catch (const std::invalid_argument&) {
            // witness is inside every ball, so this should not trigger;
            // retry defensively in case certification stalls
        }
    }
    throw std::runtime_error("generate_body: no certified body within max_attempts");
}

}  // namespace radgeom
