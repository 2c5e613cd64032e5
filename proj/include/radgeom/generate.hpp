// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "radgeom/body.hpp"

namespace radgeom {

struct GenParams {
    double kappa = 0.0;
    int dim = 2;
    int balls_min = 2;
    int balls_max = 4;
    double radius_min = 0.3;
    double radius_max = 1.0;
    double target_A = 1.0;  // radii must stay within (0, model_radius(kappa, target_A)]
    int max_attempts = 64;
};

/// Seeded random body: ball centers are drawn around a common witness
/// point at distance < 0.9 radius each, so the intersection always has
/// interior; construction still certifies it. Radius ranges outside
/// (0, model_radius(kappa, target_A)] are rejected with
/// std::invalid_argument.
Body generate_body(const GenParams& params, std::uint64_t seed);

}  // namespace radgeom
