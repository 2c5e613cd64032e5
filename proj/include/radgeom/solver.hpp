// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "radgeom/body.hpp"

namespace radgeom {

struct SolverOptions {
    int restarts = 16;
    int max_iterations = 600;
    double tolerance = 1e-7;
    int boundary_samples = 1024;
    std::uint64_t seed = 0x51ed2701u;
};

struct SoulResult {
    double inner_radius = 0.0;
    Point soul;
    bool converged = false;
    bool unique = true;            // false when equal-value restarts disagree by > 1e-4
    std::vector<int> active_balls; // balls tight at the soul
};

/// Maximum of rho over the intersection of the given balls (the inner
/// radius problem). Projected subgradient ascent with Polyak-style steps
/// from several restarts, a golden-section polish along the final ascent
/// direction, then an active-set Newton refinement of the max-min
/// optimality system. The reported value is always rho re-evaluated at
/// the reported point.
SoulResult max_depth(const SpaceForm& sf, const std::vector<Ball>& balls,
                     const SolverOptions& opts = {});

SoulResult inner_radius(const Body& body, const SolverOptions& opts = {});

struct FarthestPoint {
    double value = 0.0;
    Point point;
};

/// b = Rad_soul(X): the farthest boundary point from the soul. For
/// n <= 3 the patch extrema are enumerated exactly (sphere axis points,
/// pairwise intersection extrema, triple intersection corners); higher
/// dimensions fall back to a stochastic patch search seeded from
/// boundary samples.
FarthestPoint radius_from_soul(const Body& body, const Point& soul,
                               const SolverOptions& opts = {});

struct CenterResult {
    double radius = 0.0;
    Point center;
    bool center_in_body = false;
    bool converged = false;
    int rounds = 0;
};

/// Rad(X): center and radius of the smallest enclosing ball (kappa = 0)
/// or spherical cap (kappa = 1) of the boundary. Exact minimal enclosing
/// balls of boundary samples, then a farthest-point refinement loop that
/// stops once three consecutive rounds move the radius by < 1e-7 or the
/// true farthest boundary point certifies the ball.
CenterResult global_radius(const Body& body, const SolverOptions& opts = {});

/// Maximum distance from the soul over random interior trial points.
/// Must not exceed radius_from_soul beyond small tolerance.
double interior_radius_check(const Body& body, const Point& soul, int trial_count,
                             std::uint64_t seed);

struct EnclosingBall {
    Point center;
    double radius = 0.0;
};

/// Exact smallest enclosing ball of a finite point set (Welzl's
/// move-to-front recursion over a seeded shuffle).
EnclosingBall min_enclosing_ball(const std::vector<Point>& pts, std::uint64_t seed = 1);

struct GeometrySummary {
    double inner_radius = 0.0;  // a
    Point soul;
    double soul_radius = 0.0;   // b, the radius from the soul
    Point soul_witness;
    double radius = 0.0;        // Rad(X)
    Point center;
    double base_angle = 0.0;    // certified lower bound A
    double model_R = 0.0;       // R(kappa, A)
    bool solver_converged = false;
    bool soul_unique = true;
    std::vector<int> active_balls;
};

GeometrySummary summarize(const Body& body, const SolverOptions& opts = {});

}  // namespace radgeom
