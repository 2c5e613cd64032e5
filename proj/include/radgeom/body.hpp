// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "radgeom/space_form.hpp"

namespace radgeom {

namespace tol {
inline constexpr double membership = 1e-12;           // contains() slack
inline constexpr double boundary_projection = 1e-9;   // |rho| at boundary samples
inline constexpr double chord_floor = 1e-4;           // smallest usable chord length
}  // namespace tol

struct Ball {
    Point center;
    double radius = 0.0;
};

/// Convex body realized as a nonempty intersection of closed metric
/// balls. Construction validates every ball (radius > 0, and < pi/2 on
/// the sphere so each ball is convex) and certifies that the
/// intersection has nonempty interior by running the inner-radius
/// solver; candidates whose maximum depth is not positive are rejected.
class Body {
  public:
    Body(SpaceForm sf, std::vector<Ball> balls);

    const SpaceForm& space() const { return sf_; }
    const std::vector<Ball>& balls() const { return balls_; }

    /// Interior point exhibited by the certification solve, with its depth.
    const Point& interior_witness() const { return witness_; }
    double witness_depth() const { return witness_depth_; }

  private:
    SpaceForm sf_;
    std::vector<Ball> balls_;
    Point witness_;
    double witness_depth_ = 0.0;
};

/// Signed depth min_i (r_i - |x, c_i|): positive inside, zero on the
/// boundary, negative outside. Concave along geodesics through the body.
double rho(const Body& body, const Point& x);

bool contains(const Body& body, const Point& x, double tolerance = tol::membership);

struct BoundarySample {
    Point point;
    int owner = 0;         // ball whose sphere carries the sample
    Vector inward_normal;  // unit tangent at point toward the owner's center
};

/// Rejection sampling on each ball's sphere, keeping points inside all
/// other balls, with per-sphere counts proportional to estimated patch
/// area. Deterministic for a fixed seed (independent stream per sphere).
std::vector<BoundarySample> sample_boundary(const Body& body, int target_count,
                                            std::uint64_t seed);

/// Certified lower bound for the boundary base angle: min_i 1/r_i when
/// kappa = 0, min_i cot(r_i) when kappa = 1. Each boundary point lies on
/// a sphere whose principal curvatures meet this bound, and corners only
/// sharpen it.
double base_angle_lower_bound(const Body& body);

struct BaseAngleEstimate {
    // one (chord length r, min over directions of 2*alpha/r) pair per requested length
    std::vector<std::pair<double, double>> ratios;
    bool corner = false;  // sample lies on several spheres; estimate uses the owner sheet
};

/// Chord-based base angle estimate at a boundary sample: for each chord
/// length r (a decreasing list, each >= tol::chord_floor and short enough
/// that endpoints exist), walk chords of length r along the owner sphere
/// in sampled tangent directions, keep those whose endpoint stays on the
/// boundary, and record the smallest 2*alpha/r where alpha is the angle
/// between the chord and the boundary tangent plane.
BaseAngleEstimate base_angle_estimate(const Body& body, const BoundarySample& at,
                                      const std::vector<double>& chord_lengths,
                                      int directions = 16, std::uint64_t seed = 0);

/// Flat three-ball body in R^3 with inner radius a and a cut tip: balls
/// of radius 1/A centered at (1/A - a, 0, 0), -(1/A - a, 0, 0) and
/// (0, sqrt(2a/A - a^2) - eps - 1/A, 0).
/// Requires A > 0, 0 < a < 1/A and 0 < eps < sqrt(2a/A - a^2) - a.
Body make_cutthetip(double A, double a, double eps);

}  // namespace radgeom
