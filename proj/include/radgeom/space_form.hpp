// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace radgeom {

using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;

/// Ambient model geometry: flat R^n (kappa = 0) or the round unit sphere
/// S^n embedded in R^{n+1} (kappa = 1). Spherical lengths are radians.
struct SpaceForm {
    double kappa;
    int dim;

    SpaceForm(double kappa_, int dim_);

    /// Number of coordinates a Point carries (n, or n+1 on the sphere).
    int ambient_dim() const { return kappa > 0.0 ? dim + 1 : dim; }
};

/// Throws std::invalid_argument unless p is a valid point of sf
/// (coordinate count matches; unit norm to 1e-12 when kappa = 1).
void validate_point(const SpaceForm& sf, const Point& p);

/// Geodesic distance. Nonnegative and symmetric; lies in [0, pi] on the
/// sphere, where it is arccos of the clamped inner product.
double distance(const SpaceForm& sf, const Point& p, const Point& q);

/// Point reached by the unit-speed geodesic from base in direction dir
/// after arc length t >= 0. dir must be unit length, and tangent to the
/// sphere at base (orthogonal to it) when kappa = 1.
Point geodesic_point(const SpaceForm& sf, const Point& base, const Vector& dir, double t);

/// Unit tangent at `from` pointing along the minimizing geodesic toward
/// `to`. Throws when the direction is undefined (coincident points, or
/// antipodal points on the sphere).
Vector log_direction(const SpaceForm& sf, const Point& from, const Point& to);

/// True when log_direction(sf, from, to) is well conditioned. Guards
/// must use this rather than a threshold on distance(): near 0 and pi
/// the spherical distance is acos of a rounded dot product and cannot
/// resolve separations below ~1e-8, while the chord norms tested here
/// keep full absolute precision at any scale.
bool log_direction_defined(const SpaceForm& sf, const Point& from, const Point& to);

/// Modified distance function: (1 - cos(sqrt(kappa) t))/kappa for
/// kappa > 0 and its limit t^2/2 at kappa = 0.
double md(double kappa, double t);
double md(const SpaceForm& sf, double t);

/// Radius of the circle with geodesic curvature A in the 2-dimensional
/// model of curvature kappa: 1/A for kappa = 0 (A > 0 required, flat
/// space has no bounded domain at A = 0), arccot(A) in (0, pi/2] for
/// kappa = 1.
double model_radius(double kappa, double A);
double model_radius(const SpaceForm& sf, double A);

}  // namespace radgeom
