// SPDX-License-Identifier: Apache-2.0
#include "radgeom/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "radgeom/solver.hpp"
#include "rng_util.hpp"

namespace radgeom {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp1(double x) { return std::min(1.0, std::max(-1.0, x)); }

/// (n-1)-measure of the owner sphere, up to the constant that cancels in
/// allocation weights: r^{n-1} flat, sin(r)^{n-1} spherical.
double sphere_weight(const SpaceForm& sf, double r, int n) {
    double s = sf.kappa == 0.0 ? r : std::sin(r);
    return std::pow(s, n - 1);
}

Point uniform_sphere_point(const SpaceForm& sf, const Ball& b, std::mt19937_64& rng) {
    if (sf.kappa == 0.0) {
        return b.center + b.radius * detail::unit_vector(static_cast<int>(b.center.size()), rng);
    }
    Vector u = detail::unit_tangent(b.center, rng);
    Point x = std::cos(b.radius) * b.center + std::sin(b.radius) * u;
    x.normalize();
    return x;
}

bool inside_other_balls(const Body& body, const Point& x, int owner, double slack) {
    const auto& balls = body.balls();
    for (int j = 0; j < static_cast<int>(balls.size()); ++j) {
        if (j == owner) continue;
        if (balls[j].radius - distance(body.space(), x, balls[j].center) < -slack) return false;
    }
    return true;
}

Vector inward_normal_at(const Body& body, int owner, const Point& x) {
    const Ball& b = body.balls()[owner];
    return log_direction(body.space(), x, b.center);
}

}  // namespace

Body::Body(SpaceForm sf, std::vector<Ball> balls) : sf_(std::move(sf)) {
    if (balls.empty()) throw std::invalid_argument("Body: needs at least one ball");
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const Ball& b = balls[i];
        validate_point(sf_, b.center);
        if (!(b.radius > 0.0))
            throw std::invalid_argument("Body: ball " + std::to_string(i) +
                                        " has nonpositive radius");
        if (sf_.kappa > 0.0 && b.radius >= kPi / 2.0)
            throw std::invalid_argument("Body: ball " + std::to_string(i) +
                                        " has radius >= pi/2, not convex on the sphere");
    }
    // exact duplicates would double-count boundary patches downstream
    for (const Ball& b : balls) {
        bool dup = false;
        for (const Ball& kept : balls_)
            if (kept.radius == b.radius && kept.center == b.center) dup = true;
        if (!dup) balls_.push_back(b);
    }
    SoulResult cert = max_depth(sf_, balls_);
    if (!(cert.inner_radius > 1e-12))
        throw std::invalid_argument(
            "Body: ball intersection has empty interior (max depth " +
            std::to_string(cert.inner_radius) + ")");
    witness_ = cert.soul;
    witness_depth_ = cert.inner_radius;
}

double rho(const Body& body, const Point& x) {
    validate_point(body.space(), x);
    double v = std::numeric_limits<double>::infinity();
    for (const Ball& b : body.balls())
        v = std::min(v, b.radius - distance(body.space(), x, b.center));
    return v;
}

bool contains(const Body& body, const Point& x, double tolerance) {
    return rho(body, x) >= -tolerance;
}

std::vector<BoundarySample> sample_boundary(const Body& body, int target_count,
                                            std::uint64_t seed) {
    if (target_count < 1) throw std::invalid_argument("sample_boundary: target_count < 1");
    const auto& balls = body.balls();
    const int k = static_cast<int>(balls.size());
    const int n = body.space().dim;

    // pilot round: per-sphere acceptance fraction
    const int pilot = 256;
    std::vector<double> weight(k, 0.0);
    double total_weight = 0.0;
    for (int i = 0; i < k; ++i) {
        auto rng = detail::stream(seed, 2 * static_cast<std::uint64_t>(i));
        int hits = 0;
        for (int s = 0; s < pilot; ++s)
            if (inside_other_balls(body, uniform_sphere_point(body.space(), balls[i], rng), i,
                                   tol::membership))
                ++hits;
        weight[i] = (static_cast<double>(hits) / pilot) *
                    sphere_weight(body.space(), balls[i].radius, n);
        total_weight += weight[i];
    }

    std::vector<int> alloc(k, 0);
    for (int i = 0; i < k; ++i) {
        if (total_weight > 0.0 && weight[i] > 0.0)
            alloc[i] = std::max(1, static_cast<int>(std::lround(target_count * weight[i] /
                                                                total_weight)));
    }

    std::vector<BoundarySample> out;
    out.reserve(target_count + k);
    for (int i = 0; i < k; ++i) {
        auto rng = detail::stream(seed, 2 * static_cast<std::uint64_t>(i) + 1);
        // a sphere the pilot missed may still carry a small patch
        long attempts = alloc[i] > 0 ? std::max<long>(200L * alloc[i], 20000L) : 4096L;
        int want = alloc[i] > 0 ? alloc[i] : 1;
        int got = 0;
        for (long s = 0; s < attempts && got < want; ++s) {
            Point x = uniform_sphere_point(body.space(), balls[i], rng);
            if (!inside_other_balls(body, x, i, tol::membership)) continue;
            // project back onto the owner sphere exactly
            if (body.space().kappa == 0.0) {
                Vector u = x - balls[i].center;
                x = balls[i].center + balls[i].radius * (u / u.norm());
            }
            out.push_back({x, i, inward_normal_at(body, i, x)});
            ++got;
        }
    }
    return out;
}

double base_angle_lower_bound(const Body& body) {
    double a = std::numeric_limits<double>::infinity();
    for (const Ball& b : body.balls()) {
        double c = body.space().kappa == 0.0 ? 1.0 / b.radius : 1.0 / std::tan(b.radius);
        a = std::min(a, c);
    }
    return a;
}

BaseAngleEstimate base_angle_estimate(const Body& body, const BoundarySample& at,
                                      const std::vector<double>& chord_lengths,
                                      int directions, std::uint64_t seed) {
    if (directions < 1) throw std::invalid_argument("base_angle_estimate: directions < 1");
    for (std::size_t i = 0; i + 1 < chord_lengths.size(); ++i)
        if (chord_lengths[i] <= chord_lengths[i + 1])
            throw std::invalid_argument("base_angle_estimate: chord lengths must decrease");
    const auto& sf = body.space();
    const Ball& owner = body.balls()[at.owner];

    BaseAngleEstimate est;
    for (int j = 0; j < static_cast<int>(body.balls().size()); ++j) {
        if (j == at.owner) continue;
        const Ball& b = body.balls()[j];
        if (std::abs(distance(sf, at.point, b.center) - b.radius) <= 1e-7) est.corner = true;
    }

    for (std::size_t ci = 0; ci < chord_lengths.size(); ++ci) {
        double r = chord_lengths[ci];
        if (r < tol::chord_floor)
            throw std::invalid_argument("base_angle_estimate: chord below the usable floor");

        double theta;  // arc angle on the owner sphere matching chord length r
        Vector nu;     // outward sphere normal (flat case)
        Vector u;      // tangent-at-center direction of the sample (spherical case)
        if (sf.kappa == 0.0) {
            if (r >= 2.0 * owner.radius)
                throw std::invalid_argument("base_angle_estimate: chord exceeds the sphere diameter");
            theta = 2.0 * std::asin(r / (2.0 * owner.radius));
            nu = (at.point - owner.center) / owner.radius;
        } else {
            double cos_psi = (std::cos(r) - std::cos(owner.radius) * std::cos(owner.radius)) /
                             (std::sin(owner.radius) * std::sin(owner.radius));
            if (cos_psi <= -1.0)
                throw std::invalid_argument("base_angle_estimate: chord exceeds the sphere diameter");
            theta = std::acos(clamp1(cos_psi));
            u = (at.point - std::cos(owner.radius) * owner.center) / std::sin(owner.radius);
        }

        auto rng = detail::stream(seed ^ 0xba5ea6eULL, ci);
        double best = std::numeric_limits<double>::infinity();
        for (int d = 0; d < directions; ++d) {
            if (sf.kappa == 0.0) {
                Vector w = detail::unit_tangent(nu, rng);
                // chord vector formed directly; avoids cancellation at large radii
                double c1 = -2.0 * std::sin(theta / 2.0) * std::sin(theta / 2.0);  // cos(theta)-1
                Vector chord = owner.radius * (c1 * nu + std::sin(theta) * w);
                Point y = at.point + chord;
                if (!inside_other_balls(body, y, at.owner, tol::boundary_projection)) continue;
                double alpha = std::asin(clamp1(chord.dot(at.inward_normal) / chord.norm()));
                best = std::min(best, 2.0 * alpha / r);
            } else {
                Vector w = detail::gaussian_vector(sf.ambient_dim(), rng);
                w -= w.dot(owner.center) * owner.center;
                w -= w.dot(u) * u;
                double nw = w.norm();
                if (nw < 1e-12) { --d; continue; }
                w /= nw;
                Point y = std::cos(owner.radius) * owner.center +
                          std::sin(owner.radius) * (std::cos(theta) * u + std::sin(theta) * w);
                y.normalize();
                if (!inside_other_balls(body, y, at.owner, tol::boundary_projection)) continue;
                double alpha = std::asin(clamp1(log_direction(sf, at.point, y).dot(at.inward_normal)));
                best = std::min(best, 2.0 * alpha / r);
            }
        }
        if (std::isfinite(best)) est.ratios.emplace_back(r, best);
    }
    return est;
}

Body make_cutthetip(double A, double a, double eps) {
    if (!(A > 0.0)) throw std::invalid_argument("make_cutthetip: A must be positive");
    if (!(a > 0.0 && a < 1.0 / A))
        throw std::invalid_argument("make_cutthetip: need 0 < a < 1/A");
    double reach = std::sqrt(2.0 * a / A - a * a);
    if (!(eps > 0.0 && eps < reach - a))
        throw std::invalid_argument("make_cutthetip: need 0 < eps < sqrt(2a/A - a^2) - a");

    double R = 1.0 / A;
    Point c1(3), c2(3), c3(3);
    c1 << R - a, 0.0, 0.0;
    c2 << -(R - a), 0.0, 0.0;
    c3 << 0.0, reach - eps - R, 0.0;
    return Body(SpaceForm(0.0, 3), {{c1, R}, {c2, R}, {c3, R}});
}

}  // namespace radgeom
