// SPDX-License-Identifier: Apache-2.0
#include "radgeom/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "rng_util.hpp"

namespace radgeom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double rho_raw(const SpaceForm& sf, const std::vector<Ball>& balls, const Point& x,
               int* who = nullptr) {
    double v = kInf;
    int arg = 0;
    for (int i = 0; i < static_cast<int>(balls.size()); ++i) {
        double g = balls[i].radius - distance(sf, x, balls[i].center);
        if (g < v) {
            v = g;
            arg = i;
        }
    }
    if (who) *who = arg;
    return v;
}

/// Move along a signed tangent offset: straight line in flat space,
/// geodesic step on the sphere. Directions are re-projected onto the
/// tangent space at x, so slightly stale tangents are fine.
Point move(const SpaceForm& sf, const Point& x, const Vector& dir, double s) {
    if (sf.kappa == 0.0) return x + s * dir;
    Vector d = dir - dir.dot(x) * x;
    double n = d.norm();
    if (n < 1e-12) return x;
    d /= n;
    if (s >= 0.0) return geodesic_point(sf, x, d, std::min(s, 1.5));
    return geodesic_point(sf, x, Vector(-d), std::min(-s, 1.5));
}

/// Some unit vector orthogonal to a nonzero u.
Vector any_perp(const Vector& u) {
    int k = 0;
    for (int i = 1; i < u.size(); ++i)
        if (std::abs(u[i]) < std::abs(u[k])) k = i;
    Vector un = u / u.norm();
    Vector e = Vector::Unit(u.size(), k);
    e -= e.dot(un) * un;
    return e / e.norm();
}

/// Golden-section maximum of a function on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters,
                  double* arg = nullptr) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    double xm = 0.5 * (a + b);
    if (arg) *arg = xm;
    return f(xm);
}

struct AscentOut {
    Point x;
    double value;
};

AscentOut ascend(const SpaceForm& sf, const std::vector<Ball>& balls, Point x,
                 int max_iterations) {
    double min_radius = kInf;
    for (const Ball& b : balls) min_radius = std::min(min_radius, b.radius);

    int who = 0;
    double best_v = rho_raw(sf, balls, x, &who);
    Point best_x = x;
    double delta = 0.25 * min_radius;  // Polyak target offset above the incumbent
    int stall = 0;
    for (int k = 0; k < max_iterations; ++k) {
        double v = rho_raw(sf, balls, x, &who);
        if (v > best_v + 1e-15) {
            best_v = v;
            best_x = x;
            stall = 0;
        } else if (++stall >= 12) {
            delta *= 0.5;
            stall = 0;
            x = best_x;
            if (delta < 1e-12) break;
        }
        if (!log_direction_defined(sf, x, balls[who].center))
            break;  // sitting on the active center, nothing smooth to follow
        Vector g = log_direction(sf, x, balls[who].center);  // unit ascent direction
        double step = std::max(best_v + delta - v, 0.25 * delta);
        x = move(sf, x, g, std::min(step, 2.0 * min_radius));
    }
    return {best_x, best_v};
}

/// Line polish: golden-section maximum of rho along a direction through x.
void line_polish(const SpaceForm& sf, const std::vector<Ball>& balls, Point& x, double& v,
                 const Vector& dir, double span) {
    double s_best = 0.0;
    auto f = [&](double s) { return rho_raw(sf, balls, move(sf, x, dir, s)); };
    double fv = golden_max(f, -span, span, 60, &s_best);
    if (fv > v) {
        x = move(sf, x, dir, s_best);
        v = fv;
    }
}

std::vector<int> active_set(const SpaceForm& sf, const std::vector<Ball>& balls,
                            const Point& x, double gap) {
    double v = rho_raw(sf, balls, x);
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(balls.size()); ++i)
        if (balls[i].radius - distance(sf, x, balls[i].center) <= v + gap) s.push_back(i);
    return s;
}

struct NewtonOut {
    bool ok = false;
    Point x;
    std::vector<int> active;
};

/// Newton iteration on the optimality system of max t subject to
/// d(x, c_i) + t <= r_i over the active set (plus |x| = 1 on the
/// sphere). The system is square for any active-set size and solved
/// with rank-revealing QR so symmetric degenerate configurations
/// (more active balls than dimensions) still work.
NewtonOut newton_refine(const SpaceForm& sf, const std::vector<Ball>& balls, const Point& x0,
                        std::vector<int> act) {
    NewtonOut out;
    const int m = static_cast<int>(act.size());
    if (m == 0) return out;
    const bool spherical = sf.kappa > 0.0;

    // single active ball: the smooth maximum sits at that center
    if (m == 1) {
        out.x = balls[static_cast<std::size_t>(act[0])].center;
        out.active = std::move(act);
        out.ok = true;
        return out;
    }

    const int nx = static_cast<int>(x0.size());
    const int dim = nx + 1 + m + (spherical ? 1 : 0);  // x, t, lambda, (mu)
    Eigen::VectorXd z(dim);
    z.segment(0, nx) = x0;
    z[nx] = rho_raw(sf, balls, x0);
    for (int i = 0; i < m; ++i) z[nx + 1 + i] = 1.0 / m;
    if (spherical) z[dim - 1] = 0.0;

    auto eval = [&](const Eigen::VectorXd& zz, Eigen::VectorXd& F, Eigen::MatrixXd& J) {
        Point x = zz.segment(0, nx);
        double t = zz[nx];
        F.setZero(dim);
        J.setZero(dim, dim);
        Eigen::VectorXd grad_sum = Eigen::VectorXd::Zero(nx);
        for (int i = 0; i < m; ++i) {
            const Ball& b = balls[static_cast<std::size_t>(act[static_cast<std::size_t>(i)])];
            double lam = zz[nx + 1 + i];
            if (!spherical) {
                Vector u = x - b.center;
                double d = u.norm();
                if (d < 1e-14) d = 1e-14;
                u /= d;
                F[i] = d + t - b.radius;
                J.block(i, 0, 1, nx) = u.transpose();
                J(i, nx) = 1.0;
                grad_sum += lam * u;
                J.block(m, 0, nx, nx) +=
                    (lam / d) * (Eigen::MatrixXd::Identity(nx, nx) - u * u.transpose());
                J.block(m, nx + 1 + i, nx, 1) = u;
            } else {
                double c = std::min(1.0, std::max(-1.0, x.dot(b.center)));
                double d = std::acos(c);
                double sd = std::max(std::sin(d), 1e-14);
                F[i] = d + t - b.radius;
                J.block(i, 0, 1, nx) = -b.center.transpose() / sd;
                J(i, nx) = 1.0;
                grad_sum += lam * b.center / sd;
                J.block(m, 0, nx, nx) +=
                    lam * (std::cos(d) / (sd * sd * sd)) * b.center * b.center.transpose();
                J.block(m, nx + 1 + i, nx, 1) = b.center / sd;
            }
        }
        if (spherical) {
            double mu = zz[dim - 1];
            F.segment(m, nx) = grad_sum - mu * x;
            J.block(m, 0, nx, nx) -= mu * Eigen::MatrixXd::Identity(nx, nx);
            J.block(m, dim - 1, nx, 1) = -x;
            F[m + nx] = zz.segment(nx + 1, m).sum() - 1.0;
            for (int i = 0; i < m; ++i) J(m + nx, nx + 1 + i) = 1.0;
            F[m + nx + 1] = 0.5 * (x.squaredNorm() - 1.0);
            J.block(m + nx + 1, 0, 1, nx) = x.transpose();
        } else {
            F.segment(m, nx) = grad_sum;
            F[m + nx] = zz.segment(nx + 1, m).sum() - 1.0;
            for (int i = 0; i < m; ++i) J(m + nx, nx + 1 + i) = 1.0;
        }
    };

    Eigen::VectorXd F(dim), Fn(dim);
    Eigen::MatrixXd J(dim, dim), Jn(dim, dim);
    eval(z, F, J);
    double fn = F.norm();
    for (int it = 0; it < 80 && fn > 1e-13; ++it) {
        Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);
        if (!step.allFinite()) return out;
        double scale = 1.0;
        bool moved = false;
        for (int h = 0; h < 30; ++h) {
            Eigen::VectorXd zn = z + scale * step;
            if (spherical) zn.segment(0, nx).normalize();
            eval(zn, Fn, Jn);
            if (Fn.norm() < fn) {
                z = zn;
                F = Fn;
                J = Jn;
                fn = Fn.norm();
                moved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!moved) break;
    }
    if (fn > 1e-10) return out;

    for (int i = 0; i < m; ++i)
        if (z[nx + 1 + i] < -1e-8) return out;  // wrong active set
    Point x = z.segment(0, nx);
    double t = z[nx];
    for (const Ball& b : balls) {
        double g = b.radius - distance(sf, x, b.center);
        if (g < t - 1e-8) return out;  // an inactive ball undercuts the solution
    }
    out.ok = true;
    out.x = std::move(x);
    out.active = std::move(act);
    return out;
}

std::vector<Point> ascent_starts(const SpaceForm& sf, const std::vector<Ball>& balls,
                                 const SolverOptions& opts, const Point* hint) {
    std::vector<Point> starts;
    if (hint) starts.push_back(*hint);
    for (const Ball& b : balls) {
        if (static_cast<int>(starts.size()) >= opts.restarts) break;
        starts.push_back(b.center);
    }
    auto rng = detail::stream(opts.seed, 0xa5ce17ULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (static_cast<int>(starts.size()) < opts.restarts) {
        // random mixture of the centers plus a jitter scaled by the radii
        Point x = Point::Zero(sf.ambient_dim());
        double wsum = 0.0, rbar = 0.0;
        for (const Ball& b : balls) {
            double w = unif(rng) + 1e-3;
            x += w * b.center;
            rbar += w * b.radius;
            wsum += w;
        }
        x /= wsum;
        rbar /= wsum;
        if (sf.kappa == 0.0) {
            x += 0.3 * rbar * unif(rng) * detail::unit_vector(sf.ambient_dim(), rng);
        } else {
            if (x.norm() < 1e-9) x = balls[0].center;
            x.normalize();
            Vector tan = detail::unit_tangent(x, rng);
            x = geodesic_point(sf, x, tan, 0.3 * rbar * unif(rng));
        }
        starts.push_back(x);
    }
    return starts;
}

SoulResult solve_depth(const SpaceForm& sf, const std::vector<Ball>& balls,
                       const SolverOptions& opts, const Point* hint) {
    if (balls.empty()) throw std::invalid_argument("max_depth: no balls");
    double min_radius = kInf;
    for (const Ball& b : balls) min_radius = std::min(min_radius, b.radius);

    std::vector<std::pair<double, Point>> results;
    for (const Point& start : ascent_starts(sf, balls, opts, hint)) {
        AscentOut a = ascend(sf, balls, start, opts.max_iterations);
        int who = 0;
        rho_raw(sf, balls, a.x, &who);
        if (log_direction_defined(sf, a.x, balls[static_cast<std::size_t>(who)].center))
            line_polish(sf, balls, a.x, a.value,
                        log_direction(sf, a.x, balls[static_cast<std::size_t>(who)].center),
                        0.1 * min_radius);
        results.emplace_back(a.value, a.x);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].first > results[best].first) best = i;

    SoulResult out;
    out.soul = results[best].second;
    out.inner_radius = results[best].first;

    // Newton refinement over widening active-set guesses
    for (double gap : {1e-7, 1e-5, 1e-3}) {
        std::vector<int> act = active_set(sf, balls, out.soul, gap);
        NewtonOut nw = newton_refine(sf, balls, out.soul, act);
        if (nw.ok) {
            double v = rho_raw(sf, balls, nw.x);
            if (v >= out.inner_radius - 1e-12) {
                out.soul = nw.x;
                out.inner_radius = v;
                out.active_balls = std::move(nw.active);
                out.converged = true;
                break;
            }
        }
    }
    if (!out.converged) {
        // fallback: cycles of line maxima along the active gradient
        Point x = out.soul;
        double v = out.inner_radius;
        double span = 0.05 * min_radius;
        while (span > 1e-13) {
            int who = 0;
            rho_raw(sf, balls, x, &who);
            if (!log_direction_defined(sf, x, balls[static_cast<std::size_t>(who)].center)) break;
            double before = v;
            line_polish(sf, balls, x, v,
                        log_direction(sf, x, balls[static_cast<std::size_t>(who)].center), span);
            if (v - before < 1e-15) span *= 0.5;
        }
        if (v >= out.inner_radius) {
            out.soul = x;
            out.inner_radius = v;
        }
        out.active_balls = active_set(sf, balls, out.soul, 1e-5);
        out.converged = span <= 1e-13;
    }

    out.inner_radius = rho_raw(sf, balls, out.soul);  // always report rho at the point
    out.unique = true;
    for (const auto& [v, x] : results) {
        if (v >= out.inner_radius - 1e-7 && distance(sf, x, out.soul) > 1e-4)
            out.unique = false;
    }
    return out;
}

}  // namespace

SoulResult max_depth(const SpaceForm& sf, const std::vector<Ball>& balls,
                     const SolverOptions& opts) {
    return solve_depth(sf, balls, opts, nullptr);
}

SoulResult inner_radius(const Body& body, const SolverOptions& opts) {
    const Point hint = body.interior_witness();
    return solve_depth(body.space(), body.balls(), opts, &hint);
}

// ---------------------------------------------------------------------------
// minimal enclosing ball (Welzl)

namespace {

struct WelzlContext {
    const std::vector<Point>& pts;
    int ambient;
    std::vector<int> idx;

    EnclosingBall ball_of(const std::vector<const Point*>& sup) const {
        EnclosingBall b;
        b.center = Point::Zero(ambient);
        b.radius = -1.0;
        if (sup.empty()) return b;
        if (sup.size() == 1) {
            b.center = *sup[0];
            b.radius = 0.0;
            return b;
        }
        const Point& p0 = *sup[0];
        const int m = static_cast<int>(sup.size()) - 1;
        Eigen::MatrixXd B(ambient, m);
        Eigen::VectorXd rhs(m);
        for (int i = 0; i < m; ++i) {
            B.col(i) = *sup[static_cast<std::size_t>(i + 1)] - p0;
            rhs[i] = B.col(i).squaredNorm();
        }
        // circumcenter: minimum-norm solve handles affinely dependent supports
        Eigen::MatrixXd G = 2.0 * B.transpose() * B;
        Eigen::VectorXd lam = G.completeOrthogonalDecomposition().solve(rhs);
        b.center = p0 + B * lam;
        b.radius = 0.0;
        for (const Point* p : sup) b.radius = std::max(b.radius, (*p - b.center).norm());
        return b;
    }

    bool inside(const EnclosingBall& b, const Point& p) const {
        if (b.radius < 0.0) return false;
        double rr = b.radius * b.radius;
        return (p - b.center).squaredNorm() <= rr + 1e-12 * (1.0 + rr);
    }

    EnclosingBall rec(int end, std::vector<const Point*>& sup) {
        if (end == 0 || static_cast<int>(sup.size()) == ambient + 1) return ball_of(sup);
        const Point& p = pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(end - 1)])];
        EnclosingBall b = rec(end - 1, sup);
        if (inside(b, p)) return b;
        sup.push_back(&p);
        b = rec(end - 1, sup);
        sup.pop_back();
        std::rotate(idx.begin(), idx.begin() + (end - 1), idx.begin() + end);
        return b;
    }
};

}  // namespace

EnclosingBall min_enclosing_ball(const std::vector<Point>& pts, std::uint64_t seed) {
    if (pts.empty()) throw std::invalid_argument("min_enclosing_ball: empty point set");
    WelzlContext ctx{pts, static_cast<int>(pts[0].size()), {}};
    ctx.idx.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ctx.idx[i] = static_cast<int>(i);
    auto rng = detail::stream(seed, 0x3e121ULL);
    std::shuffle(ctx.idx.begin(), ctx.idx.end(), rng);
    std::vector<const Point*> sup;
    return ctx.rec(static_cast<int>(pts.size()), sup);
}

// ---------------------------------------------------------------------------
// farthest boundary point

namespace {

bool on_body_boundary(const Body& body, const Point& x) {
    return std::abs(rho(body, x)) <= tol::boundary_projection;
}

void add_if_on_boundary(const Body& body, const Point& cand, std::vector<Point>& out) {
    if (cand.size() != body.space().ambient_dim() || !cand.allFinite()) return;
    Point c = cand;
    if (body.space().kappa > 0.0) {
        double n = c.norm();
        if (n < 1e-12) return;
        c /= n;
    }
    if (on_body_boundary(body, c)) out.push_back(std::move(c));
}

/// Axis candidates: for every sphere, the two points where the geodesic
/// through p and the center meets it (the smooth critical points of
/// distance from p restricted to that sphere).
void axis_candidates(const Body& body, const Point& p, std::vector<Point>& out) {
    const SpaceForm& sf = body.space();
    for (const Ball& b : body.balls()) {
        if (sf.kappa == 0.0) {
            Vector d = p - b.center;
            Vector u = d.norm() > 1e-13 ? Vector(d / d.norm()) : Vector::Unit(p.size(), 0);
            add_if_on_boundary(body, b.center + b.radius * u, out);
            add_if_on_boundary(body, b.center - b.radius * u, out);
        } else {
            Vector u = log_direction_defined(sf, b.center, p) ? log_direction(sf, b.center, p)
                                                              : any_perp(b.center);
            add_if_on_boundary(body, geodesic_point(sf, b.center, u, b.radius), out);
            add_if_on_boundary(body, geodesic_point(sf, b.center, Vector(-u), b.radius), out);
        }
    }
}

void pair_candidates_flat(const Body& body, const Point& p, std::vector<Point>& out) {
    const auto& balls = body.balls();
    for (std::size_t i = 0; i < balls.size(); ++i) {
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            Vector dc = balls[j].center - balls[i].center;
            double d = dc.norm();
            if (d < 1e-13) continue;
            Vector u = dc / d;
            double alpha =
                (d * d + balls[i].radius * balls[i].radius - balls[j].radius * balls[j].radius) /
                (2.0 * d);
            double rho2 = balls[i].radius * balls[i].radius - alpha * alpha;
            if (rho2 < -1e-12) continue;
            double rc = std::sqrt(std::max(0.0, rho2));
            Point o = balls[i].center + alpha * u;
            // distance extrema on the slice sphere lie along the projected p - o
            Vector q = p - o;
            q -= q.dot(u) * u;
            Vector e = q.norm() > 1e-12 ? Vector(q / q.norm()) : any_perp(u);
            add_if_on_boundary(body, o + rc * e, out);
            add_if_on_boundary(body, o - rc * e, out);
        }
    }
}

void triple_candidates_flat(const Body& body, std::vector<Point>& out) {
    const auto& balls = body.balls();
    if (body.space().ambient_dim() != 3) return;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            for (std::size_t k = j + 1; k < balls.size(); ++k) {
                Eigen::MatrixXd M(2, 3);
                Eigen::VectorXd rhs(2);
                auto plane = [&](std::size_t a, std::size_t b, int row) {
                    M.row(row) = 2.0 * (balls[b].center - balls[a].center).transpose();
                    rhs[row] = balls[a].radius * balls[a].radius -
                               balls[b].radius * balls[b].radius +
                               balls[b].center.squaredNorm() - balls[a].center.squaredNorm();
                };
                plane(i, j, 0);
                plane(i, k, 1);
                auto cod = M.completeOrthogonalDecomposition();
                if (cod.rank() < 2) continue;
                Eigen::VectorXd xp = cod.solve(rhs);
                Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
                Eigen::MatrixXd K = lu.kernel();
                if (K.cols() < 1) continue;
                Vector v = K.col(0).normalized();
                Vector w = xp - balls[i].center;
                double beta = v.dot(w);
                double gamma = w.squaredNorm() - balls[i].radius * balls[i].radius;
                double disc = beta * beta - gamma;
                if (disc < -1e-12) continue;
                double sd = std::sqrt(std::max(0.0, disc));
                add_if_on_boundary(body, Point(xp + (-beta + sd) * v), out);
                add_if_on_boundary(body, Point(xp + (-beta - sd) * v), out);
            }
        }
    }
}

/// Spherical pair/triple candidates. Each sphere is the slice
/// x . c_i = cos(r_i) of the unit sphere, so an intersection is an
/// affine subspace cut with |x| = 1: minimum-norm particular solution
/// plus the kernel, then extremize the linear functional p . x.
void slice_candidates_sphere(const Body& body, const Point& p, std::vector<Point>& out) {
    const auto& balls = body.balls();
    const int na = body.space().ambient_dim();
    auto handle = [&](const std::vector<std::size_t>& ids) {
        const int m = static_cast<int>(ids.size());
        Eigen::MatrixXd M(m, na);
        Eigen::VectorXd rhs(m);
        for (int r = 0; r < m; ++r) {
            const Ball& b = balls[ids[static_cast<std::size_t>(r)]];
            M.row(r) = b.center.transpose();
            rhs[r] = std::cos(b.radius);
        }
        auto cod = M.completeOrthogonalDecomposition();
        if (cod.rank() < m) return;
        Eigen::VectorXd x0 = cod.solve(rhs);  // minimum norm, orthogonal to the kernel
        double rho2 = 1.0 - x0.squaredNorm();
        if (rho2 < -1e-12) return;
        double rc = std::sqrt(std::max(0.0, rho2));
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        Eigen::MatrixXd K = lu.kernel();
        if (K.cols() != na - m) return;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(na, K.cols());
        if (Q.cols() == 1) {
            add_if_on_boundary(body, Point(x0 + rc * Q.col(0)), out);
            add_if_on_boundary(body, Point(x0 - rc * Q.col(0)), out);
            return;
        }
        Eigen::VectorXd proj = Q.transpose() * p;
        if (proj.norm() > 1e-12) {
            Vector e = Q * (proj / proj.norm());
            add_if_on_boundary(body, Point(x0 + rc * e), out);
            add_if_on_boundary(body, Point(x0 - rc * e), out);
        } else {
            for (int c = 0; c < Q.cols(); ++c) {
                add_if_on_boundary(body, Point(x0 + rc * Q.col(c)), out);
                add_if_on_boundary(body, Point(x0 - rc * Q.col(c)), out);
            }
        }
    };
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
            handle({i, j});
            if (na == 4)
                for (std::size_t k = j + 1; k < balls.size(); ++k) handle({i, j, k});
        }
}

/// Stochastic patch search for dimensions past the exact enumeration:
/// shrinking tangent steps on the owner sphere, feasibility filtered.
void patch_search(const Body& body, const Point& p, int owner, const Point& seed_point,
                  std::uint64_t seed, std::vector<Point>& out) {
    const SpaceForm& sf = body.space();
    const Ball& b = body.balls()[static_cast<std::size_t>(owner)];
    auto rng = detail::stream(seed, 0x9a7c4ULL + static_cast<std::uint64_t>(owner));
    Point x = seed_point;
    double best = distance(sf, p, x);
    double sigma = 0.2;
    for (int round = 0; round < 70 && sigma > 1e-11; ++round) {
        bool improved = false;
        for (int s = 0; s < 24; ++s) {
            Point y;
            if (sf.kappa == 0.0) {
                Vector u = (x - b.center) / b.radius;
                Vector w = detail::gaussian_vector(static_cast<int>(x.size()), rng);
                w -= w.dot(u) * u;
                y = b.center + b.radius * Vector((u + sigma * w).normalized());
            } else {
                Vector u = (x - std::cos(b.radius) * b.center) / std::sin(b.radius);
                Vector w = detail::gaussian_vector(static_cast<int>(x.size()), rng);
                w -= w.dot(b.center) * b.center;
                w -= w.dot(u) * u;
                y = std::cos(b.radius) * b.center +
                    std::sin(b.radius) * Vector((u + sigma * w).normalized());
                y.normalize();
            }
            if (!on_body_boundary(body, y)) continue;
            double v = distance(sf, p, y);
            if (v > best) {
                best = v;
                x = y;
                improved = true;
            }
        }
        if (!improved) sigma *= 0.6;
    }
    out.push_back(x);
}

FarthestPoint farthest_boundary_point(const Body& body, const Point& p,
                                      const std::vector<BoundarySample>* warm,
                                      std::uint64_t seed) {
    const SpaceForm& sf = body.space();
    std::vector<Point> cands;
    axis_candidates(body, p, cands);
    if (sf.kappa == 0.0) {
        pair_candidates_flat(body, p, cands);
        triple_candidates_flat(body, cands);
    } else {
        slice_candidates_sphere(body, p, cands);
    }
    if (warm)
        for (const BoundarySample& s : *warm) cands.push_back(s.point);
    if (cands.empty()) {
        for (const BoundarySample& s : sample_boundary(body, 256, seed ^ 0xfa11ULL))
            cands.push_back(s.point);
    }

    if (sf.dim > 3) {
        // the exact enumeration is incomplete here; refine per sphere
        std::vector<Point> extra;
        for (int i = 0; i < static_cast<int>(body.balls().size()); ++i) {
            const Ball& b = body.balls()[static_cast<std::size_t>(i)];
            const Point* best_seed = nullptr;
            double best_v = -kInf;
            for (const Point& c : cands) {
                if (std::abs(distance(sf, c, b.center) - b.radius) > 1e-7) continue;
                double v = distance(sf, p, c);
                if (v > best_v) {
                    best_v = v;
                    best_seed = &c;
                }
            }
            if (best_seed) patch_search(body, p, i, *best_seed, seed, extra);
        }
        for (Point& e : extra) cands.push_back(std::move(e));
    }

    FarthestPoint out;
    out.value = -kInf;
    for (const Point& c : cands) {
        double v = distance(sf, p, c);
        if (v > out.value) {
            out.value = v;
            out.point = c;
        }
    }
    if (!(out.value > -kInf))
        throw std::runtime_error("farthest_boundary_point: no boundary candidate survived");
    return out;
}

}  // namespace

FarthestPoint radius_from_soul(const Body& body, const Point& soul,
                               const SolverOptions& opts) {
    validate_point(body.space(), soul);
    auto samples = sample_boundary(body, opts.boundary_samples, opts.seed ^ 0xb0d7f00dULL);
    return farthest_boundary_point(body, soul, &samples, opts.seed);
}

CenterResult global_radius(const Body& body, const SolverOptions& opts) {
    const SpaceForm& sf = body.space();
    auto samples = sample_boundary(body, opts.boundary_samples, opts.seed ^ 0x91adULL);
    if (samples.empty()) throw std::runtime_error("global_radius: no boundary samples");
    std::vector<Point> pts;
    pts.reserve(samples.size() + 64);
    for (const BoundarySample& s : samples) pts.push_back(s.point);

    CenterResult out;
    double prev = -1.0;
    int small_changes = 0;
    for (int round = 0; round < 64; ++round) {
        out.rounds = round + 1;
        EnclosingBall eb =
            min_enclosing_ball(pts, opts.seed + static_cast<std::uint64_t>(round));
        Point center = eb.center;
        if (sf.kappa > 0.0) {
            // normalized Euclidean center direction is the spherical 1-center
            double n = center.norm();
            center = n > 1e-12 ? Point(center / n) : body.balls()[0].center;
        }
        double rad = 0.0;
        for (const Point& q : pts) rad = std::max(rad, distance(sf, center, q));
        out.center = center;
        out.radius = rad;

        FarthestPoint far =
            farthest_boundary_point(body, center, round == 0 ? &samples : nullptr,
                                    opts.seed + 31 * static_cast<std::uint64_t>(round));
        if (far.value <= rad + 1e-9) {  // certificate: the whole boundary is covered
            out.converged = true;
            break;
        }
        pts.push_back(far.point);
        if (prev >= 0.0 && std::abs(rad - prev) < 1e-7) {
            if (++small_changes >= 3) {
                out.converged = true;
                break;
            }
        } else {
            small_changes = 0;
        }
        prev = rad;
    }
    out.center_in_body = contains(body, out.center, 1e-6);
    return out;
}

double interior_radius_check(const Body& body, const Point& soul, int trial_count,
                             std::uint64_t seed) {
    if (trial_count < 1) throw std::invalid_argument("interior_radius_check: no trials");
    const SpaceForm& sf = body.space();
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < body.balls().size(); ++i)
        if (body.balls()[i].radius < body.balls()[smallest].radius) smallest = i;
    const Ball& b = body.balls()[smallest];

    auto rng = detail::stream(seed, 0x1f7e21ULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    long attempts = 0;
    const long cap = 30L * trial_count;
    int accepted = 0;
    const int n = sf.dim;
    while (accepted < trial_count && attempts < cap) {
        ++attempts;
        Point x;
        if (sf.kappa == 0.0) {
            double t = b.radius * std::pow(unif(rng), 1.0 / n);
            x = b.center + t * detail::unit_vector(sf.ambient_dim(), rng);
        } else {
            double t;
            for (;;) {  // radial density proportional to sin(t)^(n-1)
                t = b.radius * unif(rng);
                if (unif(rng) <= std::pow(std::sin(t) / std::sin(b.radius), n - 1)) break;
            }
            x = geodesic_point(sf, b.center, detail::unit_tangent(b.center, rng), t);
        }
        if (rho(body, x) < 0.0) continue;
        ++accepted;
        worst = std::max(worst, distance(sf, soul, x));
    }
    return worst;
}

GeometrySummary summarize(const Body& body, const SolverOptions& opts) {
    GeometrySummary s;
    SoulResult soul = inner_radius(body, opts);
    s.inner_radius = soul.inner_radius;
    s.soul = soul.soul;
    s.solver_converged = soul.converged;
    s.soul_unique = soul.unique;
    s.active_balls = soul.active_balls;

    FarthestPoint far = radius_from_soul(body, soul.soul, opts);
    s.soul_radius = far.value;
    s.soul_witness = far.point;

    CenterResult rad = global_radius(body, opts);
    s.radius = rad.radius;
    s.center = rad.center;
    s.solver_converged = s.solver_converged && rad.converged;

    s.base_angle = base_angle_lower_bound(body);
    s.model_R = model_radius(body.space(), s.base_angle);
    return s;
}

}  // namespace radgeom
