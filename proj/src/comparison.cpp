// SPDX-License-Identifier: Apache-2.0
#include "radgeom/comparison.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "radgeom/space_form.hpp"

namespace radgeom {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double ComparisonSolution::operator()(double t) const {
    if (kappa == 0.0) return f0 + df0 * t + 0.5 * t * t;
    return 1.0 + (f0 - 1.0) * std::cos(t) + df0 * std::sin(t);
}

double ComparisonSolution::derivative(double t) const {
    if (kappa == 0.0) return df0 + t;
    return -(f0 - 1.0) * std::sin(t) + df0 * std::cos(t);
}

double ComparisonSolution::ode_residual(double t) const {
    if (kappa == 0.0) return 0.0;  // u'' = 1 identically
    double u = (*this)(t);
    double upp = -(f0 - 1.0) * std::cos(t) - df0 * std::sin(t);
    return upp + kappa * u - 1.0;
}

ComparisonSolution comparison_solution(double kappa, double f0, double df0) {
    if (kappa != 0.0 && kappa != 1.0)
        throw std::invalid_argument("comparison_solution: kappa must be 0 or 1");
    return ComparisonSolution{kappa, f0, df0};
}

FirstZero first_zero(double f0, double df0) {
    FirstZero out;
    // 1 - u(t) = (1 - f0) cos t - df0 sin t vanishes where
    // tan t = (1 - f0) / df0; atan2 picks the branch in (0, pi).
    if (std::abs(1.0 - f0) < 1e-15 && std::abs(df0) < 1e-15) return out;
    double t0 = std::atan2(1.0 - f0, df0);
    if (t0 <= 0.0) t0 += kPi;  // (1 - f0) < 0 cases wrap into (0, pi)
    if (t0 <= 0.0 || t0 > kPi) return out;
    out.t0 = t0;
    out.found = true;
    return out;
}

OdeCompareResult ode_compare(const ComparisonProfile& profile, double residual_tol) {
    const auto& t = profile.t;
    const auto& f = profile.f;
    if (t.size() != f.size() || t.size() < 3)
        throw std::invalid_argument("ode_compare: need at least three matching samples");
    if (t.front() != 0.0)
        throw std::invalid_argument("ode_compare: samples must start at t = 0");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] <= t[i - 1])
            throw std::invalid_argument("ode_compare: sample times must increase");
    if (profile.kappa != 0.0 && profile.kappa != 1.0)
        throw std::invalid_argument("ode_compare: kappa must be 0 or 1");

    OdeCompareResult out;

    // hypothesis f'' + kappa f >= 1 via centered second differences. The
    // step-aware tolerance covers the stencil's truncation error: 10h^2 on a
    // uniform grid, plus |hr - hl| where steps differ, since the three-point
    // stencil picks up a first-order term (hr - hl)/3 * f''' there.
    out.hypothesis_margin = kInf;
    bool hypothesis_ok = true;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        double hl = t[i] - t[i - 1];
        double hr = t[i + 1] - t[i];
        double second =
            2.0 * (hl * f[i + 1] - (hl + hr) * f[i] + hr * f[i - 1]) / (hl * hr * (hl + hr));
        double margin = second + profile.kappa * f[i] - 1.0;
        double h = std::max(hl, hr);
        out.hypothesis_margin = std::min(out.hypothesis_margin, margin);
        if (margin < -(1e-9 + 10.0 * h * h + std::abs(hr - hl))) hypothesis_ok = false;
    }
    if (!hypothesis_ok) return out;  // invalid input, not a comparison failure
    out.valid = true;

    ComparisonSolution u = comparison_solution(profile.kappa, profile.f0, profile.df0);

    // horizon: first zero of 1 - u for kappa = 1, recomputed by scan + bisection
    double horizon = t.back();
    if (profile.kappa == 1.0) {
        auto g = [&](double s) { return 1.0 - u(s); };
        double step = 1e-3;
        double lo = 0.0;
        double hi = -1.0;
        double g_lo = g(0.0);
        if (g_lo <= 0.0) {
            hi = 0.0;  // starts at or above the ceiling
        } else {
            for (double s = step; s <= kPi + step; s += step) {
                if (g(s) <= 0.0) {
                    hi = s;
                    break;
                }
                lo = s;
            }
        }
        if (hi > 0.0) {
            for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
                double mid = 0.5 * (lo + hi);
                (g(mid) > 0.0 ? lo : hi) = mid;
            }
            horizon = std::min(horizon, 0.5 * (lo + hi));
        }
        out.t0 = hi >= 0.0 ? 0.5 * (lo + hi) : kInf;
    } else {
        out.t0 = t.back();  // flat case: the comparison holds on the whole sample
    }

    out.pass = true;
    out.worst_residual = kInf;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > horizon + 1e-12) break;
        double r = f[i] - u(t[i]);
        if (r < out.worst_residual) {
            out.worst_residual = r;
            out.worst_t = t[i];
        }
        if (r < -residual_tol) out.pass = false;
    }
    if (out.worst_residual == kInf) {  // horizon shorter than the first sample gap
        out.worst_residual = 0.0;
        out.worst_t = 0.0;
    }
    return out;
}

double bound_b(double kappa, double a, double A) {
    auto reject = [](const char* msg) { throw std::domain_error(msg); };
    if (kappa == 0.0) {
        if (!(A > 0.0)) reject("bound_b: kappa = 0 needs A > 0");
        if (!(a > 0.0)) reject("bound_b: needs a > 0");
        double limit = 1.0 / A;
        if (a > limit * (1.0 + 1e-9)) reject("bound_b: a exceeds 1/A");
        double s = 2.0 * a / A - a * a;
        return std::sqrt(std::max(0.0, s));
    }
    if (kappa == 1.0) {
        if (A < 0.0) reject("bound_b: kappa = 1 needs A >= 0");
        if (a < 0.0) reject("bound_b: needs a >= 0");
        if (A == 0.0) return kPi / 2.0;  // arccos(0/sin a), any a in (0, pi/2]
        double limit = std::atan2(1.0, A);  // arccot(A)
        if (a > limit * (1.0 + 1e-9)) reject("bound_b: a exceeds arccot(A)");
        double denom = A * std::cos(a) + std::sin(a);
        double c = A / denom;
        c = std::min(1.0, std::max(-1.0, c));
        return std::acos(c);
    }
    throw std::invalid_argument("bound_b: kappa must be 0 or 1");
}

std::pair<double, double> profile_initial_data(const BoundInputs& in) {
    if (in.kappa != 0.0 && in.kappa != 1.0)
        throw std::invalid_argument("profile_initial_data: kappa must be 0 or 1");
    if (in.alpha0 < -1e-12 || in.alpha0 > kPi / 2.0 + 1e-12)
        throw std::invalid_argument("profile_initial_data: alpha0 outside [0, pi/2]");
    double R = model_radius(in.kappa, in.A);
    if (in.a < 0.0 || in.a > R * (1.0 + 1e-9))
        throw std::invalid_argument("profile_initial_data: a outside [0, R]");
    double f0 = md(in.kappa, R - in.a);
    double ca = std::cos(in.alpha0);
    double df0 = in.kappa == 0.0 ? (R - in.a) * ca : std::sin(R - in.a) * ca;
    return {f0, df0};
}

ComparisonProfile integrate_profile(double kappa, double f0, double df0,
                                    const std::function<double(double)>& forcing,
                                    double horizon, int steps) {
    if (kappa != 0.0 && kappa != 1.0)
        throw std::invalid_argument("integrate_profile: kappa must be 0 or 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("integrate_profile: horizon <= 0");
    if (steps < 2) throw std::invalid_argument("integrate_profile: need at least 2 steps");

    ComparisonProfile p;
    p.kappa = kappa;
    p.f0 = f0;
    p.df0 = df0;
    p.t.reserve(static_cast<std::size_t>(steps) + 1);
    p.f.reserve(static_cast<std::size_t>(steps) + 1);

    const double h = horizon / steps;
    double y = f0, dy = df0;
    p.t.push_back(0.0);
    p.f.push_back(y);
    auto acc = [&](double s, double v) { return forcing(s) - kappa * v; };
    for (int i = 0; i < steps; ++i) {
        double s = i * h;
        double k1y = dy, k1v = acc(s, y);
        double k2y = dy + 0.5 * h * k1v, k2v = acc(s + 0.5 * h, y + 0.5 * h * k1y);
        double k3y = dy + 0.5 * h * k2v, k3v = acc(s + 0.5 * h, y + 0.5 * h * k2y);
        double k4y = dy + h * k3v, k4v = acc(s + h, y + h * k3y);
        y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        dy += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        p.t.push_back((i + 1) * h);
        p.f.push_back(y);
    }
    if (kappa == 1.0) {
        FirstZero fz = first_zero(f0, df0);
        p.t0 = fz.found ? fz.t0 : kInf;
    } else {
        p.t0 = kInf;
    }
    return p;
}

}  // namespace radgeom
