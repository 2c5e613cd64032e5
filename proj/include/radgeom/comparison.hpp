// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace radgeom {

/// Closed-form solution of u'' + kappa u = 1 with u(0) = f0, u'(0) = df0:
/// 1 + (f0 - 1) cos t + df0 sin t for kappa = 1, f0 + df0 t + t^2/2 for
/// kappa = 0. Evaluated directly, never by integration, so the
/// comparison side of every check carries no integrator error.
struct ComparisonSolution {
    double kappa = 0.0;
    double f0 = 0.0;
    double df0 = 0.0;

    double operator()(double t) const;
    double derivative(double t) const;
    double ode_residual(double t) const;  // u'' + kappa u - 1, analytically zero
};

ComparisonSolution comparison_solution(double kappa, double f0, double df0);

struct FirstZero {
    double t0 = 0.0;
    bool found = false;  // false when 1 - u has no sign change (degenerate f0 = 1)
};

/// First t > 0 with u(t) = 1 for kappa = 1 initial data with f0 < 1:
/// t0 = atan2(1 - f0, df0), which lands in (0, pi).
FirstZero first_zero(double f0, double df0);

struct ComparisonProfile {
    double kappa = 0.0;
    double f0 = 0.0;
    double df0 = 0.0;
    std::vector<double> t;  // strictly increasing, t[0] = 0
    std::vector<double> f;  // samples, f[0] = f0
    double t0 = 0.0;        // first zero of 1/kappa - u for kappa = 1, +inf for kappa = 0
};

struct OdeCompareResult {
    bool valid = false;  // discrete hypothesis f'' + kappa f >= 1 held
    bool pass = false;   // residual f - u >= -tol at every sample with t <= t0
    double worst_residual = 0.0;
    double worst_t = 0.0;
    double t0 = 0.0;
    double hypothesis_margin = 0.0;  // min of (f'' + kappa f - 1) over interior samples
};

/// Compares a sampled profile against the closed-form solution with the
/// same initial data. The hypothesis f'' + kappa f >= 1 is checked with
/// centered second differences under a step-aware tolerance of
/// 1e-9 + 10 h^2 + |hr - hl| (the last term covers the stencil's
/// first-order truncation error on non-uniform grids); violation
/// reports invalid input, not failure. The
/// comparison itself runs on [0, t0] where t0 is recomputed by bisection
/// on 1 - u (kappa = 1) or set to the sample horizon (kappa = 0).
OdeCompareResult ode_compare(const ComparisonProfile& profile, double residual_tol = 1e-8);

/// Bound for the radius from the soul in terms of the inner radius a and
/// the base angle bound A: sqrt(2a/A - a^2) for kappa = 0,
/// arccos(A / (A cos a + sin a)) for kappa = 1 (pi/2 when A = 0).
/// Domain checks are strict up to a 1e-9 relative slack for solver noise:
/// kappa = 0 needs A > 0 and 0 < a <= 1/A; kappa = 1 needs A >= 0 and
/// 0 <= a <= arccot(A).
double bound_b(double kappa, double a, double A);

struct BoundInputs {
    double kappa = 0.0;
    double a = 0.0;       // inner radius
    double A = 0.0;       // base angle lower bound
    double alpha0 = 0.0;  // angle at the soul between the witness direction
                          // and the nearest foot-point direction, in [0, pi/2]
};

/// Matched initial data (f0, df0) for the comparison profile built from
/// bound inputs: f0 = md(kappa, R - a) and df0 = (R - a) cos(alpha0) for
/// kappa = 0 or sin(R - a) cos(alpha0) for kappa = 1, with
/// R = model_radius(kappa, A).
std::pair<double, double> profile_initial_data(const BoundInputs& in);

/// Fourth-order Runge-Kutta integration of f'' + kappa f = forcing(t)
/// from (f0, df0) over [0, horizon]. Generates sampled profiles for
/// ode_compare; the comparison solution itself always stays closed form.
ComparisonProfile integrate_profile(double kappa, double f0, double df0,
                                    const std::function<double(double)>& forcing,
                                    double horizon, int steps = 2048);

}  // namespace radgeom
