// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radgeom/body.hpp"
#include "radgeom/comparison.hpp"
#include "radgeom/solver.hpp"

namespace radgeom {

struct VerifyOptions {
    SolverOptions solver;
    double chain_tol = 1e-5;
    double rigidity_tol = 1e-5;
    int hausdorff_samples = 512;
    int interior_trials = 20000;
    int volume_mc_samples = 200000;  // per sphere when dim >= 3
    int profile_samples = 257;
    std::uint64_t seed = 17;
    bool with_volume = true;     // boundary volume check (kappa = 0 only)
    bool with_estimator = true;  // chord estimator spot check in the report
    bool with_timings = false;   // reports stay byte-identical unless enabled
};

struct ChainResult {
    std::array<double, 5> terms{};   // a, rad, b, bound_b(a, A), model_R
    std::array<double, 4> slacks{};  // consecutive differences
    bool pass = false;
    double tol = 0.0;
};

/// Checks a <= Rad <= b <= bound_b(a, A) <= R(kappa, A) with the
/// certified base angle bound A of the body.
ChainResult verify_chain(const Body& body, const GeometrySummary& summary, double tol);
ChainResult verify_chain(const Body& body, const VerifyOptions& opts = {});

enum class RigidityPattern {
    InnerEqualsModel,  // a = R
    RadEqualsModel,    // Rad = R
    InnerEqualsBound,  // a = bound_b(a, A)
};

struct RigidityFinding {
    std::vector<RigidityPattern> fired;
    bool rigid = false;      // body matches the metric ball B(soul, a)
    double hausdorff = -1.0; // sampled two-sided estimate; negative if not computed
    double tol = 0.0;
};

/// Detects the equality patterns that force the body to be a metric
/// ball, and when one fires verifies B(soul, a) against the body with a
/// sampled two-sided Hausdorff estimate (accepted below 5 * tol).
RigidityFinding check_rigidity(const Body& body, const GeometrySummary& summary,
                               double tol, int samples = 512, std::uint64_t seed = 99);

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;        // zero for the exact method
    std::string method;            // "exact-arcs" or "monte-carlo"
    bool high_variance_warning = false;  // set for dim >= 4
};

/// Boundary (n-1)-volume for kappa = 0 bodies. n = 2 sums exact arc
/// intervals per circle; n >= 3 estimates per sphere by Monte Carlo
/// membership counting with a binomial standard error.
VolumeEstimate boundary_volume(const Body& body, int mc_samples_per_sphere = 200000,
                               std::uint64_t seed = 7);

struct VolumeFinding {
    VolumeEstimate estimate;
    double bound = 0.0;  // Vol_{n-1}(S^{n-1}(1))
    bool pass = false;
    bool rigid = false;  // equality case certified as the unit ball (n = 2 exact only)
};

/// Checks Vol_{n-1}(boundary) <= Vol_{n-1}(S^{n-1}(1)) for kappa = 0
/// bodies with certified base angle >= 1 (throws when the hypothesis is
/// not met). Near-equality with the exact n = 2 method additionally
/// asserts the body is the unit disk via Hausdorff sampling.
VolumeFinding check_volume_bound(const Body& body, const GeometrySummary& summary,
                                 int mc_samples_per_sphere = 200000,
                                 std::uint64_t seed = 7, double equality_tol = 1e-5);

struct ProfileFinding {
    ComparisonProfile profile;
    OdeCompareResult compare;
    double alpha0 = 0.0;
};

/// Samples h(t) = rho along the soul-to-witness geodesic, transforms it
/// to f = md(kappa, R - h), measures alpha0 from the active balls at the
/// soul, and runs the ODE comparison against the matched closed form.
ProfileFinding extract_profile(const Body& body, const GeometrySummary& summary,
                               int samples = 257);

struct EstimatorCheck {
    double proxy = 0.0;  // base_angle_lower_bound
    std::vector<std::pair<double, double>> ratios;  // worst 2*alpha/r per chord length
    int samples_used = 0;
    int corner_samples = 0;
};

struct VerificationReport {
    std::string label;
    double kappa = 0.0;
    int dim = 0;
    int ball_count = 0;
    std::uint64_t seed = 0;
    double chain_tol = 0.0;
    double rigidity_tol = 0.0;
    GeometrySummary summary;
    double interior_max = 0.0;
    bool interior_ok = false;
    ChainResult chain;
    RigidityFinding rigidity;
    std::optional<VolumeFinding> volume;
    bool profile_valid = false;
    bool profile_pass = false;
    double profile_alpha0 = 0.0;
    double profile_worst_residual = 0.0;
    double profile_t0 = 0.0;
    std::optional<EstimatorCheck> estimator;
    std::vector<std::string> notes;
    std::optional<double> runtime_ms;  // only with VerifyOptions::with_timings
};

VerificationReport run_verification(const Body& body, const VerifyOptions& opts = {},
                                    const std::string& label = "body");

bool all_checks_pass(const VerificationReport& report);

/// Fixed field order; byte-identical for identical inputs and seeds.
std::string to_json(const VerificationReport& report);

std::string csv_header();
std::string csv_row(const VerificationReport& report);

}  // namespace radgeom
