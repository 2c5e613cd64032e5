// SPDX-License-Identifier: Apache-2.0
#include "radgeom/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "rng_util.hpp"

namespace radgeom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Max over sampled sphere(center, radius) points of the outside excess
/// (-rho)+, a lower bound for how far B(center, radius) pokes out of the
/// body. Zero when the ball is contained.
double ball_excess(const Body& body, const Point& center, double radius, int samples,
                   std::uint64_t seed) {
    const SpaceForm& sf = body.space();
    auto rng = detail::stream(seed, 0xba11ULL);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        Point x;
        if (sf.kappa == 0.0) {
            x = center + radius * detail::unit_vector(sf.ambient_dim(), rng);
        } else {
            x = geodesic_point(sf, center, detail::unit_tangent(center, rng), radius);
        }
        worst = std::max(worst, -rho(body, x));
    }
    return worst;
}

const char* pattern_name(RigidityPattern p) {
    switch (p) {
        case RigidityPattern::InnerEqualsModel: return "inner_equals_model";
        case RigidityPattern::RadEqualsModel: return "rad_equals_model";
        case RigidityPattern::InnerEqualsBound: return "inner_equals_bound";
    }
    return "unknown";
}

double unit_sphere_area(int n) {  // Vol_{n-1} of S^{n-1}(1) in R^n
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace

ChainResult verify_chain(const Body& body, const GeometrySummary& summary, double tol) {
    ChainResult out;
    out.tol = tol;
    double bb;
    try {
        bb = bound_b(body.space().kappa, summary.inner_radius, summary.base_angle);
    } catch (const std::domain_error&) {
        // solver noise pushed a past the admissible edge; the bound degenerates to R
        bb = summary.model_R;
    }
    out.terms = {summary.inner_radius, summary.radius, summary.soul_radius, bb,
                 summary.model_R};
    out.pass = true;
    for (int i = 0; i < 4; ++i) {
        out.slacks[static_cast<std::size_t>(i)] =
            out.terms[static_cast<std::size_t>(i + 1)] - out.terms[static_cast<std::size_t>(i)];
        if (out.slacks[static_cast<std::size_t>(i)] < -tol) out.pass = false;
    }
    return out;
}

ChainResult verify_chain(const Body& body, const VerifyOptions& opts) {
    GeometrySummary summary = summarize(body, opts.solver);
    return verify_chain(body, summary, opts.chain_tol);
}

RigidityFinding check_rigidity(const Body& body, const GeometrySummary& summary,
                               double tol, int samples, std::uint64_t seed) {
    RigidityFinding out;
    out.tol = tol;
    double bb;
    try {
        bb = bound_b(body.space().kappa, summary.inner_radius, summary.base_angle);
    } catch (const std::domain_error&) {
        bb = summary.model_R;
    }
    if (summary.inner_radius >= summary.model_R - tol)
        out.fired.push_back(RigidityPattern::InnerEqualsModel);
    if (summary.radius >= summary.model_R - tol)
        out.fired.push_back(RigidityPattern::RadEqualsModel);
    if (summary.inner_radius >= bb - tol)
        out.fired.push_back(RigidityPattern::InnerEqualsBound);
    if (out.fired.empty()) return out;

    // any equality forces the body to be the ball B(soul, a); estimate the
    // two-sided Hausdorff distance against it
    double d_body = std::max(0.0, summary.soul_radius - summary.inner_radius);
    double d_ball =
        ball_excess(body, summary.soul, summary.inner_radius, samples, seed);
    out.hausdorff = std::max(d_body, d_ball);
    out.rigid = out.hausdorff <= 5.0 * tol;
    return out;
}

VolumeEstimate boundary_volume(const Body& body, int mc_samples_per_sphere,
                               std::uint64_t seed) {
    const SpaceForm& sf = body.space();
    if (sf.kappa != 0.0)
        throw std::invalid_argument("boundary_volume: implemented for kappa = 0 only");
    const auto& balls = body.balls();
    const int n = sf.dim;
    VolumeEstimate out;

    if (n == 2) {
        out.method = "exact-arcs";
        for (std::size_t i = 0; i < balls.size(); ++i) {
            const Ball& bi = balls[i];
            std::vector<std::pair<double, double>> cons;  // (phi, m): cos(th - phi) >= m
            bool excluded = false;
            for (std::size_t j = 0; j < balls.size() && !excluded; ++j) {
                if (j == i) continue;
                Vector dc = balls[j].center - bi.center;
                double d = dc.norm();
                if (d < 1e-15) {
                    if (bi.radius > balls[j].radius) excluded = true;
                    continue;
                }
                double m = (bi.radius * bi.radius + d * d - balls[j].radius * balls[j].radius) /
                           (2.0 * bi.radius * d);
                if (m <= -1.0) continue;       // circle i entirely inside ball j
                if (m >= 1.0) {                // circle i entirely outside ball j
                    excluded = true;
                    continue;
                }
                cons.emplace_back(std::atan2(dc[1], dc[0]), m);
            }
            if (excluded) continue;
            if (cons.empty()) {
                out.value += 2.0 * kPi * bi.radius;
                continue;
            }
            std::vector<double> events;
            for (const auto& [phi, m] : cons) {
                double psi = std::acos(std::min(1.0, std::max(-1.0, m)));
                for (double e : {phi - psi, phi + psi}) {
                    e = std::fmod(e, 2.0 * kPi);
                    if (e < 0.0) e += 2.0 * kPi;
                    events.push_back(e);
                }
            }
            std::sort(events.begin(), events.end());
            events.push_back(events.front() + 2.0 * kPi);
            double measure = 0.0;
            for (std::size_t k = 0; k + 1 < events.size(); ++k) {
                double mid = 0.5 * (events[k] + events[k + 1]);
                bool ok = true;
                for (const auto& [phi, m] : cons)
                    if (std::cos(mid - phi) < m - 1e-12) {
                        ok = false;
                        break;
                    }
                if (ok) measure += events[k + 1] - events[k];
            }
            out.value += bi.radius * measure;
        }
        return out;
    }

    // n >= 3: Monte Carlo per sphere
    out.method = "monte-carlo";
    out.high_variance_warning = n >= 4;
    if (mc_samples_per_sphere < 1)
        throw std::invalid_argument("boundary_volume: need at least one sample");
    double var_sum = 0.0;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const Ball& bi = balls[i];
        auto rng = detail::stream(seed, 0x70a0ULL + i);
        long hits = 0;
        for (int s = 0; s < mc_samples_per_sphere; ++s) {
            Point x = bi.center + bi.radius * detail::unit_vector(n, rng);
            bool inside = true;
            for (std::size_t j = 0; j < balls.size(); ++j) {
                if (j == i) continue;
                if ((x - balls[j].center).norm() > balls[j].radius + 1e-12) {
                    inside = false;
                    break;
                }
            }
            if (inside) ++hits;
        }
        double p = static_cast<double>(hits) / mc_samples_per_sphere;
        double area = unit_sphere_area(n) * std::pow(bi.radius, n - 1);
        out.value += area * p;
        var_sum += area * area * p * (1.0 - p) / mc_samples_per_sphere;
    }
    out.std_error = std::sqrt(var_sum);
    return out;
}

VolumeFinding check_volume_bound(const Body& body, const GeometrySummary& summary,
                                 int mc_samples_per_sphere, std::uint64_t seed,
                                 double equality_tol) {
    if (body.space().kappa != 0.0)
        throw std::invalid_argument("check_volume_bound: kappa = 0 bodies only");
    if (summary.base_angle < 1.0 - 1e-12)
        throw std::invalid_argument("check_volume_bound: needs base angle >= 1");
    VolumeFinding out;
    out.estimate = boundary_volume(body, mc_samples_per_sphere, seed);
    out.bound = unit_sphere_area(body.space().dim);
    out.pass = out.estimate.value <= out.bound + 3.0 * out.estimate.std_error + 1e-9;

    if (out.estimate.method == "exact-arcs" &&
        std::abs(out.estimate.value - out.bound) <= equality_tol) {
        // equality case: the body must be a unit disk
        double d_body = std::max(0.0, summary.soul_radius - 1.0);
        double d_ball = ball_excess(body, summary.soul, 1.0, 512, seed ^ 0xd15cULL);
        double gap_a = std::abs(summary.inner_radius - 1.0);
        out.rigid = std::max({d_body, d_ball, gap_a}) <= 5.0 * equality_tol;
    }
    return out;
}

ProfileFinding extract_profile(const Body& body, const GeometrySummary& summary,
                               int samples) {
    if (samples < 3) throw std::invalid_argument("extract_profile: need >= 3 samples");
    const SpaceForm& sf = body.space();
    const double a = summary.inner_radius;
    const double b = summary.soul_radius;
    const double R = summary.model_R;
    if (!(b > 0.0)) throw std::invalid_argument("extract_profile: degenerate body");

    Vector dir = log_direction(sf, summary.soul, summary.soul_witness);

    // angle at the soul between the witness direction and the closest
    // foot-point direction among active balls
    double cos_alpha = 0.0;
    std::vector<int> active = summary.active_balls;
    if (active.empty()) {
        for (int i = 0; i < static_cast<int>(body.balls().size()); ++i) {
            const Ball& bl = body.balls()[static_cast<std::size_t>(i)];
            if (bl.radius - distance(sf, summary.soul, bl.center) <= a + 1e-7)
                active.push_back(i);
        }
    }
    for (int i : active) {
        const Ball& bl = body.balls()[static_cast<std::size_t>(i)];
        if (!log_direction_defined(sf, summary.soul, bl.center)) {
            cos_alpha = 1.0;  // soul at the center: every direction is radial
            break;
        }
        Vector u_away = -log_direction(sf, summary.soul, bl.center);
        cos_alpha = std::max(cos_alpha, std::min(1.0, u_away.dot(dir)));
    }
    double alpha0 = std::acos(std::min(1.0, std::max(0.0, cos_alpha)));

    BoundInputs in{sf.kappa, a, summary.base_angle, alpha0};
    auto [f0, df0] = profile_initial_data(in);

    ProfileFinding out;
    out.alpha0 = alpha0;
    out.profile.kappa = sf.kappa;
    out.profile.f0 = f0;
    out.profile.df0 = df0;
    out.profile.t.reserve(static_cast<std::size_t>(samples));
    out.profile.f.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        double t = b * (static_cast<double>(i) / (samples - 1));
        Point x = i == 0 ? summary.soul : geodesic_point(sf, summary.soul, dir, t);
        double h = std::max(0.0, rho(body, x));
        out.profile.t.push_back(t);
        out.profile.f.push_back(md(sf.kappa, std::max(0.0, R - h)));
    }
    if (sf.kappa == 1.0) {
        FirstZero fz = first_zero(f0, df0);
        out.profile.t0 = fz.found ? fz.t0 : kInf;
    } else {
        out.profile.t0 = kInf;
    }
    // The residual budget must absorb measurement noise in the inputs:
    // the soul and witness carry solver-level position error, and in
    // symmetric bodies the soul is only quadratically pinned across the
    // ridge, so the witness direction (hence the matched df0) can be off
    // by ~1e-6. That shifts the residual by at most df0_scale * 1e-6.
    const double df0_scale = sf.kappa == 0.0 ? (R - a) : std::sin(std::max(0.0, R - a));
    out.compare = ode_compare(out.profile, 1e-8 + 1e-6 * df0_scale);
    return out;
}

VerificationReport run_verification(const Body& body, const VerifyOptions& opts,
                                    const std::string& label) {
    auto t_start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.label = label;
    rep.kappa = body.space().kappa;
    rep.dim = body.space().dim;
    rep.ball_count = static_cast<int>(body.balls().size());
    rep.seed = opts.seed;
    rep.chain_tol = opts.chain_tol;
    rep.rigidity_tol = opts.rigidity_tol;

    rep.summary = summarize(body, opts.solver);
    if (!rep.summary.solver_converged)
        rep.notes.push_back("solver finished without a convergence certificate");

    rep.interior_max =
        interior_radius_check(body, rep.summary.soul, opts.interior_trials,
                              opts.seed ^ 0x17a1ULL);
    rep.interior_ok = rep.interior_max <= rep.summary.soul_radius + 1e-6;

    rep.chain = verify_chain(body, rep.summary, opts.chain_tol);
    if (!rep.chain.pass) rep.notes.push_back("inequality chain violated beyond tolerance");

    rep.rigidity = check_rigidity(body, rep.summary, opts.rigidity_tol,
                                  opts.hausdorff_samples, opts.seed ^ 0x99ULL);
    for (RigidityPattern p : rep.rigidity.fired) {
        std::string note = std::string("rigidity pattern fired: ") + pattern_name(p);
        note += rep.rigidity.rigid ? " (ball certified)" : " (ball NOT certified)";
        rep.notes.push_back(note);
    }

    if (opts.with_volume) {
        if (body.space().kappa == 0.0 && rep.summary.base_angle >= 1.0 - 1e-12) {
            rep.volume = check_volume_bound(body, rep.summary, opts.volume_mc_samples,
                                            opts.seed ^ 0x70aULL, opts.rigidity_tol);
            if (!rep.volume->pass)
                rep.notes.push_back("boundary volume exceeds the model sphere bound");
        } else {
            rep.notes.push_back(
                "boundary volume bound skipped (needs kappa = 0 and base angle >= 1)");
        }
    }

    ProfileFinding pf = extract_profile(body, rep.summary, opts.profile_samples);
    rep.profile_valid = pf.compare.valid;
    rep.profile_pass = pf.compare.pass;
    rep.profile_alpha0 = pf.alpha0;
    rep.profile_worst_residual = pf.compare.worst_residual;
    rep.profile_t0 = pf.compare.t0;
    if (!pf.compare.valid)
        rep.notes.push_back("profile hypothesis failed at the discrete level");
    else if (!pf.compare.pass)
        rep.notes.push_back("profile dips below the comparison solution");

    if (opts.with_estimator) {
        double min_r = kInf;
        for (const Ball& bl : body.balls()) min_r = std::min(min_r, bl.radius);
        std::vector<double> chords;
        for (double s : {0.2, 0.1, 0.05}) {
            double c = std::max(s * min_r, tol::chord_floor);
            if (chords.empty() || c < chords.back() - 1e-15) chords.push_back(c);
        }
        EstimatorCheck ec;
        ec.proxy = base_angle_lower_bound(body);
        std::vector<std::pair<double, double>> worst(chords.size(), {0.0, kInf});
        for (std::size_t k = 0; k < chords.size(); ++k) worst[k].first = chords[k];
        auto probe = [&](const BoundarySample& s) {
            try {
                BaseAngleEstimate est =
                    base_angle_estimate(body, s, chords, 16, opts.seed ^ 0xec0ULL);
                if (est.corner) ++ec.corner_samples;
                if (est.ratios.empty()) return;
                ++ec.samples_used;
                for (const auto& [len, ratio] : est.ratios)
                    for (auto& w : worst)
                        if (std::abs(w.first - len) < 1e-15)
                            w.second = std::min(w.second, ratio);
            } catch (const std::exception&) {
                // estimator not applicable at this sample (chords leave the patch)
            }
        };
        for (const BoundarySample& s : sample_boundary(body, 4, opts.seed ^ 0x5a3ULL))
            probe(s);
        for (auto& w : worst)
            if (w.second < kInf) ec.ratios.push_back(w);
        rep.estimator = std::move(ec);
    }

    if (opts.with_timings) {
        auto t_end = std::chrono::steady_clock::now();
        rep.runtime_ms =
            std::chrono::duration<double, std::milli>(t_end - t_start).count();
    }
    return rep;
}

bool all_checks_pass(const VerificationReport& report) {
    if (!report.chain.pass || !report.interior_ok) return false;
    if (!report.profile_valid || !report.profile_pass) return false;
    if (report.volume && !report.volume->pass) return false;
    return true;
}

std::string to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["label"] = r.label;
    j["kappa"] = r.kappa;
    j["dim"] = r.dim;
    j["ball_count"] = r.ball_count;
    j["seed"] = r.seed;
    j["tolerances"] = {{"chain", r.chain_tol}, {"rigidity", r.rigidity_tol}};

    auto vec = [](const Point& p) {
        std::vector<double> v(p.data(), p.data() + p.size());
        return v;
    };
    nlohmann::ordered_json sum;
    sum["inner_radius"] = r.summary.inner_radius;
    sum["soul"] = vec(r.summary.soul);
    sum["soul_radius"] = r.summary.soul_radius;
    sum["soul_witness"] = vec(r.summary.soul_witness);
    sum["radius"] = r.summary.radius;
    sum["center"] = vec(r.summary.center);
    sum["base_angle"] = r.summary.base_angle;
    sum["model_R"] = r.summary.model_R;
    sum["solver_converged"] = r.summary.solver_converged;
    sum["soul_unique"] = r.summary.soul_unique;
    sum["active_balls"] = r.summary.active_balls;
    j["summary"] = sum;

    j["interior"] = {{"max_distance", r.interior_max}, {"ok", r.interior_ok}};
    j["chain"] = {{"terms", r.chain.terms},
                  {"slacks", r.chain.slacks},
                  {"pass", r.chain.pass},
                  {"tol", r.chain.tol}};

    nlohmann::ordered_json rig;
    std::vector<std::string> fired;
    for (RigidityPattern p : r.rigidity.fired) fired.emplace_back(pattern_name(p));
    rig["fired"] = fired;
    rig["rigid"] = r.rigidity.rigid;
    rig["hausdorff"] = r.rigidity.hausdorff;
    rig["tol"] = r.rigidity.tol;
    j["rigidity"] = rig;

    if (r.volume) {
        j["volume"] = {{"value", r.volume->estimate.value},
                       {"std_error", r.volume->estimate.std_error},
                       {"method", r.volume->estimate.method},
                       {"high_variance_warning", r.volume->estimate.high_variance_warning},
                       {"bound", r.volume->bound},
                       {"pass", r.volume->pass},
                       {"rigid", r.volume->rigid}};
    }

    j["profile"] = {{"valid", r.profile_valid},
                    {"pass", r.profile_pass},
                    {"alpha0", r.profile_alpha0},
                    {"worst_residual", r.profile_worst_residual},
                    {"t0", r.profile_t0 == kInf ? -1.0 : r.profile_t0}};

    if (r.estimator) {
        nlohmann::ordered_json est;
        est["proxy"] = r.estimator->proxy;
        nlohmann::ordered_json ratios = nlohmann::ordered_json::array();
        for (const auto& [len, ratio] : r.estimator->ratios)
            ratios.push_back({{"chord", len}, {"ratio", ratio}});
        est["ratios"] = ratios;
        est["samples_used"] = r.estimator->samples_used;
        est["corner_samples"] = r.estimator->corner_samples;
        j["estimator"] = est;
    }

    j["notes"] = r.notes;
    if (r.runtime_ms) j["runtime_ms"] = *r.runtime_ms;
    return j.dump(2);
}

std::string csv_header() {
    return "seed,kappa,dim,A,a,rad,b,bound_b,model_R,chain_pass,profile_pass,rigid";
}

std::string csv_row(const VerificationReport& r) {
    std::string row;
    row += std::to_string(r.seed);
    row += ',';
    row += fmt_double(r.kappa);
    row += ',';
    row += std::to_string(r.dim);
    for (double v : {r.summary.base_angle, r.summary.inner_radius, r.summary.radius,
                     r.summary.soul_radius, r.chain.terms[3], r.summary.model_R}) {
        row += ',';
        row += fmt_double(v);
    }
    row += r.chain.pass ? ",1" : ",0";
    row += (r.profile_valid && r.profile_pass) ? ",1" : ",0";
    row += r.rigidity.rigid ? ",1" : ",0";
    return row;
}

}  // namespace radgeom
