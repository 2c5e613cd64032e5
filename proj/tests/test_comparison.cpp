// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "radgeom/comparison.hpp"
#include "radgeom/space_form.hpp"

using radgeom::ComparisonProfile;
using radgeom::comparison_solution;
using radgeom::first_zero;
using radgeom::ode_compare;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_grid(double hi, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = hi * i / (n - 1);
    return t;
}

ComparisonProfile sampled(double kappa, double f0, double df0,
                          const std::vector<double>& t, const std::vector<double>& f) {
    ComparisonProfile p;
    p.kappa = kappa;
    p.f0 = f0;
    p.df0 = df0;
    p.t = t;
    p.f = f;
    p.t0 = kappa == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return p;
}

// five-point central second difference, O(h^4)
double second_derivative(const radgeom::ComparisonSolution& u, double t, double h) {
    return (-u(t - 2 * h) + 16 * u(t - h) - 30 * u(t) + 16 * u(t + h) - u(t + 2 * h)) /
           (12.0 * h * h);
}
}  // namespace

TEST_CASE("closed-form comparison solutions take their reference shapes") {
    SUBCASE("kappa 1, zero initial data gives 1 - cos t") {
        auto u = comparison_solution(1.0, 0.0, 0.0);
        for (double t : uniform_grid(3.0, 61)) {
            CHECK(u(t) == doctest::Approx(1.0 - std::cos(t)).epsilon(1e-15));
            CHECK(u.derivative(t) == doctest::Approx(std::sin(t)).epsilon(1e-15));
        }
    }
    SUBCASE("kappa 0 with f0 = 0.125 gives (t^2 + 0.25)/2") {
        auto u = comparison_solution(0.0, 0.125, 0.0);
        for (double t : uniform_grid(2.0, 41)) {
            CHECK(u(t) == doctest::Approx((t * t + 0.25) / 2.0).epsilon(1e-15));
        }
    }
    SUBCASE("constructor validates kappa") {
        CHECK_THROWS_AS(comparison_solution(2.0, 0.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("closed forms solve their equation to below 1e-10") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u01(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double kappa = trial % 2 == 0 ? 1.0 : 0.0;
        const double f0 = u01(rng), df0 = u01(rng);
        auto u = comparison_solution(kappa, f0, df0);
        for (double t : {0.3, 0.9, 1.7, 2.5}) {
            const double fd = second_derivative(u, t, 5e-3);
            CHECK(std::abs(fd + kappa * u(t) - 1.0) < 1e-10);
            CHECK(std::abs(u.ode_residual(t)) < 1e-12);
        }
    }
}

TEST_CASE("first return times match the scan-and-bisect oracle") {
    // frozen reference values, confirmed by the oracle before hard-coding
    auto fz = first_zero(0.0, 0.0);
    REQUIRE(fz.found);
    CHECK(fz.t0 == doctest::Approx(kPi / 2.0).epsilon(1e-14));

    fz = first_zero(0.0, 1.0);
    REQUIRE(fz.found);
    CHECK(fz.t0 == doctest::Approx(kPi / 4.0).epsilon(1e-14));
    CHECK(fz.t0 == doctest::Approx(oracle::first_return_bisect(0.0, 1.0)).epsilon(1e-12));

    fz = first_zero(0.5, -0.2);
    REQUIRE(fz.found);
    CHECK(fz.t0 == doctest::Approx(1.951302703907261).epsilon(1e-12));

    fz = first_zero(1.0, 2.0);
    REQUIRE(fz.found);
    CHECK(fz.t0 == doctest::Approx(kPi).epsilon(1e-12));

    CHECK_FALSE(first_zero(1.0, 0.0).found);

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uf(-2.0, 0.99), ud(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        const double f0 = uf(rng), df0 = ud(rng);
        auto z = first_zero(f0, df0);
        REQUIRE(z.found);
        CHECK(z.t0 > 0.0);
        CHECK(z.t0 <= kPi + 1e-12);
        auto u = comparison_solution(1.0, f0, df0);
        CHECK(std::abs(u(z.t0) - 1.0) < 1e-12);
        CHECK(z.t0 == doctest::Approx(oracle::first_return_bisect(f0, df0)).epsilon(1e-10));
    }
}

TEST_CASE("profiles equal to the closed form pass the comparison") {
    SUBCASE("kappa 1") {
        auto u = comparison_solution(1.0, 0.3, 0.2);
        auto t = uniform_grid(2.0, 2049);
        std::vector<double> f;
        for (double tt : t) f.push_back(u(tt));
        auto res = ode_compare(sampled(1.0, 0.3, 0.2, t, f));
        CHECK(res.valid);
        CHECK(res.pass);
        CHECK(res.worst_residual >= -1e-10);
        CHECK(res.worst_residual <= 1e-10);
        CHECK(res.t0 == doctest::Approx(first_zero(0.3, 0.2).t0).epsilon(1e-10));
        CHECK(std::abs(res.hypothesis_margin) < 1e-5);  // second-difference noise only
    }
    SUBCASE("kappa 0 runs to the sample horizon") {
        auto u = comparison_solution(0.0, 0.125, 0.0);
        auto t = uniform_grid(1.5, 1025);
        std::vector<double> f;
        for (double tt : t) f.push_back(u(tt));
        auto res = ode_compare(sampled(0.0, 0.125, 0.0, t, f));
        CHECK(res.valid);
        CHECK(res.pass);
        CHECK(res.t0 == doctest::Approx(1.5).epsilon(1e-12));
    }
    SUBCASE("nonuniform sample times are handled") {
        auto u = comparison_solution(1.0, 0.1, 0.4);
        std::vector<double> t;
        for (int i = 0; i < 801; ++i) t.push_back(2.0 * std::pow(i / 800.0, 1.5));
        std::vector<double> f;
        for (double tt : t) f.push_back(u(tt));
        auto res = ode_compare(sampled(1.0, 0.1, 0.4, t, f));
        CHECK(res.valid);
        CHECK(res.pass);
    }
}

TEST_CASE("profiles forced above the threshold dominate the closed form") {
    SUBCASE("constant forcing 1.1") {
        auto t = uniform_grid(2.0, 2049);
        auto f = oracle::rk4(1.0, 0.0, 0.0, [](double) { return 1.1; }, t);
        auto res = ode_compare(sampled(1.0, 0.0, 0.0, t, f));
        CHECK(res.valid);
        CHECK(res.hypothesis_margin > 0.05);  // roughly 0.1 up to difference noise
        CHECK(res.pass);
        CHECK(res.worst_residual >= -1e-10);
        // the gap is strictly positive away from t = 0
        auto u = comparison_solution(1.0, 0.0, 0.0);
        for (int i = 400; i < 1200; ++i) CHECK(f[i] - u(t[i]) > 0.0);
    }
    SUBCASE("growing forcing 1 + t^2") {
        auto t = uniform_grid(2.5, 2049);
        auto f = oracle::rk4(1.0, 0.5, -0.2, [](double tt) { return 1.0 + tt * tt; }, t);
        auto res = ode_compare(sampled(1.0, 0.5, -0.2, t, f));
        CHECK(res.valid);
        CHECK(res.pass);
        CHECK(res.t0 == doctest::Approx(1.951302703907261).epsilon(1e-9));
    }
    SUBCASE("flat case with forcing 1.05") {
        auto t = uniform_grid(2.0, 2049);
        auto f = oracle::rk4(0.0, 0.2, 0.1, [](double) { return 1.05; }, t);
        auto res = ode_compare(sampled(0.0, 0.2, 0.1, t, f));
        CHECK(res.valid);
        CHECK(res.pass);
    }
}

TEST_CASE("forcing below the threshold is invalid input, not failure") {
    auto t = uniform_grid(2.0, 2049);
    auto f = oracle::rk4(1.0, 0.0, 0.0, [](double) { return 0.9; }, t);
    auto res = ode_compare(sampled(1.0, 0.0, 0.0, t, f));
    CHECK_FALSE(res.valid);
    CHECK(res.hypothesis_margin < -0.05);
}

TEST_CASE("profile validation rejects malformed grids") {
    auto u = comparison_solution(1.0, 0.0, 0.0);
    std::vector<double> t2{0.0, 1.0};
    std::vector<double> f2{u(0.0), u(1.0)};
    CHECK_THROWS_AS(ode_compare(sampled(1.0, 0.0, 0.0, t2, f2)), std::invalid_argument);

    std::vector<double> bad_start{0.5, 1.0, 1.5};
    std::vector<double> f3{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(ode_compare(sampled(1.0, 0.0, 0.0, bad_start, f3)),
                    std::invalid_argument);

    std::vector<double> not_increasing{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(ode_compare(sampled(1.0, 0.0, 0.0, not_increasing, f3)),
                    std::invalid_argument);

    auto p = sampled(2.0, 0.0, 0.0, uniform_grid(1.0, 5), {0, 0, 0, 0, 0});
    CHECK_THROWS_AS(ode_compare(p), std::invalid_argument);
}

TEST_CASE("soul-radius bound takes its reference values") {
    CHECK(radgeom::bound_b(0.0, 0.5, 1.0) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
    // at a = R the bound collapses to R itself
    for (double A : {0.5, 1.0, 2.0}) {
        CHECK(radgeom::bound_b(0.0, 1.0 / A, A) == doctest::Approx(1.0 / A).epsilon(1e-12));
    }
    for (double A : {0.0, 0.5, 1.0, 2.0}) {
        const double R = radgeom::model_radius(1.0, A);
        CHECK(radgeom::bound_b(1.0, R, A) == doctest::Approx(R).epsilon(1e-12));
    }
    CHECK(radgeom::bound_b(1.0, 0.3, 0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(radgeom::bound_b(1.0, kPi / 4.0, 1.0) == doctest::Approx(kPi / 4.0).epsilon(1e-12));
}

TEST_CASE("soul-radius bound is monotone and dominated by the model radius") {
    for (double kappa : {0.0, 1.0}) {
        for (double A : {0.5, 1.0, 2.0}) {
            const double R = radgeom::model_radius(kappa, A);
            double prev = 0.0;
            for (int i = 1; i <= 400; ++i) {
                const double a = R * i / 400.0;
                const double bb = radgeom::bound_b(kappa, a, A);
                CHECK(bb >= prev - 1e-12);
                CHECK(bb <= R + 1e-12);
                CHECK(bb >= a - 1e-12);
                prev = bb;
            }
        }
    }
}

TEST_CASE("soul-radius bound rejects out-of-domain arguments with slack") {
    CHECK_THROWS_AS(radgeom::bound_b(0.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(radgeom::bound_b(0.0, 1.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(radgeom::bound_b(0.0, 0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(radgeom::bound_b(1.0, 0.5, -0.1), std::domain_error);
    CHECK_THROWS_AS(radgeom::bound_b(1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(radgeom::bound_b(2.0, 0.5, 1.0), std::invalid_argument);
    // solver noise just past the endpoint is tolerated
    CHECK_NOTHROW(radgeom::bound_b(0.0, 1.0 + 1e-10, 1.0));
    CHECK_NOTHROW(radgeom::bound_b(1.0, kPi / 4.0 + 1e-10, 1.0));
}

TEST_CASE("matched initial data follows the bound inputs") {
    radgeom::BoundInputs in;
    in.kappa = 0.0;
    in.a = 0.5;
    in.A = 1.0;
    in.alpha0 = kPi / 2.0;
    auto [f0, df0] = radgeom::profile_initial_data(in);
    CHECK(f0 == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(std::abs(df0) < 1e-15);

    in.alpha0 = 0.0;
    auto [f0b, df0b] = radgeom::profile_initial_data(in);
    CHECK(f0b == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(df0b == doctest::Approx(0.5).epsilon(1e-15));

    in.kappa = 1.0;
    in.a = 0.2;
    in.A = 1.0;
    in.alpha0 = 0.0;
    const double R = kPi / 4.0;
    auto [f0c, df0c] = radgeom::profile_initial_data(in);
    CHECK(f0c == doctest::Approx(1.0 - std::cos(R - 0.2)).epsilon(1e-14));
    CHECK(df0c == doctest::Approx(std::sin(R - 0.2)).epsilon(1e-14));

    in.alpha0 = 4.0;
    CHECK_THROWS_AS(radgeom::profile_initial_data(in), std::invalid_argument);
    in.alpha0 = 0.0;
    in.a = 2.0;
    CHECK_THROWS_AS(radgeom::profile_initial_data(in), std::invalid_argument);
}

TEST_CASE("built-in integrator reproduces the closed form under unit forcing") {
    for (double kappa : {0.0, 1.0}) {
        auto profile =
            radgeom::integrate_profile(kappa, 0.3, 0.1, [](double) { return 1.0; }, 2.0);
        auto u = comparison_solution(kappa, 0.3, 0.1);
        REQUIRE(profile.t.size() == profile.f.size());
        double worst = 0.0;
        for (std::size_t i = 0; i < profile.t.size(); ++i)
            worst = std::max(worst, std::abs(profile.f[i] - u(profile.t[i])));
        CHECK(worst < 1e-10);
        auto res = ode_compare(profile);
        CHECK(res.valid);
        CHECK(res.pass);
    }
    CHECK_THROWS_AS(
        radgeom::integrate_profile(1.0, 0.0, 0.0, [](double) { return 1.0; }, -1.0),
        std::invalid_argument);
}
