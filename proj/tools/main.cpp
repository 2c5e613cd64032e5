// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: gen / verify / example / ode / sweep.
// Exit status: 0 all checks pass, 1 a check failed, 2 input error.

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "radgeom/body_io.hpp"
#include "radgeom/generate.hpp"
#include "radgeom/verify.hpp"

namespace {

struct BallRange {
    int lo = 2;
    int hi = 4;
};

BallRange parse_ball_range(const std::string& text) {
    BallRange r;
    auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dash));
            r.hi = std::stoi(text.substr(dash + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("--balls", "expected N or N-M");
    }
    if (r.lo < 1 || r.hi < r.lo) throw CLI::ValidationError("--balls", "expected 1 <= N <= M");
    return r;
}

std::vector<double> parse_forcing(const std::string& text) {
    std::vector<double> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            coeffs.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--forcing", "expected comma-separated numbers");
        }
    }
    if (coeffs.empty()) throw CLI::ValidationError("--forcing", "expected at least one coefficient");
    return coeffs;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path + ": write failed");
}

int emit_report(const radgeom::VerificationReport& rep, const std::string& format,
                const std::string& out_path) {
    std::string text;
    if (format == "csv") {
        text = radgeom::csv_header() + "\n" + radgeom::csv_row(rep) + "\n";
    } else {
        text = radgeom::to_json(rep) + "\n";
    }
    write_text(out_path, text);
    return radgeom::all_checks_pass(rep) ? 0 : 1;
}

struct SweepConfig {
    radgeom::GenParams gen;
    radgeom::VerifyOptions verify;
    std::uint64_t seed = 0;
    int count = 0;
};

int run_sweep(const SweepConfig& cfg, std::string& csv, std::string& error) {
    csv = radgeom::csv_header() + "\n";
    if (cfg.count == 0) return 0;
    std::vector<std::string> rows(static_cast<std::size_t>(cfg.count));
    std::vector<char> ok(static_cast<std::size_t>(cfg.count), 0);
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;

    auto job = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            try {
                std::uint64_t s = cfg.seed + i;
                radgeom::Body body = radgeom::generate_body(cfg.gen, s);
                radgeom::VerifyOptions vo = cfg.verify;
                vo.seed = s;
                vo.solver.seed = s ^ 0x5eed5eedULL;
                auto rep = radgeom::run_verification(body, vo, "sweep-" + std::to_string(i));
                rows[i] = radgeom::csv_row(rep);
                ok[i] = radgeom::all_checks_pass(rep) ? 1 : 0;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (error.empty())
                    error = "body " + std::to_string(i) + ": " + e.what();
            }
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    int workers = static_cast<int>(std::min(hw == 0 ? 1u : hw, 16u));
    workers = std::min<int>(workers, cfg.count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(job);
    for (std::thread& t : pool) t.join();
    if (!error.empty()) return 2;

    bool all_ok = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {  // input order: deterministic bytes
        csv += rows[i];
        csv += '\n';
        if (!ok[i]) all_ok = false;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex bodies from metric balls: radius chains and comparison checks"};
    app.require_subcommand(1);

    // ---- gen -------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a random body file");
    double g_kappa = 0.0;
    int g_dim = 2;
    std::string g_balls = "2-4";
    double g_rmin = 0.3, g_rmax = 1.0, g_ta = 1.0;
    std::uint64_t g_seed = 7;
    std::string g_out;
    gen->add_option("--kappa", g_kappa, "curvature (0 or 1)")->check(CLI::IsMember({0.0, 1.0}));
    gen->add_option("--dim", g_dim, "dimension n >= 2")->check(CLI::PositiveNumber);
    gen->add_option("--balls", g_balls, "ball count: N or N-M");
    gen->add_option("--radius-min", g_rmin, "smallest ball radius");
    gen->add_option("--radius-max", g_rmax, "largest ball radius");
    gen->add_option("--target-A", g_ta, "base angle target; radii must fit its model radius");
    gen->add_option("--seed", g_seed, "generation seed");
    gen->add_option("--out", g_out, "output path (default stdout)");

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "verify a body file");
    std::string v_file;
    double v_tol = 1e-5;
    int v_samples = 1024;
    std::uint64_t v_seed = 17;
    std::string v_format = "report", v_out;
    verify->add_option("file", v_file, "body file to verify")->required();
    verify->add_option("--tol", v_tol, "chain tolerance");
    verify->add_option("--samples", v_samples, "boundary sample count")->check(CLI::PositiveNumber);
    verify->add_option("--seed", v_seed, "verification seed");
    verify->add_option("--format", v_format, "report | csv")
        ->check(CLI::IsMember({"report", "csv"}));
    verify->add_option("--out", v_out, "output path (default stdout)");

    // ---- example ---------------------------------------------------------
    auto* example = app.add_subcommand("example", "three-ball cut-tip body, verified");
    double e_A = 1.0, e_a = 0.5, e_eps = 0.1, e_tol = 1e-5;
    std::uint64_t e_seed = 23;
    std::string e_format = "report", e_out;
    example->add_option("--A", e_A, "base angle target");
    example->add_option("--a", e_a, "inner radius");
    example->add_option("--eps", e_eps, "tip cut depth");
    example->add_option("--tol", e_tol, "chain tolerance");
    example->add_option("--seed", e_seed, "verification seed");
    example->add_option("--format", e_format, "report | csv")
        ->check(CLI::IsMember({"report", "csv"}));
    example->add_option("--out", e_out, "output path (default stdout)");

    // ---- ode -------------------------------------------------------------
    auto* ode = app.add_subcommand("ode", "integrate a profile and compare");
    double o_kappa = 1.0, o_f0 = 0.0, o_df0 = 0.0, o_horizon = 0.0;
    int o_steps = 2048;
    std::string o_forcing = "1";
    ode->add_option("--kappa", o_kappa, "curvature (0 or 1)")->check(CLI::IsMember({0.0, 1.0}));
    ode->add_option("--f0", o_f0, "initial value");
    ode->add_option("--df0", o_df0, "initial slope");
    ode->add_option("--forcing", o_forcing, "polynomial coefficients c0,c1,c2,...");
    ode->add_option("--horizon", o_horizon, "integration horizon (default pi for kappa=1, 2 else)")
        ->check(CLI::PositiveNumber);
    ode->add_option("--steps", o_steps, "integration steps")->check(CLI::PositiveNumber);

    // ---- sweep -----------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "batch of generated bodies, CSV of chain results");
    SweepConfig s_cfg;
    std::string s_balls = "2-4", s_out;
    std::uint64_t s_seed = 0;
    int s_count = 100;
    double s_kappa = 0.0, s_rmin = 0.3, s_rmax = 1.0, s_ta = 1.0, s_tol = 1e-5;
    int s_dim = 2, s_samples = 1024;
    sweep->add_option("--count", s_count, "number of bodies")->check(CLI::NonNegativeNumber);
    sweep->add_option("--kappa", s_kappa, "curvature (0 or 1)")->check(CLI::IsMember({0.0, 1.0}));
    sweep->add_option("--dim", s_dim, "dimension n >= 2")->check(CLI::PositiveNumber);
    sweep->add_option("--balls", s_balls, "ball count: N or N-M");
    sweep->add_option("--radius-min", s_rmin, "smallest ball radius");
    sweep->add_option("--radius-max", s_rmax, "largest ball radius");
    sweep->add_option("--target-A", s_ta, "base angle target");
    sweep->add_option("--seed", s_seed, "batch seed (required: no ambient entropy)")->required();
    sweep->add_option("--tol", s_tol, "chain tolerance");
    sweep->add_option("--samples", s_samples, "boundary sample count")->check(CLI::PositiveNumber);
    sweep->add_option("--out", s_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) {
            BallRange br = parse_ball_range(g_balls);
            radgeom::GenParams gp;
            gp.kappa = g_kappa;
            gp.dim = g_dim;
            gp.balls_min = br.lo;
            gp.balls_max = br.hi;
            gp.radius_min = g_rmin;
            gp.radius_max = g_rmax;
            gp.target_A = g_ta;
            radgeom::Body body = radgeom::generate_body(gp, g_seed);
            write_text(g_out, radgeom::body_to_json(body));
            return 0;
        }

        if (*verify) {
            radgeom::Body body = radgeom::read_body_file(v_file);
            radgeom::VerifyOptions vo;
            vo.chain_tol = v_tol;
            vo.seed = v_seed;
            vo.solver.seed = v_seed ^ 0x5eed5eedULL;
            vo.solver.boundary_samples = v_samples;
            auto rep = radgeom::run_verification(body, vo, v_file);
            return emit_report(rep, v_format, v_out);
        }

        if (*example) {
            radgeom::Body body = radgeom::make_cutthetip(e_A, e_a, e_eps);
            radgeom::VerifyOptions vo;
            vo.chain_tol = e_tol;
            vo.seed = e_seed;
            vo.solver.seed = e_seed ^ 0x5eed5eedULL;
            auto rep = radgeom::run_verification(body, vo, "cut-tip");
            return emit_report(rep, e_format, e_out);
        }

        if (*ode) {
            std::vector<double> coeffs = parse_forcing(o_forcing);
            double horizon = o_horizon > 0.0 ? o_horizon
                                             : (o_kappa == 1.0 ? std::numbers::pi : 2.0);
            auto forcing = [&coeffs](double t) {
                double acc = 0.0;
                for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
                return acc;
            };
            auto profile =
                radgeom::integrate_profile(o_kappa, o_f0, o_df0, forcing, horizon, o_steps);
            auto cmp = radgeom::ode_compare(profile);
            std::cout << "valid: " << (cmp.valid ? "yes" : "no") << "\n"
                      << "pass: " << (cmp.pass ? "yes" : "no") << "\n"
                      << "worst_residual: " << cmp.worst_residual << "\n"
                      << "worst_t: " << cmp.worst_t << "\n"
                      << "t0: " << cmp.t0 << "\n"
                      << "hypothesis_margin: " << cmp.hypothesis_margin << "\n";
            if (!cmp.valid) {
                std::cerr << "input violates the hypothesis f'' + kappa f >= 1\n";
                return 2;
            }
            return cmp.pass ? 0 : 1;
        }

        if (*sweep) {
            BallRange br = parse_ball_range(s_balls);
            s_cfg.gen.kappa = s_kappa;
            s_cfg.gen.dim = s_dim;
            s_cfg.gen.balls_min = br.lo;
            s_cfg.gen.balls_max = br.hi;
            s_cfg.gen.radius_min = s_rmin;
            s_cfg.gen.radius_max = s_rmax;
            s_cfg.gen.target_A = s_ta;
            s_cfg.verify.chain_tol = s_tol;
            s_cfg.verify.solver.boundary_samples = s_samples;
            s_cfg.seed = s_seed;
            s_cfg.count = s_count;
            std::string csv, error;
            int code = run_sweep(s_cfg, csv, error);
            if (code == 2) {
                std::cerr << error << "\n";
                return 2;
            }
            write_text(s_out, csv);
            return code;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;  // unreachable: a subcommand is required
}
