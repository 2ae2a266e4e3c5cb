// stefan-front: command-line driver for the free-boundary front laboratory.
//
//   stefan-front run <config.json>       one scenario, outputs + exit code
//   stefan-front sweep <configs.json>    array of scenarios, summary table
//   stefan-front semiwave --f logistic --mu 1.0 --tol 1e-8
//   stefan-front fbsolve --config run.json
//   stefan-front diagnose --traj out/ --check drift,speed,levelset

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sfront/apsteady.hpp"
#include "sfront/diagnostics.hpp"
#include "sfront/errors.hpp"
#include "sfront/fbsolver.hpp"
#include "sfront/scenarios.hpp"
#include "sfront/semiwave.hpp"
#include "sfront/trajectory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void print_report(const sfront::ExitReport& rep) {
    for (const auto& c : rep.criteria) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << rep.scenario << ": "
                  << c.name << " value=" << c.value << " bound=" << c.bound;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << '\n';
    }
}

sfront::HomogeneousF parse_f(const std::string& name, double theta) {
    if (name == "logistic") return sfront::HomogeneousF::logistic();
    if (name == "bistable") return sfront::HomogeneousF::bistable(theta);
    if (name == "combustion") return sfront::HomogeneousF::combustion(theta);
    // comma-separated polynomial coefficients c1,c2,...
    std::vector<double> coeffs;
    std::stringstream ss(name);
    std::string cell;
    while (std::getline(ss, cell, ',')) coeffs.push_back(std::stod(cell));
    if (coeffs.empty()) throw sfront::Error("cannot parse reaction: " + name);
    return sfront::HomogeneousF::polynomial(coeffs);
}

int cmd_run(const std::string& path) {
    const auto cfg = sfront::ScenarioConfig::load(path);
    const auto rep = sfront::run_scenario(cfg);
    print_report(rep);
    return rep.pass ? 0 : 1;
}

int cmd_sweep(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw sfront::Error("cannot open sweep file: " + path);
    json j;
    is >> j;
    std::vector<sfront::ScenarioConfig> configs;
    for (const auto& item : j) {
        configs.push_back(sfront::ScenarioConfig::from_json(item));
    }
    const auto reports = sfront::run_sweep(configs);
    bool all = true;
    for (const auto& rep : reports) {
        print_report(rep);
        all = all && rep.pass;
    }
    return all ? 0 : 1;
}

int cmd_semiwave(const std::string& f_name, double theta, double mu, double tol,
                 const std::string& out_dir) {
    const auto f = parse_f(f_name, theta);
    sfront::FindCStarOptions opt;
    opt.tol_c = tol;
    const auto prof = sfront::find_cstar(f, mu, opt);
    json header = sfront::profile_header_json(prof);
    header["f"] = f.to_json();
    std::cout << header.dump(2) << '\n';
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream csv(fs::path(out_dir) / "profile.csv");
        sfront::write_profile_csv(prof, csv);
        std::ofstream js(fs::path(out_dir) / "profile.json");
        js << header.dump(2) << '\n';
    }
    return 0;
}

int cmd_fbsolve(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw sfront::Error("cannot open config: " + path);
    json j;
    is >> j;

    const auto spec = sfront::NonlinearitySpec::from_json(j.at("nonlinearity"));
    const double mu = j.value("mu", 1.0);
    const auto& g = j.at("grid");
    const double L = g.value("L", 40.0);
    const int N = g.value("N", 2000);

    sfront::SolveParams params;
    params.mu = mu;
    params.dt = g.value("dt", 1e-3);
    params.T_end = g.value("T_end", 10.0);
    if (j.contains("snapshot_times")) {
        params.snapshot_times = j.at("snapshot_times").get<std::vector<double>>();
    }
    const std::string bc = j.value("left_bc", std::string("neumann_zero"));
    if (bc == "dirichlet_one") {
        params.left_bc = sfront::LeftBoundary::dirichlet_const(1.0);
    } else if (bc.rfind("dirichlet_value:", 0) == 0) {
        params.left_bc =
            sfront::LeftBoundary::dirichlet_const(std::stod(bc.substr(16)));
    } else if (bc != "neumann_zero") {
        throw sfront::Error("unknown left_bc: " + bc);
    }

    sfront::FrontFixedState init;
    const auto& init_j = j.at("initial");
    const std::string kind = init_j.at("kind").get<std::string>();
    if (kind == "semiwave") {
        const auto prof = sfront::find_cstar(spec.homogeneous_f(), mu, 1e-8);
        init = sfront::make_initial_semiwave(prof, L, N);
    } else if (kind == "step") {
        init = sfront::make_initial_step(init_j.value("height", 1.0),
                                         init_j.value("support", 2.0 * L), L, N);
    } else if (kind == "sampled") {
        init = sfront::make_initial_sampled(
            init_j.at("values").get<std::vector<double>>(), L);
    } else {
        throw sfront::Error("unknown initial kind: " + kind);
    }

    const auto traj = sfront::solve_one_front(spec, init, params);

    const std::string out_dir = j.value("output_dir", std::string("out"));
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / "traj.csv");
        sfront::write_trajectory_csv(traj, os);
    }
    fs::create_directories(fs::path(out_dir) / "snapshots");
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "snap%03zu.csv", k);
        std::ofstream os(fs::path(out_dir) / "snapshots" / name);
        sfront::write_snapshot_csv(traj.snapshots[k], os);
    }
    {
        json meta;
        meta["mu"] = mu;
        meta["grid"] = g;
        meta["left_bc"] = bc;
        meta["spec_hash"] = spec.hash();
        std::ofstream os(fs::path(out_dir) / "run.json");
        os << meta.dump(2) << '\n';
    }
    std::cout << "h(T) = " << traj.h.back() << ", steps = " << traj.t.size() - 1
              << ", outputs in " << out_dir << '\n';
    return 0;
}

int cmd_diagnose(const std::string& traj_dir, const std::string& checks_csv,
                 double c_ref, double delta_min, double lambda) {
    std::ifstream is(fs::path(traj_dir) / "traj.csv");
    if (!is) throw sfront::Error("cannot open " + traj_dir + "/traj.csv");
    const auto traj_base = sfront::read_trajectory_csv(is);
    sfront::Trajectory traj = traj_base;

    const fs::path snap_dir = fs::path(traj_dir) / "snapshots";
    if (fs::exists(snap_dir)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(snap_dir)) {
            files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& path : files) {
            std::ifstream snap(path);
            traj.snapshots.push_back(sfront::read_snapshot_csv(snap));
        }
    }

    json out;
    std::stringstream ss(checks_csv);
    std::string check;
    while (std::getline(ss, check, ',')) {
        if (check == "drift") {
            out["drift"] = sfront::drift(traj, c_ref).to_json();
        } else if (check == "speed") {
            const double dm = delta_min > 0 ? delta_min : traj.span() / 4.0;
            out["speed"] = sfront::estimate_global_mean_speed(traj, dm).to_json();
        } else if (check == "levelset") {
            out["levelset"] = {{"lambda", lambda},
                               {"width", sfront::level_set_width(traj, lambda)}};
        } else {
            throw sfront::Error("unknown check: " + check);
        }
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free-boundary reaction-diffusion front laboratory"};
    app.require_subcommand(1);

    std::string config_path, sweep_path;
    auto* run = app.add_subcommand("run", "run one scenario config");
    run->add_option("config", config_path, "scenario JSON")->required();

    auto* sweep = app.add_subcommand("sweep", "run an array of scenario configs");
    sweep->add_option("configs", sweep_path, "JSON array of scenarios")->required();

    std::string f_name = "logistic", out_dir;
    double theta = 0.25, mu = 1.0, tol = 1e-8;
    auto* semiwave = app.add_subcommand("semiwave", "wave speed and profile");
    semiwave->add_option("--f", f_name, "logistic | bistable | combustion | c1,c2,...");
    semiwave->add_option("--theta", theta, "threshold for bistable/combustion");
    semiwave->add_option("--mu", mu, "free-boundary response coefficient");
    semiwave->add_option("--tol", tol, "bisection tolerance on the speed");
    semiwave->add_option("--out", out_dir, "output directory for profile.csv/json");

    std::string fb_config;
    auto* fbsolve = app.add_subcommand("fbsolve", "one moving-boundary run");
    fbsolve->add_option("--config", fb_config, "run JSON")->required();

    std::string traj_dir, checks = "drift,speed";
    double c_ref = 0.0, delta_min = 0.0, lambda = 0.5;
    auto* diagnose = app.add_subcommand("diagnose", "checks over stored outputs");
    diagnose->add_option("--traj", traj_dir, "run output directory")->required();
    diagnose->add_option("--check", checks, "comma list: drift,speed,levelset");
    diagnose->add_option("--c-ref", c_ref, "reference speed for drift");
    diagnose->add_option("--delta-min", delta_min, "minimum gap for speed quotients");
    diagnose->add_option("--lambda", lambda, "level for levelset");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (sweep->parsed()) return cmd_sweep(sweep_path);
        if (semiwave->parsed()) return cmd_semiwave(f_name, theta, mu, tol, out_dir);
        if (fbsolve->parsed()) return cmd_fbsolve(fb_config);
        if (diagnose->parsed()) {
            return cmd_diagnose(traj_dir, checks, c_ref, delta_min, lambda);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
