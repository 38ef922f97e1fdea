// Command-line front end: ensemble construction, certification, bound
// reports, trajectory-KL tables, Monte Carlo experiments, and plotting.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irl_lab/bounds.hpp"
#include "irl_lab/ensemble.hpp"
#include "irl_lab/errors.hpp"
#include "irl_lab/harness.hpp"
#include "irl_lab/json_io.hpp"
#include "irl_lab/trajectory.hpp"

using namespace irl_lab;

namespace {

int cmd_ensemble(int n, double beta, double eps, double gamma, const std::string& code,
                 const std::string& out_dir) {
    const CodeKind kind = code == "icosahedron" ? CodeKind::Icosahedron : CodeKind::Simplex;
    const std::optional<double> eps_opt = eps > 0 ? std::optional<double>(eps) : std::nullopt;
    const EnsembleConfig cfg = make_config(n, gamma, beta, eps_opt, kind);
    const auto ensemble = build_ensemble(cfg);
    const auto report = verify_ensemble(ensemble);
    write_ensemble_dir(ensemble, report, out_dir);
    std::printf("wrote %zu instances to %s (eps=%.6g, required theta=%.6g rad)\n", ensemble.size(),
                out_dir.c_str(), cfg.eps, cfg.theta);
    std::printf("verification: own=%s cross=%s norms=%s\n", report.own_ok ? "ok" : "FAIL",
                report.cross_ok ? "ok" : "FAIL", report.norms_ok ? "ok" : "FAIL");
    for (const auto& f : report.failures)
        std::printf("  (%d,%d) %-34s %.6g\n", f.i, f.j, f.what.c_str(), f.value);
    return report.pass() ? 0 : 1;
}

int cmd_verify(const std::string& in_dir) {
    const LoadedEnsemble loaded = load_ensemble_dir(in_dir);
    std::vector<HardInstance> ensemble;
    for (size_t i = 0; i < loaded.instances.size(); ++i) {
        HardInstance hi;
        hi.instance = loaded.instances[i];
        if (!hi.instance.certified_reward)
            throw Error("verify: instance without certified reward in " + in_dir);
        hi.reward = *hi.instance.certified_reward;
        hi.facet_index = static_cast<int>(i);
        hi.config = loaded.config;
        ensemble.push_back(std::move(hi));
    }
    const auto report = verify_ensemble(ensemble);
    std::printf("%zu instances, beta=%.6g\n", ensemble.size(), report.beta);
    for (size_t i = 0; i < report.own_margins.size(); ++i)
        std::printf("  instance %2zu: margin=%.8g  |R|_1=%.12g\n", i, report.own_margins[i],
                    report.reward_norms[i]);
    std::printf("worst cross margin: %.8g (must be negative)\n", report.worst_cross_margin);
    std::printf("verification: own=%s cross=%s norms=%s\n", report.own_ok ? "ok" : "FAIL",
                report.cross_ok ? "ok" : "FAIL", report.norms_ok ? "ok" : "FAIL");
    return report.pass() ? 0 : 1;
}

int cmd_bounds(int n, double beta, double eps, double m, bool as_json) {
    const std::optional<double> eps_opt = eps > 0 ? std::optional<double>(eps) : std::nullopt;
    const BoundReport r = make_bound_report(n, beta, eps_opt, m);
    if (as_json) {
        nlohmann::json j{{"n", r.n},
                         {"eps", r.eps},
                         {"beta", r.beta},
                         {"theta", r.theta},
                         {"m", r.m},
                         {"N_lower", r.n_lower},
                         {"facets_lower", r.facets_lower},
                         {"eta", r.eta},
                         {"kl_col", r.kl_col},
                         {"kl_traj", r.kl_traj},
                         {"fano_error_lb", r.fano_error_lb},
                         {"m_threshold_equal_radius", r.m_threshold_equal_radius},
                         {"m_threshold_simplex_radius", r.m_threshold_simplex_radius},
                         {"n_lower_asymptotic", r.n_lower_asymptotic},
                         {"eta_vacuous", r.eta_vacuous},
                         {"used_simplex_eta", r.used_simplex_eta}};
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }
    std::printf("n                      %d\n", r.n);
    std::printf("beta                   %.10g\n", r.beta);
    std::printf("eps                    %.10g\n", r.eps);
    std::printf("required theta (rad)   %.10g\n", r.theta);
    std::printf("m                      %.10g\n", r.m);
    std::printf("code size N >=         %.10g%s\n", r.n_lower,
                r.n_lower_asymptotic ? "   [asymptotic constant taken as 1]" : "");
    std::printf("facet count >=         %.10g\n", r.facets_lower);
    std::printf("ensemble size eta >=   %.10g%s\n", r.eta,
                r.eta_vacuous ? "   [vacuous at this scale; fano uses eta = n]" : "");
    std::printf("KL per row <=          %.10g nats\n", r.kl_col);
    std::printf("KL trajectory <=       %.10g nats\n", r.kl_traj);
    std::printf("fano error >=          %.10g\n", r.fano_error_lb);
    std::printf("m threshold (equal-eps) %.10g\n", r.m_threshold_equal_radius);
    std::printf("m threshold (simplex)   %.10g\n", r.m_threshold_simplex_radius);
    return 0;
}

int cmd_kl(const std::string& in_dir, int m, bool brute) {
    const LoadedEnsemble loaded = load_ensemble_dir(in_dir);
    const int n = loaded.config.n;
    const double eps = loaded.config.eps;
    const double bound = kl_trajectory_bound(n, eps, m);
    const Vec uniform(n, 1.0 / n);
    std::printf("pairwise trajectory KL at m=%d (bound %.8g nats)\n", m, bound);
    std::printf("%4s %4s %14s %14s\n", "i", "j", "exact", brute ? "brute" : "-");
    for (size_t i = 0; i < loaded.instances.size(); ++i)
        for (size_t j = 0; j < loaded.instances.size(); ++j) {
            if (i == j) continue;
            const auto& pi = loaded.instances[i].transitions[1];
            const auto& pj = loaded.instances[j].transitions[1];
            const double exact = exact_trajectory_kl(pi, pj, uniform, m);
            if (brute) {
                const double bf = brute_force_trajectory_kl(pi, pj, uniform, m);
                std::printf("%4zu %4zu %14.8g %14.8g\n", i, j, exact, bf);
            } else {
                std::printf("%4zu %4zu %14.8g %14s\n", i, j, exact, "");
            }
            if (exact > bound + 1e-9) {
                std::printf("bound violated for pair (%zu,%zu)\n", i, j);
                return 1;
            }
        }
    std::printf("all pairs within the bound\n");
    return 0;
}

int cmd_experiment(const std::string& config_path) {
    const ExperimentConfig cfg = load_experiment_config(config_path);
    const auto rows = run_experiment(cfg);
    if (!cfg.out_csv.empty()) {
        emit_csv(rows, cfg.out_csv);
        std::printf("wrote %zu rows to %s\n", rows.size(), cfg.out_csv.c_str());
    } else {
        std::printf("solver,m,success_rate\n");
        for (const auto& r : rows)
            std::printf("%s,%lld,%.4f\n", r.solver.c_str(), r.m, r.success_rate);
    }
    if (!cfg.out_plot.empty()) {
        emit_plot(rows, cfg, cfg.out_plot);
        std::printf("wrote plot to %s\n", cfg.out_plot.c_str());
    }
    return 0;
}

int cmd_plot(const std::string& in_csv, const std::string& out_svg, double upper_line) {
    const auto rows = parse_csv(in_csv);
    if (rows.empty()) throw Error("plot: empty CSV");
    ExperimentConfig cfg;
    cfg.n = rows[0].n;
    cfg.k = rows[0].k;
    cfg.gamma = rows[0].gamma;
    cfg.target_beta = rows[0].instance_beta;
    cfg.solvers.clear();
    for (const auto& r : rows)
        if (std::find(cfg.solvers.begin(), cfg.solvers.end(), r.solver) == cfg.solvers.end())
            cfg.solvers.push_back(r.solver);
    if (upper_line > 0) cfg.upper_line = upper_line;
    emit_plot(rows, cfg, out_svg);
    std::printf("wrote plot to %s\n", out_svg.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hard inverse-reinforcement-learning instances, information bounds, and solver benchmarks"};
    app.require_subcommand(1);

    int n = 7;
    double beta = 0.0032, eps = -1.0, gamma = 0.1, m_real = 1.0, upper = -1.0;
    int m_int = 2;
    bool as_json = false, brute = false;
    std::string code = "simplex", dir, config_path, in_path, out_path;

    auto* c_ens = app.add_subcommand("ensemble", "construct and certify a hard ensemble");
    c_ens->add_option("--n", n, "state count")->required();
    c_ens->add_option("--beta", beta, "separability margin")->required();
    c_ens->add_option("--eps", eps, "perturbation radius (default: min(1/sqrt(2n(n-1)), inradius))");
    c_ens->add_option("--gamma", gamma, "discount factor");
    c_ens->add_option("--code", code, "simplex|icosahedron")
        ->check(CLI::IsMember({"simplex", "icosahedron"}));
    c_ens->add_option("--out", dir, "output directory")->required();

    auto* c_ver = app.add_subcommand("verify", "re-certify an ensemble directory");
    c_ver->add_option("--in", dir, "ensemble directory")->required();

    auto* c_bnd = app.add_subcommand("bounds", "evaluate every closed-form bound");
    c_bnd->add_option("--n", n, "state count")->required();
    c_bnd->add_option("--beta", beta, "separability margin")->required();
    c_bnd->add_option("--eps", eps, "perturbation radius");
    c_bnd->add_option("--m", m_real, "trajectory sample count");
    c_bnd->add_flag("--json", as_json, "emit JSON");

    auto* c_kl = app.add_subcommand("kl", "exact vs bound trajectory KL for an ensemble");
    c_kl->add_option("--in", dir, "ensemble directory")->required();
    c_kl->add_option("--m", m_int, "trajectory length in states")->required();
    c_kl->add_flag("--brute", brute, "also run the enumeration oracle");

    auto* c_exp = app.add_subcommand("experiment", "run the Monte Carlo solver benchmark");
    c_exp->add_option("--config", config_path, "JSON config")->required();

    auto* c_plot = app.add_subcommand("plot", "render a results CSV as SVG");
    c_plot->add_option("--in", in_path, "results CSV")->required();
    c_plot->add_option("--out", out_path, "output SVG")->required();
    c_plot->add_option("--upper-line", upper, "optional upper-bound line position");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_ens->parsed()) return cmd_ensemble(n, beta, eps, gamma, code, dir);
        if (c_ver->parsed()) return cmd_verify(dir);
        if (c_bnd->parsed()) return cmd_bounds(n, beta, eps, m_real, as_json);
        if (c_kl->parsed()) return cmd_kl(dir, m_int, brute);
        if (c_exp->parsed()) return cmd_experiment(config_path);
        if (c_plot->parsed()) return cmd_plot(in_path, out_path, upper);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
