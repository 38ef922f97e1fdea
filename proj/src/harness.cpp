#include "irl_lab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "irl_lab/bounds.hpp"
#include "irl_lab/errors.hpp"
#include "irl_lab/rng.hpp"
#include "irl_lab/solvers.hpp"
#include "irl_lab/trajectory.hpp"

namespace irl_lab {

std::vector<long long> default_m_grid() {
    // 16 log-spaced points from 10 to 1e6.
    std::vector<long long> grid;
    for (int i = 0; i < 16; ++i) {
        const double x = std::pow(10.0, 1.0 + 5.0 * i / 15.0);
        long long v = std::llround(x);
        if (!grid.empty() && v <= grid.back()) v = grid.back() + 1;
        grid.push_back(v);
    }
    return grid;
}

namespace {

// One zero-sum direction uniform on the sphere of H_n, scaled to a radius
// uniform in the eps-ball of dimension n-1.
Vec sample_ball_delta(int n, double eps, Rng& rng) {
    Vec d(n);
    for (;;) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) {
            d[i] = rng.next_gaussian();
            mean += d[i];
        }
        mean /= n;
        for (double& x : d) x -= mean;
        const double nrm = norm2(d);
        if (nrm > 1e-12) {
            const double r = eps * std::pow(rng.next_unit(), 1.0 / (n - 1));
            for (double& x : d) x *= r / nrm;
            return d;
        }
    }
}

IrlInstance assemble_instance(int n, int k, double gamma,
                              const std::vector<std::vector<Vec>>& deltas) {
    std::vector<StochasticMatrix> trans;
    trans.reserve(k);
    trans.push_back(validate_stochastic(Mat(n, n, 1.0 / n)));
    for (int a = 1; a < k; ++a) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 1.0 / n + deltas[a - 1][i][j];
                if (v < 0.0) {
                    if (v < -1e-9) throw InvalidRowError("random instance row left the simplex");
                    v = 0.0;
                }
                m(i, j) = v;
            }
        trans.push_back(validate_stochastic(m));
    }
    IrlInstance inst;
    inst.n = n;
    inst.k = k;
    inst.gamma = gamma;
    inst.transitions = std::move(trans);
    return inst;
}

}  // namespace

IrlInstance random_separable_instance(int n, int k, double gamma, double target_beta,
                                      double window, std::uint64_t seed) {
    if (k < 2) throw DimensionMismatchError("random_separable_instance: k must be >= 2");
    const double eps = eps_bounds(n, target_beta).second;
    Rng rng(seed);
    const double lo = target_beta * (1.0 - window), hi = target_beta * (1.0 + window);
    // Rows are drawn in a ball of radius eps/6 centered at -(eps/3) u, with u
    // a per-instance zero-sum direction. Centering every perturbation on a
    // common separating direction guarantees a positive max-margin beta
    // (uniform-ball draws have essentially no mass near practical targets
    // once k grows); because P_{a_1} is uniform, margins are exactly linear
    // in the perturbation scale, so one rescale lands beta on the target and
    // the LP re-certifies it.
    const double shift = eps / 3.0, radius = eps / 6.0;
    for (int draw = 0; draw < 100000; ++draw) {
        Vec u(n);
        for (;;) {
            double mean = 0.0;
            for (int i = 0; i < n; ++i) {
                u[i] = rng.next_gaussian();
                mean += u[i];
            }
            mean /= n;
            for (double& x : u) x -= mean;
            const double nrm = norm2(u);
            if (nrm > 1e-12) {
                for (double& x : u) x /= nrm;
                break;
            }
        }
        std::vector<std::vector<Vec>> deltas(k - 1, std::vector<Vec>(n));
        double max_radius = 0.0;
        for (int a = 0; a < k - 1; ++a)
            for (int i = 0; i < n; ++i) {
                Vec d = sample_ball_delta(n, radius, rng);
                for (int j = 0; j < n; ++j) d[j] -= shift * u[j];
                max_radius = std::max(max_radius, norm2(d));
                deltas[a][i] = std::move(d);
            }
        IrlInstance inst = assemble_instance(n, k, gamma, deltas);
        BetaResult br = measure_beta(inst);
        if (br.beta >= lo && br.beta <= hi) {
            inst.certified_beta = br.beta;
            inst.certified_reward = br.reward;
            return inst;
        }
        if (br.beta <= 1e-12) continue;
        const double c = target_beta / br.beta;
        if (c * max_radius > eps * (1.0 + 1e-12)) continue;
        for (auto& action : deltas)
            for (Vec& row : action)
                for (double& x : row) x *= c;
        inst = assemble_instance(n, k, gamma, deltas);
        br = measure_beta(inst);
        if (br.beta >= lo && br.beta <= hi) {
            inst.certified_beta = br.beta;
            inst.certified_reward = br.reward;
            return inst;
        }
    }
    throw GenerationTimeoutError("random_separable_instance: no accepted draw in 1e5 attempts");
}

int worker_count() {
    if (const char* env = std::getenv("IRL_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

struct TrialPlan {
    size_t m_idx, solver_idx;
};

bool run_single_trial(const ExperimentConfig& cfg, const IrlInstance* fixed_truth, long long m,
                      const SolverFn& solver, std::uint64_t seed) {
    IrlInstance fresh;
    const IrlInstance* truth = fixed_truth;
    if (!truth) {
        fresh = random_separable_instance(cfg.n, cfg.k, cfg.gamma, cfg.target_beta,
                                          cfg.beta_window, seed * 2654435761ULL + 1);
        truth = &fresh;
    }
    IrlInstance est;
    if (cfg.inject_true_transitions) {
        est = *truth;
        est.certified_reward.reset();
        est.certified_beta.reset();
    } else {
        Rng rng(seed);
        TransitionCounts counts(cfg.n, cfg.k);
        long long collected = 0;
        while (collected < m) {
            const long long len =
                std::min<long long>(cfg.trajectory_length, m - collected);
            const Trajectory t = sample_trajectory(*truth, static_cast<int>(len) + 1, rng);
            counts.add(t);
            collected += len;
        }
        est.n = cfg.n;
        est.k = cfg.k;
        est.gamma = cfg.gamma;
        est.transitions = estimate_from_counts(counts, cfg.smoothing);
    }
    try {
        const IrlSolution sol = solver(est);
        return sol.ok() && success_check(*truth, sol.reward.values);
    } catch (const Error&) {
        return false;  // solver failure counts as an unsuccessful trial
    }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    ExperimentConfig c = cfg;
    if (c.m_grid.empty()) c.m_grid = default_m_grid();
    if (!std::is_sorted(c.m_grid.begin(), c.m_grid.end()))
        throw Error("run_experiment: m_grid must be ascending");
    if (c.trials < 1) throw Error("run_experiment: trials must be >= 1");
    std::vector<SolverFn> fns;
    for (const auto& name : c.solvers) {
        if (name == "ng_russell") {
            const double lambda = c.ng_lambda, r_max = c.ng_r_max;
            fns.push_back([lambda, r_max](const IrlInstance& est) {
                return irl_ng_russell(est, lambda, r_max);
            });
        } else {
            fns.push_back(find_solver(name));
        }
    }

    IrlInstance fixed;
    double fixed_beta = c.target_beta;
    if (!c.fresh_instance) {
        fixed = random_separable_instance(c.n, c.k, c.gamma, c.target_beta, c.beta_window,
                                          c.base_seed);
        fixed_beta = fixed.certified_beta.value_or(c.target_beta);
    }

    const size_t n_m = c.m_grid.size(), n_s = c.solvers.size();
    const size_t total = n_m * n_s * static_cast<size_t>(c.trials);
    std::vector<std::uint8_t> success(total, 0);

    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const size_t g = next.fetch_add(1);
            if (g >= total) return;
            const size_t m_idx = g / (n_s * c.trials);
            const size_t s_idx = (g / c.trials) % n_s;
            const std::uint64_t seed = c.base_seed + 1 + g;
            success[g] = run_single_trial(c, c.fresh_instance ? nullptr : &fixed,
                                          c.m_grid[m_idx], fns[s_idx], seed)
                             ? 1
                             : 0;
        }
    };
    const int workers = std::min<int>(worker_count(), static_cast<int>(total));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<ResultRow> rows;
    rows.reserve(n_m * n_s);
    for (size_t mi = 0; mi < n_m; ++mi)
        for (size_t si = 0; si < n_s; ++si) {
            ResultRow r;
            r.solver = c.solvers[si];
            r.n = c.n;
            r.k = c.k;
            r.gamma = c.gamma;
            r.instance_beta = fixed_beta;
            r.m = c.m_grid[mi];
            r.trials = c.trials;
            int s = 0;
            const size_t base = (mi * n_s + si) * c.trials;
            for (int t = 0; t < c.trials; ++t) s += success[base + t];
            r.successes = s;
            r.success_rate = static_cast<double>(s) / c.trials;
            r.seed = c.base_seed;
            rows.push_back(std::move(r));
        }
    return rows;
}

namespace {

// Shortest decimal form that parses back to the same double.
std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_csv: cannot open " + path);
    out << "solver,n,k,gamma,beta,m,trials,successes,success_rate,seed\n";
    for (const auto& r : rows) {
        out << r.solver << ',' << r.n << ',' << r.k << ',' << fmt_double(r.gamma) << ','
            << fmt_double(r.instance_beta) << ',' << r.m << ',' << r.trials << ','
            << r.successes << ',' << fmt_double(r.success_rate) << ',' << r.seed << '\n';
    }
    if (!out) throw IoError("emit_csv: write failed for " + path);
}

std::vector<ResultRow> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("parse_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("parse_csv: empty file " + path);
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        ResultRow r;
        std::getline(ss, r.solver, ',');
        std::getline(ss, field, ',');
        r.n = std::stoi(field);
        std::getline(ss, field, ',');
        r.k = std::stoi(field);
        std::getline(ss, field, ',');
        r.gamma = std::stod(field);
        std::getline(ss, field, ',');
        r.instance_beta = std::stod(field);
        std::getline(ss, field, ',');
        r.m = std::stoll(field);
        std::getline(ss, field, ',');
        r.trials = std::stoi(field);
        std::getline(ss, field, ',');
        r.successes = std::stoi(field);
        std::getline(ss, field, ',');
        r.success_rate = std::stod(field);
        std::getline(ss, field, ',');
        r.seed = std::stoull(field);
        rows.push_back(std::move(r));
    }
    return rows;
}

double plot_threshold_x(const ExperimentConfig& cfg) {
    return sample_threshold_beta(cfg.n, cfg.target_beta);
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

}  // namespace

void emit_plot(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg,
               const std::string& path) {
    if (rows.empty()) throw Error("emit_plot: no rows");
    const double W = 860, H = 520, L = 70, R = 40, T = 30, B = 60;
    double xmin = kInf, xmax = -kInf;
    for (const auto& r : rows) {
        xmin = std::min(xmin, static_cast<double>(r.m));
        xmax = std::max(xmax, static_cast<double>(r.m));
    }
    const double thr = plot_threshold_x(cfg);
    xmin = std::min(xmin, thr);
    xmax = std::max(xmax, thr);
    if (cfg.upper_line) {
        xmin = std::min(xmin, *cfg.upper_line);
        xmax = std::max(xmax, *cfg.upper_line);
    }
    double lx0 = std::floor(std::log10(xmin)), lx1 = std::ceil(std::log10(xmax));
    if (lx1 <= lx0) lx1 = lx0 + 1.0;
    auto px = [&](double m) {
        return L + (std::log10(m) - lx0) / (lx1 - lx0) * (W - L - R);
    };
    auto py = [&](double rate) { return T + (1.0 - rate) * (H - T - B); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes and gridlines
    for (int i = 0; i <= 4; ++i) {
        const double y = py(i * 0.25);
        svg << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << L - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"12\">" << i * 0.25 << "</text>\n";
    }
    for (int e = static_cast<int>(lx0); e <= static_cast<int>(lx1); ++e) {
        const double x = px(std::pow(10.0, e));
        svg << "<line x1=\"" << x << "\" y1=\"" << T << "\" x2=\"" << x << "\" y2=\"" << H - B
            << "\" stroke=\"#eeeeee\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << H - B + 18
            << "\" text-anchor=\"middle\" font-size=\"12\">1e" << e << "</text>\n";
    }
    svg << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 18
        << "\" text-anchor=\"middle\" font-size=\"13\">number of sampled transitions (log scale)"
           "</text>\n";
    svg << "<text x=\"18\" y=\"" << (T + H - B) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (T + H - B) / 2 << ")\">success rate</text>\n";

    // threshold line (Fano sample-complexity lower bound)
    svg << "<line class=\"threshold\" x1=\"" << px(thr) << "\" y1=\"" << T << "\" x2=\"" << px(thr)
        << "\" y2=\"" << H - B << "\" stroke=\"magenta\" stroke-width=\"1.5\"/>\n";
    if (cfg.upper_line)
        svg << "<line class=\"upper\" x1=\"" << px(*cfg.upper_line) << "\" y1=\"" << T
            << "\" x2=\"" << px(*cfg.upper_line) << "\" y2=\"" << H - B
            << "\" stroke=\"blue\" stroke-width=\"1.5\"/>\n";

    // one series per solver, in config order
    int series = 0;
    for (const auto& name : cfg.solvers) {
        const char* color = kPalette[series % 6];
        std::ostringstream pts;
        for (const auto& r : rows)
            if (r.solver == name) pts << px(static_cast<double>(r.m)) << "," << py(r.success_rate) << " ";
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
            << pts.str() << "\"/>\n";
        for (const auto& r : rows)
            if (r.solver == name)
                svg << "<circle cx=\"" << px(static_cast<double>(r.m)) << "\" cy=\""
                    << py(r.success_rate) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << W - R - 10 << "\" y=\"" << T + 16 + 16 * series
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << name
            << "</text>\n";
        ++series;
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_plot: cannot open " + path);
    out << svg.str();
    if (!out) throw IoError("emit_plot: write failed for " + path);
}

double ml_identification_error(const std::vector<HardInstance>& ensemble, int m, int trials,
                               std::uint64_t seed) {
    if (ensemble.empty()) throw Error("ml_identification_error: empty ensemble");
    int errors = 0;
    const size_t count = ensemble.size();
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed + static_cast<std::uint64_t>(t));
        const int truth = rng.next_below(static_cast<int>(count));
        const Trajectory traj = sample_trajectory(ensemble[truth].instance, m, rng);
        int best = 0;
        double best_ll = -kInf;
        for (size_t i = 0; i < count; ++i) {
            double ll = 0.0;
            for (const auto& st : traj.steps)
                ll += std::log(ensemble[i].instance.transitions[st.action].p(st.state, st.next_state));
            if (ll > best_ll + 1e-12) {
                best_ll = ll;
                best = static_cast<int>(i);
            }
        }
        if (best != truth) ++errors;
    }
    return static_cast<double>(errors) / trials;
}

}  // namespace irl_lab
